"""
Exact voting power
==================

Voting weight is not voting power.  This script computes exact power
indices for two four-player assemblies whose weights look almost alike but
whose power distributions differ sharply, then compares the exact
single-voter decisiveness probability in a binary referendum with its
square-root approximation.
"""

from fractions import Fraction

from twotier import WeightedVotingGame, banzhaf, penrose_decisiveness, shapley_shubik

# Four constituencies with population shares 42%, 25%, 24%, 9%.  Using the
# shares directly as weights looks natural, but with a simple majority rule
# the three smaller players become interchangeable: any two of them flip
# the outcome together with player 1, so they all get the same power.
population_weights = WeightedVotingGame.from_text("1/2; 42,25,24,9")

print("game:", population_weights.to_text())
print("player  weight  shapley_shubik          banzhaf (raw)")
for i, (ssi, bz) in enumerate(zip(shapley_shubik(population_weights), banzhaf(population_weights))):
    print(f"{i + 1:>6}  {population_weights.weights[i]:>6}  {str(ssi):>8} = {float(ssi):.4f}"
          f"   {str(bz):>8} = {float(bz):.4f}")

# A mild redistribution of the same 100 weight units tracks the population
# shares far better in power terms: (40, 25, 25, 10) induces power
# (5/12, 1/4, 1/4, 1/12), at L1 distance 0.02 from the shares instead of 0.31.
rebalanced = WeightedVotingGame.from_text("1/2; 40,25,25,10")
print("\ngame:", rebalanced.to_text())
for i, ssi in enumerate(shapley_shubik(rebalanced)):
    print(f"{i + 1:>6}  {rebalanced.weights[i]:>6}  {str(ssi):>8} = {float(ssi):.4f}")

# In a binary yes/no referendum among n independent fair-coin voters, one
# voter decides iff the others split evenly.  The exact probability and its
# sqrt(2 / (pi n)) approximation converge quickly.
print("\nsingle-voter decisiveness in a binary referendum")
print(f"{'n':>6} {'exact':>12} {'sqrt approx':>12} {'rel gap':>9}")
for n in (1, 3, 11, 101, 1001, 10001):
    exact, approx = penrose_decisiveness(n)
    gap = abs(float(exact) - approx) / float(exact)
    print(f"{n:>6} {float(exact):>12.6f} {approx:>12.6f} {gap:>8.3%}")
