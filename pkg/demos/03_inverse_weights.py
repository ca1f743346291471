"""
Inverse power problems
======================

Choosing voting weights so that the induced power vector approximates
target population shares is a discrete optimization problem.  This script
solves it exactly (certified enumeration) and heuristically (seeded hill
climbing) for two four-constituency targets, then reproduces a classic
impossibility: a small group alongside three equal ones gets either equal
power or none.
"""

from fractions import Fraction

from twotier import (
    InverseProblemSpec,
    WeightedVotingGame,
    distance,
    shapley_shubik,
    solve_exhaustive,
    solve_local_search,
)


def show(label, target, solution):
    print(f"\n{label}: target {tuple(round(float(t), 4) for t in target)}")
    print(f"  game {solution.game.to_text()}  method {solution.method}"
          f"  certified {solution.optimality_certified}")
    print(f"  power {tuple(str(v) for v in solution.ssi)}  L1 distance {solution.distance:.6f}")


# Shares (42, 25, 24, 9): proportional weights induce power
# (1/2, 1/6, 1/6, 1/6), at L1 distance 0.3133.  The optimizer finds a game
# fifteen times closer.
target_a = (0.42, 0.25, 0.24, 0.09)
spec_a = InverseProblemSpec(target=target_a, weight_sum_bound=30)
proportional = WeightedVotingGame((42, 25, 24, 9), Fraction(1, 2))
print("proportional weights give distance",
      round(distance(shapley_shubik(proportional), spec_a.target, "l1"), 4))
show("certified optimum", spec_a.target, solve_exhaustive(spec_a))

# Shares (49, 33, 9, 9): the certified optimum is a knife-edge game with
# tied weights, (2,2,1,1), where the coalition {1,3} sits exactly at the
# quota and therefore loses.  Continuous weight searches miss such games;
# the seeded hill climber finds it because its restart menu includes one
# start per enumerated game class.
target_b = (0.49, 0.33, 0.09, 0.09)
spec_b = InverseProblemSpec(target=target_b, weight_sum_bound=30)
show("certified optimum", spec_b.target, solve_exhaustive(spec_b))
local = solve_local_search(
    InverseProblemSpec(target=target_b, weight_sum_bound=100, restarts=20, seed=1)
)
show("hill climbing (20 restarts)", spec_b.target, local)

# Three equal groups plus one smaller group, simple majority: the smaller
# group's delegate has power exactly 0 whenever its weight is below the
# others', and exactly 1/4 when equal.  No weight assignment interpolates.
print("\nthree equal groups plus one smaller one:")
print(f"{'weights':>14} {'small delegate power':>22}")
for small in range(0, 4):
    game = WeightedVotingGame((3, 3, 3, small), Fraction(1, 2))
    print(f"{str(game.weights):>14} {str(shapley_shubik(game)[3]):>22}")
