"""
The landscape of small voting games
===================================

With four players and a simple majority rule there are exactly nine
structurally different weighted voting games, no matter how finely the
weights are tuned.  This script enumerates them, prints each class with a
minimal representative and its exact power vector, and shows that the count
is already saturated at small weight bounds.
"""

from fractions import Fraction

from twotier import WeightedVotingGame, enumerate_game_classes, shapley_shubik

HALF = Fraction(1, 2)

for bound in (2, 4, 8, 12):
    count = enumerate_game_classes(4, HALF, bound).count
    print(f"weight bound {bound:>2}: {count} distinct classes")

print("\nthe nine classes at bound 8 (players sorted by weight):")
enumeration = enumerate_game_classes(4, HALF, 8)
print(f"{'representative':>16}  {'power vector':>34}  minimal winning coalitions")
for cls in enumeration.classes:
    game = WeightedVotingGame(cls.representative, HALF)
    power = ", ".join(f"{str(v):>5}" for v in shapley_shubik(game))
    # bitmask -> set of 1-based player numbers
    families = [
        "{" + ",".join(str(i + 1) for i in range(4) if (mask >> i) & 1) + "}"
        for mask in cls.signature.minimal_winning
    ]
    print(f"{str(cls.representative):>16}  ({power})  {' '.join(families)}")

# Power vectors are multiples of 1/4! = 1/24, so most share vectors are
# unreachable: choosing weights means picking the best of these nine rows.
print("\nevery achievable 4-player power vector is a row above (up to relabeling)")
