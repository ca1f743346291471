"""
Pivot probabilities in a median-voter assembly
==============================================

Each constituency sends the delegate holding its median opinion; the
assembly adopts the position of the weighted-median delegate.  When voters
within a constituency share a common opinion component (cohesion above
zero), the probability of each delegate being pivotal converges to the
game's exact Shapley-Shubik power as cohesion grows.  With no cohesion,
constituency size takes over: medians of larger electorates are more
concentrated, and a four-times-larger constituency is about twice as
likely to hold the median seat.
"""

import numpy as np

from twotier import (
    FederationSpec,
    PreferenceModel,
    WeightedVotingGame,
    estimate_pivot_probabilities,
    fairness_deviation,
    shapley_shubik,
)

REPLICATIONS = 50_000

game = WeightedVotingGame.from_text("1/2; 42,25,24,9")
fed = FederationSpec.from_sizes((4_000_000, 2_500_000, 2_400_000, 900_000))
ssi = np.array([float(v) for v in shapley_shubik(game)])

print("game:", game.to_text())
print("exact power:", np.round(ssi, 4))
print(f"\n{'cohesion':>9} {'estimated pivot probabilities':>38} {'L1 gap to power':>16}")
for cohesion in (0.0, 1.0, 5.0, 20.0, 100.0):
    estimate = estimate_pivot_probabilities(
        fed, game, PreferenceModel(cohesion=cohesion), REPLICATIONS, seed=2024
    )
    gap = float(np.abs(estimate.pi_hat - ssi).sum())
    print(f"{cohesion:>9.1f} {np.array2string(np.round(estimate.pi_hat, 4)):>38} {gap:>16.4f}")

# Zero cohesion, equal weights: only population size matters.  Nine equal
# delegates, sizes alternating n and 4n; the big ones are ~twice as likely
# to be the median.
sizes = tuple(10_001 if i % 2 == 0 else 40_004 for i in range(9))
fed2 = FederationSpec.from_sizes(sizes)
equal = WeightedVotingGame((1,) * 9, game.quota_ratio)
estimate = estimate_pivot_probabilities(fed2, equal, PreferenceModel(cohesion=0.0), 200_000, seed=7)
pi = estimate.pi_hat
print("\nzero cohesion, equal weights, sizes alternating n and 4n:")
print(f"  mean pivot probability, small: {pi[0::2].mean():.4f}  large: {pi[1::2].mean():.4f}"
      f"  ratio: {pi[1::2].mean() / pi[0::2].mean():.2f}")

# The same estimates feed the fairness measure: the L1 distance between
# every individual voter's influence and the democratic ideal of 1/n each.
model = PreferenceModel(cohesion=20.0)
estimate = estimate_pivot_probabilities(fed, game, model, REPLICATIONS, seed=11)
print(f"\nfairness deviation at cohesion 20: {fairness_deviation(estimate, fed):.4f}")
