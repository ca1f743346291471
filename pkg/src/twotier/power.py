"""Exact power indices for weighted voting games.

Power vectors are tuples of exact ``Fraction`` values.  The Shapley-Shubik
index of an m-player game sums to 1 and every component is a multiple of
1/m!; the Banzhaf measure returned here is the raw per-player swing
probability (swings / 2^(m-1)), which does not normalize to 1.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction

import numpy as np

from .games import ResourceLimitError, WeightedVotingGame

__all__ = [
    "shapley_shubik",
    "shapley_permutation_oracle",
    "banzhaf",
    "penrose_decisiveness",
    "DEFAULT_DP_BUDGET",
]

# cap on num_players * total_weight; the DP table holds about that many cells
DEFAULT_DP_BUDGET = 2_000_000


def _pivot_counts_by_size(game: WeightedVotingGame) -> list[np.ndarray]:
    """For each player i, count coalitions S (without i) that i turns winning,
    grouped by |S|.

    A single knapsack DP over (coalition size, coalition weight) counts all
    coalitions of the full player set up to the largest losing weight; the
    per-player tables are then recovered by deconvolving that player's item,
    which keeps the whole computation at O(m^2 * total_weight) array work.
    Counts are exact: int64 while binomial coefficients fit, arbitrary
    precision objects beyond that.
    """
    weights = game.weights
    m = game.num_players
    total = game.total_weight
    q_num = game.quota_ratio.numerator
    q_den = game.quota_ratio.denominator
    cap = (q_num * total) // q_den  # largest losing coalition weight

    dtype = np.int64 if math.comb(m, m // 2) < 2**62 else object
    table = np.zeros((m + 1, cap + 1), dtype=dtype)
    table[0, 0] = 1
    for w in weights:
        if w > cap:
            continue  # cannot appear in any coalition of weight <= cap
        if w == 0:
            for size in range(m, 0, -1):
                table[size] += table[size - 1]
        else:
            for size in range(m, 0, -1):
                table[size, w:] += table[size - 1, : cap + 1 - w]

    results = []
    for w in weights:
        # without[s][v] = coalitions of the other players, size s, weight v
        without = np.zeros((m, cap + 1), dtype=dtype)
        without[0] = table[0]
        for size in range(1, m):
            if w == 0:
                without[size] = table[size] - without[size - 1]
            elif w > cap:
                without[size] = table[size]
            else:
                without[size, :w] = table[size, :w]
                without[size, w:] = table[size, w:] - without[size - 1, : cap + 1 - w]
        # pivot: S loses (weight <= cap) but S + {i} wins
        low = (q_num * total - w * q_den) // q_den + 1
        if low > cap:
            results.append(np.zeros(m, dtype=dtype))
        else:
            results.append(without[:, max(low, 0) :].sum(axis=1))
    return results


def _check_budget(game: WeightedVotingGame, budget: int) -> None:
    cost = game.num_players * game.total_weight
    if cost > budget:
        raise ResourceLimitError(
            f"num_players * total_weight = {cost} exceeds budget {budget}"
        )


def shapley_shubik(game: WeightedVotingGame, *, budget: int = DEFAULT_DP_BUDGET) -> tuple[Fraction, ...]:
    """Exact Shapley-Shubik index via dynamic programming.

    Player i's value is the number of orderings in which i's arrival turns
    the set of predecessors winning, divided by m!.  Coalition counts by
    (size, weight) are weighted with |S|! * (m-|S|-1)! / m! in exact rational
    arithmetic, so the result carries no floating-point error.
    """
    _check_budget(game, budget)
    m = game.num_players
    fact = [math.factorial(k) for k in range(m)]
    m_fact = math.factorial(m)
    values = []
    for pivots in _pivot_counts_by_size(game):
        numerator = sum(int(pivots[s]) * fact[s] * fact[m - 1 - s] for s in range(m))
        values.append(Fraction(numerator, m_fact))
    return tuple(values)


def shapley_permutation_oracle(game: WeightedVotingGame) -> tuple[Fraction, ...]:
    """Shapley-Shubik index by brute force over all m! player orderings.

    Slow reference implementation kept as an independent cross-check of the
    dynamic program; refuses games with more than 10 players.
    """
    m = game.num_players
    if m > 10:
        raise ValueError(f"permutation oracle enumerates m! orderings; {m} > 10 players refused")
    weights = game.weights
    threshold = game.quota_ratio.numerator * game.total_weight
    q_den = game.quota_ratio.denominator
    counts = [0] * m
    for perm in itertools.permutations(range(m)):
        running = 0
        for idx in perm:
            running += weights[idx]
            if running * q_den > threshold:
                counts[idx] += 1
                break
    m_fact = math.factorial(m)
    return tuple(Fraction(c, m_fact) for c in counts)


def banzhaf(game: WeightedVotingGame, *, budget: int = DEFAULT_DP_BUDGET) -> tuple[Fraction, ...]:
    """Raw Banzhaf measure: P(player i is critical) when every other player
    joins independently with probability 1/2.  Not normalized."""
    _check_budget(game, budget)
    m = game.num_players
    denominator = 2 ** (m - 1)
    return tuple(
        Fraction(int(pivots.sum()), denominator) for pivots in _pivot_counts_by_size(game)
    )


def penrose_decisiveness(population: int) -> tuple[Fraction, float]:
    """Probability that one voter decides a simple-majority vote among
    ``population`` independent fair coin flips.

    For odd population 2k+1 the voter is decisive exactly when the other 2k
    voters split evenly, an event of probability  C(2k, k) / 4^k.  Returns
    that exact rational together with its Stirling approximation
    sqrt(2 / (pi * population)).  Even population sizes have no canonical
    tie convention and are rejected.
    """
    if population < 1 or population % 2 == 0:
        raise ValueError(f"population must be odd and positive, got {population}")
    half = (population - 1) // 2
    exact = Fraction(math.comb(2 * half, half), 4**half)
    approx = math.sqrt(2.0 / (math.pi * population))
    return exact, approx
