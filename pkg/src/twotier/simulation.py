"""Monte Carlo engine for a two-tier median-voter model.

Each constituency elects one delegate whose position is the median ideal
point of its voters.  A voter's ideal point is ``cohesion * shared + noise``
where ``shared`` is a constituency-level shock (one draw per constituency,
distribution H) and ``noise`` is voter-specific (distribution G).  The
assembly adopts the position of the delegate at the first spot, in
ascending position order, where the cumulative voting weight strictly
exceeds the quota.  The simulator estimates each delegate's probability of
being that pivotal member and the resulting deviation from equal influence
of all individual voters.

Sampling the median of a multi-million-voter constituency never
materializes individual voters: the sample median of n i.i.d. draws from a
continuous G equals G^-1 applied to a Beta-distributed uniform order
statistic, which is an exact identity, not an approximation.  A brute-force
sampler is kept as a test oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np
from scipy.special import ndtri

from .games import WeightedVotingGame

__all__ = [
    "Distribution",
    "FederationSpec",
    "PreferenceModel",
    "PivotEstimate",
    "ReplicationOutcome",
    "sample_median_shock",
    "sample_median_brute",
    "sample_delegate_ideals",
    "pivotal_index",
    "run_replication",
    "estimate_pivot_probabilities",
    "ordering_match_rate",
    "ordering_match_lower_bound",
    "median_shock_variance",
    "voter_influence",
    "fairness_deviation",
]

# replications per RNG substream; fixed so that results do not depend on how
# blocks are distributed across workers
BLOCK_SIZE = 1 << 15


@dataclass(frozen=True)
class Distribution:
    """Continuous distribution given by name and parameters.

    Supported: ``uniform`` with params (low, high) and ``normal`` with
    params (mean, std).  Both have positive density at their median and
    finite variance, as the model requires.
    """

    name: str
    params: tuple[float, float]

    def __post_init__(self) -> None:
        object.__setattr__(self, "params", (float(self.params[0]), float(self.params[1])))
        if self.name == "uniform":
            low, high = self.params
            if not high > low:
                raise ValueError(f"uniform needs high > low, got ({low}, {high})")
        elif self.name == "normal":
            _, std = self.params
            if not std > 0:
                raise ValueError(f"normal needs std > 0, got {std}")
        else:
            raise ValueError(f"unknown distribution {self.name!r}; supported: uniform, normal")

    @classmethod
    def uniform(cls, low: float = -0.5, high: float = 0.5) -> "Distribution":
        return cls("uniform", (low, high))

    @classmethod
    def normal(cls, mean: float = 0.0, std: float = 1.0) -> "Distribution":
        return cls("normal", (mean, std))

    def ppf(self, probabilities):
        """Inverse CDF, vectorized."""
        u = np.asarray(probabilities, dtype=np.float64)
        if self.name == "uniform":
            low, high = self.params
            return low + (high - low) * u
        mean, std = self.params
        return mean + std * ndtri(u)

    def sample(self, rng: np.random.Generator, size):
        if self.name == "uniform":
            low, high = self.params
            return rng.uniform(low, high, size)
        mean, std = self.params
        return rng.normal(mean, std, size)

    @property
    def variance(self) -> float:
        if self.name == "uniform":
            low, high = self.params
            return (high - low) ** 2 / 12.0
        return self.params[1] ** 2

    @property
    def density_bound(self) -> float:
        """Supremum of the density function."""
        if self.name == "uniform":
            low, high = self.params
            return 1.0 / (high - low)
        return 1.0 / (self.params[1] * math.sqrt(2.0 * math.pi))


@dataclass(frozen=True)
class FederationSpec:
    """Named constituencies with positive integer population sizes."""

    names: tuple[str, ...]
    populations: tuple[int, ...]

    def __post_init__(self) -> None:
        names = tuple(str(n) for n in self.names)
        populations = tuple(int(p) for p in self.populations)
        if len(names) != len(populations):
            raise ValueError("names and populations must have equal length")
        if len(populations) < 1:
            raise ValueError("a federation needs at least one constituency")
        if any(p < 1 for p in populations):
            raise ValueError("every population must be at least 1")
        object.__setattr__(self, "names", names)
        object.__setattr__(self, "populations", populations)

    @classmethod
    def from_sizes(cls, sizes: Sequence[int]) -> "FederationSpec":
        return cls(tuple(f"C{i + 1}" for i in range(len(sizes))), tuple(sizes))

    @property
    def num_constituencies(self) -> int:
        return len(self.populations)

    @property
    def total_population(self) -> int:
        return sum(self.populations)

    def shares(self) -> tuple[Fraction, ...]:
        """Exact relative population sizes; sums to exactly 1."""
        total = self.total_population
        return tuple(Fraction(p, total) for p in self.populations)


@dataclass(frozen=True)
class PreferenceModel:
    """Voter preference model: ideal point = cohesion * shared + noise.

    ``cohesion`` scales the constituency-level shock and so controls how
    similar opinions are within a constituency relative to across them.
    Defaults: voter noise uniform on [-0.5, 0.5], constituency shock normal
    with variance 1e-8.
    """

    cohesion: float = 0.0
    idiosyncratic: Distribution = field(default=Distribution.uniform(-0.5, 0.5))
    constituency: Distribution = field(default=Distribution.normal(0.0, 1e-4))

    def __post_init__(self) -> None:
        if self.cohesion < 0:
            raise ValueError("cohesion must be non-negative")


def sample_median_shock(population: int, dist: Distribution, rng: np.random.Generator, size=None):
    """Draw from the distribution of the sample median of ``population``
    i.i.d. draws from ``dist`` via the order-statistic shortcut.

    Odd n = 2k+1: the median of n uniforms is Beta(k+1, k+1), so one Beta
    draw pushed through the inverse CDF suffices.  Even n = 2k: the upper
    central order statistic is Beta(k+1, k); conditional on it, the lower
    one is that value times V^(1/k) with V uniform, and the median is the
    midpoint of the two.  Cost is O(1) draws per sample regardless of n.
    """
    if population < 1:
        raise ValueError(f"population must be at least 1, got {population}")
    count = 1 if size is None else size
    if population % 2 == 1:
        half = (population - 1) // 2
        med = dist.ppf(rng.beta(half + 1, half + 1, count))
    else:
        half = population // 2
        upper = rng.beta(half + 1, half, count)
        lower = upper * rng.random(count) ** (1.0 / half)
        med = 0.5 * (dist.ppf(lower) + dist.ppf(upper))
    return float(med[0]) if size is None else med


def sample_median_brute(population: int, dist: Distribution, rng: np.random.Generator, size: int):
    """Median of ``population`` individual draws; oracle for the shortcut."""
    if population < 1:
        raise ValueError(f"population must be at least 1, got {population}")
    draws = dist.sample(rng, (size, population))
    return np.median(draws, axis=1)


def median_shock_variance(population: int, dist: Distribution) -> float:
    """Variance of the sample median of ``population`` draws.

    Exact (from Beta order-statistic moments) for uniform distributions;
    the large-sample expression pi * sigma^2 / (2n) for normal ones.
    """
    n = population
    if dist.name == "uniform":
        low, high = dist.params
        scale = (high - low) ** 2
        if n % 2 == 1:
            return scale / (4.0 * (n + 2))
        half = n // 2
        denom = (n + 1) ** 2 * (n + 2)
        var_low = half * (n + 1 - half) / denom
        var_high = (half + 1) * (n - half) / denom
        cov = half * (n - half) / denom
        return scale * (var_low + var_high + 2.0 * cov) / 4.0
    return math.pi * dist.variance / (2.0 * n)


def sample_delegate_ideals(
    fed: FederationSpec, model: PreferenceModel, rng: np.random.Generator
) -> np.ndarray:
    """One replication of all delegate positions: per constituency, the
    median of its voter noise plus the scaled shared shock."""
    m = fed.num_constituencies
    ideals = np.empty(m)
    for i, population in enumerate(fed.populations):
        ideals[i] = sample_median_shock(population, model.idiosyncratic, rng)
    if model.cohesion > 0:
        ideals += model.cohesion * model.constituency.sample(rng, m)
    return ideals


def pivotal_index(ideals: Sequence[float], game: WeightedVotingGame) -> int:
    """Index of the pivotal delegate: sort positions ascending and return
    the original index at the first spot where the cumulative weight
    strictly exceeds the quota.  Exact float ties (probability zero in the
    model) break toward the lower original index."""
    values = np.asarray(ideals, dtype=np.float64)
    if values.shape != (game.num_players,):
        raise ValueError(f"expected {game.num_players} positions, got shape {values.shape}")
    order = np.argsort(values, kind="stable")
    cumulative = np.cumsum(np.asarray(game.weights, dtype=np.int64)[order])
    quota = game.quota_ratio
    winning = cumulative * quota.denominator > quota.numerator * game.total_weight
    return int(order[np.argmax(winning)])


@dataclass(frozen=True)
class ReplicationOutcome:
    """One assembly decision: delegate positions, who was pivotal, and the
    adopted policy (the pivotal delegate's position)."""

    ideals: tuple[float, ...]
    pivot_index: int
    outcome: float


def run_replication(
    fed: FederationSpec,
    game: WeightedVotingGame,
    model: PreferenceModel,
    rng: np.random.Generator,
) -> ReplicationOutcome:
    ideals = sample_delegate_ideals(fed, model, rng)
    pivot = pivotal_index(ideals, game)
    return ReplicationOutcome(tuple(float(v) for v in ideals), pivot, float(ideals[pivot]))


@dataclass(frozen=True)
class PivotEstimate:
    """Estimated pivot probabilities with binomial standard errors.

    Stored as integer per-constituency counts; every replication credits
    exactly one constituency, so the counts sum to the replication total
    and the estimated shares sum to exactly 1.
    """

    counts: tuple[int, ...]
    replications: int
    seed: int

    @property
    def pi_hat(self) -> np.ndarray:
        return np.asarray(self.counts, dtype=np.float64) / self.replications

    @property
    def std_err(self) -> np.ndarray:
        p = self.pi_hat
        return np.sqrt(p * (1.0 - p) / self.replications)

    def exact_shares(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, self.replications) for c in self.counts)


def _block_bounds(replications: int):
    start = 0
    index = 0
    while start < replications:
        count = min(BLOCK_SIZE, replications - start)
        yield index, count
        start += count
        index += 1


def _block_rng(seed: int, block_index: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence((seed, block_index)))


def _block_ideals(fed, model, seed, block_index, count, with_shared=False):
    """Delegate positions for one replication block.

    Draw order is fixed (noise medians per constituency, then the shared
    shock matrix) so a block's content depends only on (seed, block index).
    """
    rng = _block_rng(seed, block_index)
    m = fed.num_constituencies
    noise = np.empty((count, m))
    for i, population in enumerate(fed.populations):
        noise[:, i] = sample_median_shock(population, model.idiosyncratic, rng, count)
    if model.cohesion > 0:
        shared = model.constituency.sample(rng, (count, m))
        return model.cohesion * shared + noise, shared
    if with_shared:
        raise ValueError("ordering comparison needs cohesion > 0")
    return noise, None


def _block_pivot_counts(fed, game, model, seed, block_index, count) -> np.ndarray:
    ideals, _ = _block_ideals(fed, model, seed, block_index, count)
    order = np.argsort(ideals, axis=1, kind="stable")
    cumulative = np.cumsum(np.asarray(game.weights, dtype=np.int64)[order], axis=1)
    quota = game.quota_ratio
    winning = cumulative * quota.denominator > quota.numerator * game.total_weight
    positions = np.argmax(winning, axis=1)
    pivots = order[np.arange(count), positions]
    return np.bincount(pivots, minlength=fed.num_constituencies)


def estimate_pivot_probabilities(
    fed: FederationSpec,
    game: WeightedVotingGame,
    model: PreferenceModel,
    replications: int,
    seed: int,
) -> PivotEstimate:
    """Estimate each delegate's pivot probability over independent
    replications.

    Replications are processed in fixed-size blocks, each with its own RNG
    substream derived from (seed, block index); accumulation is an
    order-independent integer sum, so the estimate is identical no matter
    how blocks are scheduled across workers.
    """
    if replications < 1:
        raise ValueError("need at least one replication")
    if game.num_players != fed.num_constituencies:
        raise ValueError("game and federation must have matching sizes")
    if seed < 0:
        raise ValueError("seed must be non-negative")
    counts = np.zeros(fed.num_constituencies, dtype=np.int64)
    for block_index, count in _block_bounds(replications):
        counts += _block_pivot_counts(fed, game, model, seed, block_index, count)
    return PivotEstimate(tuple(int(c) for c in counts), replications, seed)


def ordering_match_rate(
    fed: FederationSpec, model: PreferenceModel, replications: int, seed: int
) -> float:
    """Fraction of replications in which the delegates' position order
    equals the order of the underlying shared shocks.  Requires positive
    cohesion (at zero the shared shocks play no role and the comparison is
    meaningless)."""
    if model.cohesion <= 0:
        raise ValueError("ordering_match_rate requires cohesion > 0")
    if replications < 1:
        raise ValueError("need at least one replication")
    matches = 0
    for block_index, count in _block_bounds(replications):
        ideals, shared = _block_ideals(fed, model, seed, block_index, count, with_shared=True)
        same = np.argsort(ideals, axis=1, kind="stable") == np.argsort(shared, axis=1, kind="stable")
        matches += int(same.all(axis=1).sum())
    return matches / replications


def ordering_match_lower_bound(fed: FederationSpec, model: PreferenceModel) -> float:
    """Crude analytic lower bound on the ordering match rate:
    1 - (8 * k * m(m-1)/2 + sum of median-shock variances) * cohesion^(-2/3)
    with k the sup of the shared-shock density.  Vacuous (negative) unless
    cohesion is enormous; useful only as a sanity floor."""
    if model.cohesion <= 0:
        raise ValueError("bound requires cohesion > 0")
    m = fed.num_constituencies
    density_cap = model.constituency.density_bound
    variance_sum = sum(
        median_shock_variance(p, model.idiosyncratic) for p in fed.populations
    )
    slack = (8.0 * density_cap * math.comb(m, 2) + variance_sum) * model.cohesion ** (-2.0 / 3.0)
    return 1.0 - slack


def _pivot_values(pi) -> list:
    if isinstance(pi, PivotEstimate):
        return list(pi.exact_shares())
    return list(pi)


def voter_influence(pi, fed: FederationSpec):
    """Per-constituency influence of a single voter: pivot probability
    divided by population.  Exact fractions in, exact fractions out;
    float vectors yield a float array."""
    values = _pivot_values(pi)
    if len(values) != fed.num_constituencies:
        raise ValueError("pivot vector and federation sizes differ")
    if all(isinstance(v, (Fraction, int)) for v in values):
        return [Fraction(v) / n for v, n in zip(values, fed.populations)]
    return np.asarray(values, dtype=np.float64) / np.asarray(fed.populations, dtype=np.float64)


def fairness_deviation(pi, fed: FederationSpec) -> float:
    """L1 distance between all n voters' influence and the ideal 1/n each.

    Voters within a constituency share the same influence, so the n-term
    sum collapses to sum_i n_i * |pi_i / n_i - 1/n| = sum_i |pi_i - n_i/n|,
    which is how it is evaluated.
    """
    values = _pivot_values(pi)
    if len(values) != fed.num_constituencies:
        raise ValueError("pivot vector and federation sizes differ")
    shares = fed.shares()
    return float(sum(abs(Fraction(v) - s) for v, s in zip(values, shares)))
