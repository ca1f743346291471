"""Weighted voting games with exact rational quota arithmetic.

A game ``[q; w_1, ..., w_m]`` assigns a non-negative integer weight to each
of ``m`` players and declares a coalition winning iff its combined weight
strictly exceeds ``q`` times the total weight.  All win/lose decisions are
made in exact integer arithmetic: a coalition sitting exactly at the quota
loses, and no floating-point rounding can flip such knife-edge cases.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable

import numpy as np

__all__ = [
    "Coalition",
    "WeightedVotingGame",
    "CanonicalGameSignature",
    "GameClass",
    "GameClassEnumeration",
    "ResourceLimitError",
    "exact_quota",
    "canonicalize",
    "enumerate_game_classes",
]


class ResourceLimitError(RuntimeError):
    """An exact computation would exceed its configured budget."""


def exact_quota(value: Fraction | str | int) -> Fraction:
    """Coerce a relative quota to an exact Fraction in [1/2, 1).

    Floats are rejected on purpose: ``0.74`` has no exact binary
    representation, and a rounded quota silently moves coalitions that sit
    exactly at the threshold.  Pass ``Fraction(74, 100)`` or the string
    ``"0.74"`` (parsed as 37/50) instead.
    """
    if isinstance(value, float):
        raise TypeError(
            "quota must be a Fraction, string, or integer ratio, not float; "
            "pass e.g. Fraction(74, 100) or '0.74' for exactness"
        )
    quota = Fraction(value)
    if not Fraction(1, 2) <= quota < 1:
        raise ValueError(f"quota must satisfy 1/2 <= q < 1, got {quota}")
    return quota


@dataclass(frozen=True)
class Coalition:
    """Subset of player indices with bitset semantics (exact, hashable)."""

    mask: int = 0

    @classmethod
    def from_members(cls, members: Iterable[int]) -> "Coalition":
        mask = 0
        for idx in members:
            if idx < 0:
                raise IndexError(f"player index {idx} out of range")
            mask |= 1 << idx
        return cls(mask)

    def contains(self, idx: int) -> bool:
        return bool((self.mask >> idx) & 1)

    def with_member(self, idx: int) -> "Coalition":
        return Coalition(self.mask | (1 << idx))

    @property
    def size(self) -> int:
        return self.mask.bit_count()

    def members(self) -> tuple[int, ...]:
        return tuple(i for i in range(self.mask.bit_length()) if (self.mask >> i) & 1)


@dataclass(frozen=True)
class WeightedVotingGame:
    """Weighted voting rule: coalition wins iff weight > quota_ratio * total.

    Weights are non-negative integers (at least one positive) and the quota
    is stored as an exact rational.  The absolute quota is always derived as
    ``quota_ratio * total_weight`` and never stored separately.
    """

    weights: tuple[int, ...]
    quota_ratio: Fraction = field(default=Fraction(1, 2))

    def __post_init__(self) -> None:
        weights = tuple(int(w) for w in self.weights)
        if len(weights) < 1:
            raise ValueError("a game needs at least one player")
        if any(w < 0 for w in weights):
            raise ValueError("weights must be non-negative")
        if not any(weights):
            raise ValueError("at least one weight must be positive")
        object.__setattr__(self, "weights", weights)
        object.__setattr__(self, "quota_ratio", exact_quota(self.quota_ratio))

    @property
    def num_players(self) -> int:
        return len(self.weights)

    @cached_property
    def total_weight(self) -> int:
        return sum(self.weights)

    def wins_weight(self, weight: int) -> bool:
        """Exact test: does a coalition of this combined weight win?"""
        quota = self.quota_ratio
        return weight * quota.denominator > quota.numerator * self.total_weight

    def coalition_weight(self, members: Coalition | Iterable[int]) -> int:
        if isinstance(members, Coalition):
            members = members.members()
        weight = 0
        for idx in set(members):
            if not 0 <= idx < self.num_players:
                raise IndexError(f"player index {idx} out of range for {self.num_players} players")
            weight += self.weights[idx]
        return weight

    def is_winning(self, members: Coalition | Iterable[int]) -> bool:
        return self.wins_weight(self.coalition_weight(members))

    def to_text(self) -> str:
        """Serialize as ``q_num/q_den; w1,w2,...,wm``."""
        quota = self.quota_ratio
        return f"{quota.numerator}/{quota.denominator}; " + ",".join(map(str, self.weights))

    @classmethod
    def from_text(cls, text: str) -> "WeightedVotingGame":
        head, _, tail = text.partition(";")
        if not tail:
            raise ValueError(f"expected 'q_num/q_den; w1,...,wm', got {text!r}")
        try:
            quota = Fraction(head.strip())
            weights = tuple(int(part.strip()) for part in tail.split(","))
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"malformed game record {text!r}: {exc}") from None
        return cls(weights, quota)


@dataclass(frozen=True, order=True)
class CanonicalGameSignature:
    """Minimal winning coalitions after relabeling players by weight.

    Players are reordered by non-increasing weight and the minimal winning
    family is encoded as a sorted tuple of bitmasks.  Two games get equal
    signatures iff their winning families coincide up to a player
    permutation: equal weights make players interchangeable, so any sort
    order consistent with the weights yields the same family.
    """

    num_players: int
    minimal_winning: tuple[int, ...]


def _subset_weights(weights: tuple[int, ...]) -> np.ndarray:
    """Weights of all 2^m coalitions, indexed by bitmask."""
    out = np.zeros(1 << len(weights), dtype=np.int64)
    for i, w in enumerate(weights):
        out[1 << i : 1 << (i + 1)] = out[: 1 << i] + w
    return out


def canonicalize(game: WeightedVotingGame, max_players: int = 20) -> CanonicalGameSignature:
    """Canonical signature of a game, invariant under player permutation
    and under scaling all weights by a positive integer."""
    m = game.num_players
    if m > max_players:
        raise ResourceLimitError(f"canonical form enumerates 2^{m} coalitions, above the {max_players}-player cap")
    order = sorted(range(m), key=lambda i: (-game.weights[i], i))
    weights = tuple(game.weights[i] for i in order)

    quota = game.quota_ratio
    total = game.total_weight
    winning = _subset_weights(weights) * quota.denominator > quota.numerator * total

    # minimal winning: winning, and dropping any single member loses
    minimal = winning.copy()
    indices = np.arange(1 << m)
    for i in range(m):
        holders = indices[(indices >> i) & 1 == 1]
        minimal[holders] &= ~winning[holders ^ (1 << i)]
    masks = tuple(int(mask) for mask in np.flatnonzero(minimal))
    return CanonicalGameSignature(m, masks)


@dataclass(frozen=True)
class GameClass:
    signature: CanonicalGameSignature
    representative: tuple[int, ...]


@dataclass(frozen=True)
class GameClassEnumeration:
    """Distinct game classes over a bounded integer weight grid."""

    num_players: int
    quota_ratio: Fraction
    weight_bound: int
    classes: tuple[GameClass, ...]

    @property
    def count(self) -> int:
        return len(self.classes)

    def representatives(self) -> tuple[tuple[int, ...], ...]:
        return tuple(cls.representative for cls in self.classes)


def enumerate_game_classes(
    num_players: int,
    quota: Fraction | str | int,
    weight_bound: int,
    budget: int = 20_000_000,
) -> GameClassEnumeration:
    """Enumerate structurally distinct games with weights in {0..weight_bound}.

    Every weight vector with entries up to the bound (and at least one
    positive entry) is canonicalized; the grid has (weight_bound+1)^m
    points, guarded by ``budget``.  Only non-increasing vectors are visited
    since the signature is permutation invariant.  Each class reports the
    representative minimizing (weight sum, lexicographic order).
    """
    if num_players < 1:
        raise ValueError("need at least one player")
    if weight_bound < 1:
        raise ValueError("weight bound must be positive")
    quota = exact_quota(quota)
    if (weight_bound + 1) ** num_players > budget:
        raise ResourceLimitError(
            f"grid of {(weight_bound + 1) ** num_players} weight vectors exceeds budget {budget}"
        )

    best_rep: dict[CanonicalGameSignature, tuple[int, ...]] = {}
    for vec in itertools.combinations_with_replacement(range(weight_bound, -1, -1), num_players):
        if vec[0] == 0:
            continue
        signature = canonicalize(WeightedVotingGame(vec, quota))
        current = best_rep.get(signature)
        if current is None or (sum(vec), vec) < (sum(current), current):
            best_rep[signature] = vec
    classes = tuple(
        GameClass(sig, rep)
        for sig, rep in sorted(best_rep.items(), key=lambda kv: (sum(kv[1]), kv[1]))
    )
    return GameClassEnumeration(num_players, quota, weight_bound, classes)
