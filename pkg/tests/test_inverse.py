"""Inverse power-index solvers: distances, certified optima, hill climbing."""

import itertools
from fractions import Fraction

import numpy as np
import pytest

from twotier import (
    FederationSpec,
    InverseProblemSpec,
    InverseSolution,
    ResourceLimitError,
    WeightedVotingGame,
    distance,
    largest_remainder,
    shapley_permutation_oracle,
    shapley_shubik,
    solve_exhaustive,
    solve_local_search,
)

HALF = Fraction(1, 2)
F = Fraction


class TestDistance:
    def test_l1_fixture(self):
        ssi = (F(1, 2), F(1, 6), F(1, 6), F(1, 6))
        target = (0.42, 0.25, 0.24, 0.09)
        assert distance(ssi, target, "l1") == pytest.approx(47 / 150, abs=1e-12)

    def test_identical(self):
        assert distance((0.5, 0.5), (0.5, 0.5), "l2") == 0.0

    def test_opposite_unit_vectors(self):
        assert distance((1, 0), (0, 1), "l1") == pytest.approx(2.0)
        assert distance((1, 0), (0, 1), "linf") == pytest.approx(1.0)
        assert distance((1, 0), (0, 1), "l2") == pytest.approx(2**0.5)

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            distance((1, 0), (1, 0, 0))

    def test_unknown_norm(self):
        with pytest.raises(ValueError):
            distance((1,), (1,), "l3")


class TestProblemSpec:
    def test_renormalizes_exactly(self):
        spec = InverseProblemSpec(target=(0.42, 0.25, 0.24, 0.09))
        assert sum(spec.target) == 1
        assert all(isinstance(t, Fraction) for t in spec.target)

    def test_rejects_bad_sum(self):
        with pytest.raises(ValueError):
            InverseProblemSpec(target=(0.5, 0.4))

    def test_rejects_negative(self):
        with pytest.raises(ValueError):
            InverseProblemSpec(target=(1.5, -0.5))

    def test_rejects_empty(self):
        with pytest.raises(ValueError):
            InverseProblemSpec(target=())


class TestLargestRemainder:
    def test_already_integral(self):
        assert largest_remainder((42, 25, 24, 9), 100) == [42, 25, 24, 9]

    def test_square_root_shares(self):
        assert largest_remainder((10.0, 20.0), 3) == [1, 2]

    def test_sums_to_total(self):
        rng = np.random.default_rng(21)
        for _ in range(50):
            shares = rng.dirichlet(np.ones(int(rng.integers(1, 8))))
            total = int(rng.integers(1, 200))
            rounded = largest_remainder(shares.tolist(), total)
            assert sum(rounded) == total
            assert all(w >= 0 for w in rounded)

    def test_rejects_all_zero(self):
        with pytest.raises(ValueError):
            largest_remainder((0, 0), 5)


def rescan_optimum(target, quota, norm, weight_bound):
    """Independent oracle: scan the full product grid {0..weight_bound}^m and
    score each game with the permutation oracle under the sorted pairing."""
    m = len(target)
    sorted_target = sorted((Fraction(t) for t in target), reverse=True)
    best = None
    for vec in itertools.product(range(weight_bound + 1), repeat=m):
        if not any(vec) or tuple(sorted(vec, reverse=True)) != vec:
            continue
        ssi = shapley_permutation_oracle(WeightedVotingGame(vec, quota))
        key = sum(abs(s - t) for s, t in zip(ssi, sorted_target)) if norm == "l1" else max(
            abs(s - t) for s, t in zip(ssi, sorted_target)
        )
        if best is None or key < best[0]:
            best = (key, vec)
    return best


class TestSolveExhaustive:
    def test_symmetric_target_exact(self):
        spec = InverseProblemSpec(target=(F(1, 3),) * 3, weight_sum_bound=20)
        solution = solve_exhaustive(spec)
        assert solution.distance == 0.0
        assert solution.optimality_certified
        assert len(set(solution.game.weights)) == 1

    def test_target_42_25_24_9(self):
        spec = InverseProblemSpec(target=(0.42, 0.25, 0.24, 0.09), weight_sum_bound=30)
        solution = solve_exhaustive(spec)
        assert solution.ssi == (F(5, 12), F(1, 4), F(1, 4), F(1, 12))
        assert solution.distance == pytest.approx(0.02, abs=1e-12)

    @pytest.mark.parametrize("norm", ["l2", "linf"])
    def test_other_norms_same_optimum_here(self, norm):
        spec = InverseProblemSpec(target=(0.42, 0.25, 0.24, 0.09), weight_sum_bound=30, norm=norm)
        solution = solve_exhaustive(spec)
        assert solution.ssi == (F(5, 12), F(1, 4), F(1, 4), F(1, 12))
        assert solution.optimality_certified

    def test_target_49_33_9_9_matches_rescan_oracle(self):
        # full independent rescan certifies the optimum for this target
        target = (F(49, 100), F(33, 100), F(9, 100), F(9, 100))
        oracle_key, oracle_vec = rescan_optimum(target, HALF, "l1", 8)
        spec = InverseProblemSpec(target=target, weight_sum_bound=30)
        solution = solve_exhaustive(spec)
        assert solution.distance == pytest.approx(float(oracle_key), abs=1e-12)
        assert oracle_key == F(47, 150)
        assert oracle_vec == (2, 2, 1, 1)
        assert sorted(solution.ssi, reverse=True) == [F(1, 3), F(1, 3), F(1, 6), F(1, 6)]

    def test_rescan_oracle_on_random_targets(self):
        rng = np.random.default_rng(22)
        for _ in range(4):
            target = tuple(rng.dirichlet(np.ones(3)).tolist())
            oracle_key, _ = rescan_optimum(target, HALF, "l1", 6)
            spec = InverseProblemSpec(target=target, weight_sum_bound=18)
            solution = solve_exhaustive(spec)
            assert solution.distance == pytest.approx(float(oracle_key), abs=1e-12)

    def test_weights_aligned_to_target_order(self):
        spec = InverseProblemSpec(target=(0.09, 0.42, 0.24, 0.25), weight_sum_bound=30)
        solution = solve_exhaustive(spec)
        weights = solution.game.weights
        assert weights[1] == max(weights) and weights[0] == min(weights)

    def test_granularity_barrier(self):
        # SSI components are multiples of 1/24, so this target is unreachable
        spec = InverseProblemSpec(target=(0.42, 0.25, 0.24, 0.09), weight_sum_bound=30)
        assert solve_exhaustive(spec).distance > 0

    def test_refuses_many_players(self):
        spec = InverseProblemSpec(target=(F(1, 7),) * 7, weight_sum_bound=10)
        with pytest.raises(ValueError):
            solve_exhaustive(spec)

    def test_budget_guard(self):
        spec = InverseProblemSpec(target=(F(1, 6),) * 6, weight_sum_bound=100)
        with pytest.raises(ResourceLimitError):
            solve_exhaustive(spec)

    def test_nozick_small_group(self):
        # three equal groups plus one smaller: the small delegate gets either
        # power equal to the others' or none at all
        for large in range(1, 5):
            for small in range(0, large + 1):
                if small == 0 and large == 0:
                    continue
                game = WeightedVotingGame((large, large, large, max(small, 0)), HALF)
                values = shapley_shubik(game)
                assert values[3] == (values[0] if small == large else 0)
        spec = InverseProblemSpec(target=(0.26, 0.26, 0.26, 0.22), weight_sum_bound=20)
        solution = solve_exhaustive(spec)
        assert solution.ssi[3] in (solution.ssi[0], 0)


class TestSolveLocalSearch:
    def test_symmetric_target_exact(self):
        spec = InverseProblemSpec(target=(F(1, 4),) * 4, weight_sum_bound=40, restarts=5, seed=3)
        assert solve_local_search(spec).distance == 0.0

    def test_matches_certified_optimum_49_33_9_9(self):
        spec = InverseProblemSpec(
            target=(0.49, 0.33, 0.09, 0.09), weight_sum_bound=100, restarts=20, seed=1
        )
        local = solve_local_search(spec)
        certified = solve_exhaustive(
            InverseProblemSpec(target=(0.49, 0.33, 0.09, 0.09), weight_sum_bound=30)
        )
        assert abs(local.distance - certified.distance) <= 1e-12
        assert not local.optimality_certified

    def test_matches_exhaustive_on_four_player_targets(self):
        rng = np.random.default_rng(23)
        for _ in range(6):
            target = tuple(rng.dirichlet(np.ones(4)).tolist())
            local = solve_local_search(
                InverseProblemSpec(target=target, weight_sum_bound=60, restarts=10, seed=9)
            )
            certified = solve_exhaustive(InverseProblemSpec(target=target, weight_sum_bound=24))
            assert abs(local.distance - certified.distance) <= 1e-12

    def test_never_worse_than_proportional_init(self):
        rng = np.random.default_rng(24)
        for _ in range(5):
            target = tuple(rng.dirichlet(np.ones(5)).tolist())
            spec = InverseProblemSpec(target=target, weight_sum_bound=50, restarts=4, seed=17)
            init = tuple(largest_remainder(spec.target, spec.weight_sum_bound))
            init_distance = distance(
                shapley_shubik(WeightedVotingGame(init, spec.quota_ratio)), spec.target, spec.norm
            )
            assert solve_local_search(spec).distance <= init_distance + 1e-12

    def test_deterministic(self):
        spec = InverseProblemSpec(
            target=(0.4, 0.3, 0.2, 0.1), weight_sum_bound=80, restarts=8, seed=5
        )
        first = solve_local_search(spec)
        second = solve_local_search(spec)
        assert first.game == second.game
        assert first.distance == second.distance

    def test_skewed_federation_beats_proportional_weights(self):
        # population weights are a good default; the solver must still beat them
        fed = FederationSpec.from_sizes((520, 260, 90, 50, 40, 20, 12, 8))
        target = fed.shares()
        quota = Fraction(37, 50)
        spec = InverseProblemSpec(
            target=target, quota_ratio=quota, weight_sum_bound=120, restarts=4, seed=2
        )
        solution = solve_local_search(spec)
        proportional = WeightedVotingGame(tuple(largest_remainder(target, 120)), quota)
        proportional_distance = distance(shapley_shubik(proportional), target, "l1")
        assert solution.distance < proportional_distance


class TestInverseSolution:
    def test_distance_validated(self):
        spec = InverseProblemSpec(target=(F(1, 2), F(1, 2)))
        game = WeightedVotingGame((1, 1), HALF)
        with pytest.raises(ValueError):
            InverseSolution(
                problem=spec,
                game=game,
                ssi=shapley_shubik(game),
                distance=0.5,
                method="local_search",
                steps=0,
                restarts_used=1,
                optimality_certified=False,
            )

    def test_certification_requires_exhaustive(self):
        spec = InverseProblemSpec(target=(F(1, 2), F(1, 2)))
        game = WeightedVotingGame((1, 1), HALF)
        with pytest.raises(ValueError):
            InverseSolution(
                problem=spec,
                game=game,
                ssi=shapley_shubik(game),
                distance=0.0,
                method="local_search",
                steps=0,
                restarts_used=1,
                optimality_certified=True,
            )
