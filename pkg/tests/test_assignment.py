import numpy as np
import pytest

import formetric as fm
from formetric.errors import InvalidInputError
from formetric.oracles import brute_assignment_value


class TestBottleneckAssignment:
    def test_zero_matrix(self):
        value, sigma = fm.bottleneck_assignment(np.zeros((4, 4)))
        assert value == 0.0
        assert np.array_equal(sigma, np.arange(4))

    def test_two_by_two_line_points(self):
        # points {0, 1} vs {0.1, 0.9}: identity matching wins at 0.1
        costs = np.array([[0.1, 0.9], [0.9, 0.1]])
        value, sigma = fm.bottleneck_assignment(costs)
        assert value == pytest.approx(0.1, abs=0)
        assert np.array_equal(sigma, [0, 1])

    def test_three_by_three_vs_brute(self, rng):
        for _ in range(50):
            costs = rng.uniform(0, 1, size=(3, 3))
            value, _ = fm.bottleneck_assignment(costs)
            assert value == brute_assignment_value(costs)

    def test_optimality_up_to_seven(self, rng):
        for _ in range(200):
            n = int(rng.integers(1, 8))
            costs = rng.uniform(0, 1, size=(n, n))
            value, sigma = fm.bottleneck_assignment(costs)
            assert value == brute_assignment_value(costs)
            assert float(np.max(costs[np.arange(n), sigma])) == value

    def test_value_is_matrix_entry(self, rng):
        for _ in range(50):
            costs = rng.uniform(0, 1, size=(5, 5))
            value, _ = fm.bottleneck_assignment(costs)
            assert value in costs

    def test_deterministic_sigma(self, rng):
        costs = rng.uniform(0, 1, size=(6, 6))
        results = {tuple(fm.bottleneck_assignment(costs)[1]) for _ in range(5)}
        assert len(results) == 1

    def test_lexicographically_smallest_optimum(self):
        # both permutations achieve the optimum 0.5; identity is lex-smaller
        costs = np.array([[0.5, 0.5], [0.5, 0.5]])
        _, sigma = fm.bottleneck_assignment(costs)
        assert np.array_equal(sigma, [0, 1])

    def test_ties_resolved_lexicographically(self, rng):
        # identical rows make every permutation optimal; identity is lex-smallest
        row = rng.uniform(0, 1, size=4)
        costs = np.tile(row, (4, 1))
        _, sigma = fm.bottleneck_assignment(costs)
        assert np.array_equal(sigma, np.arange(4))

    def test_invalid_inputs(self):
        with pytest.raises(InvalidInputError):
            fm.bottleneck_assignment(np.ones((2, 3)))
        with pytest.raises(InvalidInputError):
            fm.bottleneck_assignment(np.array([[1.0, -0.5], [0.2, 0.1]]))
        with pytest.raises(InvalidInputError):
            fm.bottleneck_assignment(np.array([[np.inf, 1.0], [1.0, 0.0]]))

    def test_value_only_path_agrees(self, rng):
        for _ in range(100):
            n = int(rng.integers(1, 9))
            costs = rng.uniform(0, 1, size=(n, n))
            assert fm.bottleneck_value(costs) == fm.bottleneck_assignment(costs)[0]


class TestFeasibility:
    def test_max_entry_is_feasible(self, rng):
        costs = rng.uniform(0, 1, size=(5, 5))
        assert fm.feasibility_at(costs, float(costs.max()))

    def test_below_row_minimum_infeasible(self, rng):
        costs = rng.uniform(0.2, 1, size=(5, 5))
        eps = float(costs.min(axis=1).min()) - 0.1
        assert not fm.feasibility_at(costs, max(eps, 0.0))

    def test_monotone_in_threshold(self, rng):
        for _ in range(20):
            costs = rng.uniform(0, 1, size=(5, 5))
            feasible = [
                fm.feasibility_at(costs, float(v)) for v in np.sort(costs.ravel())
            ]
            # once feasible, always feasible at larger thresholds
            assert feasible == sorted(feasible)
            assert feasible[-1]

    def test_threshold_equals_optimum(self, rng):
        costs = rng.uniform(0, 1, size=(6, 6))
        value = fm.bottleneck_value(costs)
        assert fm.feasibility_at(costs, value)
        smaller = np.sort(np.unique(costs.ravel()))
        below = smaller[smaller < value]
        if below.size:
            assert not fm.feasibility_at(costs, float(below[-1]))
