import numpy as np
import pytest

import formetric as fm
from formetric.errors import InvalidInputError
from formetric.formation import invert_permutation, validate_permutation

from conftest import ALL_SPACES, random_action

TWO_PI = 2.0 * np.pi


class TestChebyshev:
    def test_self_distance_zero(self, rng):
        for space in ALL_SPACES:
            x = fm.random_configuration(space, 4, 1)
            assert fm.chebyshev_distance(x, x) == 0.0

    def test_circle_pair(self):
        c = fm.circle()
        x = fm.Configuration(c, np.array([[0.0], [1.0]]))
        y = fm.Configuration(c, np.array([[0.1], [1.3]]))
        assert fm.chebyshev_distance(x, y) == pytest.approx(0.3, abs=1e-12)

    def test_torus_wrap_on_first_coordinate(self):
        t1 = fm.torus(1)
        x = fm.Configuration(t1, np.array([[0.0], [1.0], [2.0]]))
        y = fm.Configuration(t1, np.array([[TWO_PI - 0.2], [1.0], [2.0]]))
        assert fm.chebyshev_distance(x, y) == pytest.approx(0.2, abs=1e-12)

    def test_mismatch_rejected(self):
        x = fm.Configuration(fm.circle(), np.array([[0.0]]))
        y = fm.Configuration(fm.torus(2), np.array([[0.0, 0.0]]))
        with pytest.raises(InvalidInputError):
            fm.chebyshev_distance(x, y)
        z = fm.Configuration(fm.circle(), np.array([[0.0], [1.0]]))
        with pytest.raises(InvalidInputError):
            fm.chebyshev_distance(x, z)


class TestInducedMatrix:
    def test_single_agent(self):
        x = fm.Configuration(fm.circle(), np.array([[1.0]]))
        assert fm.induced_distance_matrix(x).values.shape == (1, 1)
        assert fm.induced_distance_matrix(x).values[0, 0] == 0.0

    def test_circle_values(self):
        x = fm.Configuration(fm.circle(), np.array([[0.0], [0.5], [1.2]]))
        vals = fm.induced_distance_matrix(x).values
        off = sorted(vals[np.triu_indices(3, 1)])
        assert off == pytest.approx([0.5, 0.7, 1.2], abs=1e-12)

    def test_action_invariance(self, rng):
        for space in ALL_SPACES:
            x = fm.random_configuration(space, 5, 2)
            g = fm.sample(space, 9, "group")
            moved = fm.apply_action(fm.LabeledAction(g, np.arange(5)), x)
            a = fm.induced_distance_matrix(x).values
            b = fm.induced_distance_matrix(moved).values
            assert np.max(np.abs(a - b)) <= 1e-9

    def test_conjugation_by_permutation(self, rng):
        for space in ALL_SPACES:
            x = fm.random_configuration(space, 5, 3)
            h = random_action(space, 5, rng)
            a = fm.induced_distance_matrix(x).values
            b = fm.induced_distance_matrix(fm.apply_action(h, x)).values
            sigma = h.sigma
            assert np.max(np.abs(b[np.ix_(sigma, sigma)] - a)) <= 1e-9

    def test_verify_mode(self, rng):
        x = fm.random_configuration(fm.sphere2(), 6, 4)
        fm.induced_distance_matrix(x, verify=True)  # triangle inequality holds
        with pytest.raises(InvalidInputError):
            fm.DistanceMatrix(np.array([[0.0, 5.0, 1.0], [5, 0, 1], [1, 1, 0]]), verify=True)


class TestApplyAction:
    def test_identity(self, rng):
        for space in ALL_SPACES:
            x = fm.random_configuration(space, 4, 5)
            out = fm.apply_action(fm.LabeledAction(_identity(space), np.arange(4)), x)
            assert np.max(np.abs(out.points - x.points)) <= 1e-12

    def test_transposition_relabels(self):
        c = fm.circle()
        x = fm.Configuration(c, np.array([[0.0], [1.0], [2.0]]))
        h = fm.LabeledAction(np.zeros(1), np.array([1, 0, 2]))
        out = fm.apply_action(h, x)
        assert out.points[:, 0] == pytest.approx([1.0, 0.0, 2.0], abs=0)

    def test_action_is_isometry_of_chebyshev(self, rng):
        for space in ALL_SPACES:
            x = fm.random_configuration(space, 5, 6)
            y = fm.random_configuration(space, 5, 7)
            h = random_action(space, 5, rng)
            d0 = fm.chebyshev_distance(x, y)
            d1 = fm.chebyshev_distance(fm.apply_action(h, x), fm.apply_action(h, y))
            assert abs(d0 - d1) <= 1e-9

    def test_permutation_validation(self):
        x = fm.Configuration(fm.circle(), np.array([[0.0], [1.0]]))
        with pytest.raises(InvalidInputError):
            fm.apply_action(fm.LabeledAction(np.zeros(1), np.array([0, 0])), x)
        with pytest.raises(InvalidInputError):
            fm.apply_action(fm.LabeledAction(np.zeros(1), np.array([0, 1, 2])), x)

    def test_invert_permutation(self, rng):
        sigma = validate_permutation(rng.permutation(7))
        inv = invert_permutation(sigma)
        assert np.array_equal(sigma[inv], np.arange(7))


class TestAlignmentCost:
    def test_exact_alignment_is_zero(self, rng):
        for space in ALL_SPACES:
            x = fm.random_configuration(space, 5, 8)
            h = random_action(space, 5, rng)
            y = fm.apply_action(h, x)
            cost = fm.alignment_cost(h.g, h.sigma, x, y)
            assert cost <= 1e-9

    def test_circle_translation_orbit(self):
        c = fm.circle()
        x = fm.Configuration(c, np.array([[0.0], [1.0]]))
        y = fm.Configuration(c, np.array([[2.0], [3.0]]))
        assert fm.alignment_cost(np.array([2.0]), np.arange(2), x, y) <= 1e-12

    def test_cost_bounds_distance(self, rng):
        for space in ALL_SPACES:
            x = fm.random_configuration(space, 4, 9)
            y = fm.random_configuration(space, 4, 10)
            result = fm.formation_distance(
                x, y, fm.SolverOptions(restarts=2, refine_iters=1)
            )
            for _ in range(20):
                h = random_action(space, 4, rng)
                assert (
                    fm.alignment_cost(h.g, h.sigma, x, y) >= result.upper_bound - 1e-9
                )


class TestCollision:
    def test_duplicate_point(self):
        c = fm.circle()
        x = fm.Configuration(c, np.array([[1.0], [1.0]]))
        assert fm.has_collision(x, tol=0.0)

    def test_separated_points(self):
        x = fm.Configuration(fm.circle(), np.array([[0.0], [1.0]]))
        assert not fm.has_collision(x, tol=0.5)

    def test_tolerance_semantics(self):
        x = fm.Configuration(fm.circle(), np.array([[0.0], [1e-12]]))
        assert fm.has_collision(x, tol=1e-9)

    def test_single_agent_never_collides(self):
        x = fm.Configuration(fm.circle(), np.array([[0.0]]))
        assert not fm.has_collision(x, tol=1.0)

    def test_negative_tolerance_rejected(self):
        x = fm.Configuration(fm.circle(), np.array([[0.0]]))
        with pytest.raises(InvalidInputError):
            fm.has_collision(x, tol=-1.0)


class TestConfigurationValidation:
    def test_sphere_renormalization_window(self):
        s = fm.sphere2()
        fm.Configuration(s, np.array([[1.0 + 5e-7, 0.0, 0.0]]))  # renormalized
        with pytest.raises(InvalidInputError):
            fm.Configuration(s, np.array([[1.0, 1.0, 1.0]]))

    def test_points_readonly(self):
        x = fm.Configuration(fm.circle(), np.array([[0.0], [1.0]]))
        with pytest.raises(ValueError):
            x.points[0, 0] = 5.0


def _identity(space):
    if space.kind == "sphere2":
        return np.array([1.0, 0.0, 0.0, 0.0])
    return np.zeros(space.m)
