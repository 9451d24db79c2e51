import numpy as np
import pytest

import formetric as fm
from formetric.errors import DegenerateGeodesicError, InvalidInputError
from formetric.spaces import (
    canonical_angle,
    quat_from_matrix,
    quat_identity,
    quat_mul,
    quat_to_matrix,
    sample_group,
    sample_points,
    wrap_angle,
)

from conftest import ALL_SPACES

TWO_PI = 2.0 * np.pi


class TestDistances:
    def test_sphere_identity(self):
        s = fm.sphere2()
        assert fm.point_distance(s, [0, 0, 1], [0, 0, 1]) == 0.0

    def test_sphere_antipodal(self):
        s = fm.sphere2()
        assert fm.point_distance(s, [0, 0, 1], [0, 0, -1]) == pytest.approx(np.pi, abs=0)

    def test_circle_wrap(self):
        c = fm.circle()
        d = fm.point_distance(c, [0.1], [TWO_PI - 0.1])
        assert d == pytest.approx(0.2, abs=1e-12)

    def test_torus_no_wrap(self):
        t = fm.torus(2)
        d = fm.point_distance(t, [0, 0], [np.pi, np.pi])
        assert d == pytest.approx(np.pi * np.sqrt(2), abs=1e-12)

    def test_dimension_mismatch(self):
        with pytest.raises(InvalidInputError):
            fm.point_distance(fm.torus(2), [0.0], [0.0, 0.0])

    def test_symmetry_exact(self, rng):
        for space in ALL_SPACES:
            for _ in range(50):
                a = sample_points(space, rng, 1)[0]
                b = sample_points(space, rng, 1)[0]
                assert fm.point_distance(space, a, b) == fm.point_distance(space, b, a)

    def test_triangle_inequality_sampled(self, rng):
        for space in ALL_SPACES:
            for _ in range(1000):
                a, b, c = sample_points(space, rng, 3)
                ab = fm.point_distance(space, a, b)
                bc = fm.point_distance(space, b, c)
                ac = fm.point_distance(space, a, c)
                assert ab + bc - ac >= -1e-12

    def test_group_action_is_isometry(self, rng):
        for space in ALL_SPACES:
            for _ in range(100):
                a, b = sample_points(space, rng, 2)
                g = sample_group(space, rng)
                da = fm.point_distance(space, a, b)
                db = fm.point_distance(
                    space, fm.apply_group(space, g, a), fm.apply_group(space, g, b)
                )
                assert abs(da - db) <= 1e-9

    def test_distance_range(self, rng):
        for space in ALL_SPACES:
            for _ in range(100):
                a, b = sample_points(space, rng, 2)
                d = fm.point_distance(space, a, b)
                assert 0.0 <= d <= space.diameter + 1e-12


class TestGroupAction:
    def test_circle_translation_wraps(self):
        c = fm.circle()
        out = fm.apply_group(c, [1.0], [6.0])
        assert out[0] == pytest.approx(7.0 - TWO_PI, abs=1e-12)

    def test_sphere_identity_is_identity(self, rng):
        s = fm.sphere2()
        p = sample_points(s, rng, 1)[0]
        out = fm.apply_group(s, quat_identity(), p)
        assert np.max(np.abs(out - p)) <= 1e-12

    def test_torus_translation(self):
        t = fm.torus(2)
        out = fm.apply_group(t, [np.pi, 0.0], [np.pi, np.pi])
        assert out == pytest.approx([0.0, np.pi], abs=1e-12)

    def test_quaternion_norm_after_composition(self, rng):
        s = fm.sphere2()
        q = quat_identity()
        for _ in range(200):
            q = quat_mul(q, sample_group(s, rng))
            assert abs(np.linalg.norm(q) - 1.0) <= 1e-12

    def test_quat_matrix_roundtrip(self, rng):
        s = fm.sphere2()
        for _ in range(50):
            q = sample_group(s, rng)
            back = quat_from_matrix(quat_to_matrix(q))
            # q and -q are the same rotation
            assert min(np.max(np.abs(back - q)), np.max(np.abs(back + q))) <= 1e-9


class TestGeodesics:
    def test_endpoints(self, rng):
        for space in ALL_SPACES:
            a, b = sample_points(space, rng, 2)
            assert np.max(np.abs(fm.geodesic_point(space, a, b, 0.0) - a)) <= 1e-12
            assert np.max(np.abs(fm.geodesic_point(space, a, b, 1.0) - b)) <= 1e-9

    def test_circle_midpoint(self):
        c = fm.circle()
        mid = fm.geodesic_point(c, [0.0], [1.0], 0.5)
        assert mid[0] == pytest.approx(0.5, abs=1e-12)

    def test_sphere_orthogonal_midpoint(self):
        s = fm.sphere2()
        mid = fm.geodesic_point(s, [1, 0, 0], [0, 1, 0], 0.5)
        r = 1.0 / np.sqrt(2)
        assert mid == pytest.approx([r, r, 0.0], abs=1e-12)

    def test_constant_speed_parametrization(self, rng):
        grid = np.linspace(0.0, 1.0, 7)
        for space in ALL_SPACES:
            for _ in range(100):
                a, b = sample_points(space, rng, 2)
                d = fm.point_distance(space, a, b)
                if d >= space.diameter - 1e-6:
                    continue
                pts = [fm.geodesic_point(space, a, b, float(t)) for t in grid]
                for i in range(len(grid)):
                    for j in range(i + 1, len(grid)):
                        seg = fm.point_distance(space, pts[i], pts[j])
                        assert abs(seg - (grid[j] - grid[i]) * d) <= 1e-9

    def test_antipodal_raises_without_tie_break(self):
        s = fm.sphere2()
        with pytest.raises(DegenerateGeodesicError):
            fm.geodesic_point(s, [0, 0, 1], [0, 0, -1], 0.5)
        mid = fm.geodesic_point(s, [0, 0, 1], [0, 0, -1], 0.5, tie_break=True)
        assert abs(np.linalg.norm(mid) - 1.0) <= 1e-12
        assert fm.point_distance(s, [0, 0, 1], mid) == pytest.approx(np.pi / 2, abs=1e-9)

    def test_torus_half_wrap_raises_without_tie_break(self):
        c = fm.circle()
        with pytest.raises(DegenerateGeodesicError):
            fm.geodesic_point(c, [0.0], [np.pi], 0.5)
        mid = fm.geodesic_point(c, [0.0], [np.pi], 0.5, tie_break=True)
        assert mid[0] == pytest.approx(np.pi / 2, abs=1e-12)

    def test_parameter_range_checked(self):
        with pytest.raises(InvalidInputError):
            fm.geodesic_point(fm.circle(), [0.0], [1.0], 1.5)


class TestSampling:
    def test_determinism(self):
        for space in ALL_SPACES:
            for what in ("point", "group"):
                a = fm.sample(space, 123, what)
                b = fm.sample(space, 123, what)
                assert np.array_equal(a, b)

    def test_sphere_point_unit_norm(self):
        for seed in range(100):
            p = fm.sample(fm.sphere2(), seed, "point")
            assert abs(np.linalg.norm(p) - 1.0) <= 1e-9

    def test_torus_point_canonical(self):
        for seed in range(50):
            p = fm.sample(fm.torus(3), seed, "point")
            assert np.all((0.0 <= p) & (p < TWO_PI))

    def test_sphere_uniformity_mean_norm(self):
        # large-sample statistics: the mean of uniform sphere points has
        # norm ~ sqrt(3/N), far below 0.02 at N = 1e5
        rng = np.random.default_rng(99)
        pts = sample_points(fm.sphere2(), rng, 100_000)
        assert np.linalg.norm(pts.mean(axis=0)) < 0.02

    def test_rotation_sampler_matches_op(self, rng):
        q = fm.sample(fm.sphere2(), 5, "group")
        assert abs(np.linalg.norm(q) - 1.0) <= 1e-12


class TestWrapping:
    def test_wrap_angle_half_open(self):
        assert wrap_angle(np.pi) == pytest.approx(np.pi, abs=0)
        assert wrap_angle(-np.pi) == pytest.approx(np.pi, abs=0)
        assert wrap_angle(3 * np.pi) == pytest.approx(np.pi, abs=1e-12)
        assert wrap_angle(0.25) == pytest.approx(0.25, abs=0)

    def test_canonical_angle_range(self):
        vals = canonical_angle(np.array([-1e-18, 0.0, TWO_PI, TWO_PI + 0.5, -0.5]))
        assert np.all((0.0 <= vals) & (vals < TWO_PI))

    def test_space_validation(self):
        with pytest.raises(InvalidInputError):
            fm.torus(0)
        with pytest.raises(InvalidInputError):
            fm.AmbientSpace("plane")
