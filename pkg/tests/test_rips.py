import math

import numpy as np
import pytest

import formetric as fm
from formetric.errors import InvalidInputError, UnsupportedInstanceError
from formetric.oracles import brute_min_tree_weight

from conftest import ALL_SPACES, random_action, random_metric
from naive_oracles import h0_deaths_by_sweep, naive_rips_diagram


class TestMst:
    def test_single_point(self):
        summary = fm.mst(np.zeros((1, 1)))
        assert summary.edges == ()

    def test_line_is_consecutive_path(self):
        x = fm.Configuration(fm.circle(), np.array([[0.0], [0.5], [1.2]]))
        summary = fm.mst(fm.induced_distance_matrix(x))
        assert {(i, j) for i, j, _ in summary.edges} == {(0, 1), (1, 2)}
        assert summary.lengths == pytest.approx((0.5, 0.7), abs=1e-12)

    def test_weight_matches_tree_enumeration(self, rng):
        for _ in range(30):
            n = int(rng.integers(2, 6))
            d = random_metric(rng, n)
            summary = fm.mst(d)
            assert summary.total_weight == pytest.approx(
                brute_min_tree_weight(d), abs=1e-12
            )
            assert len(summary.edges) == n - 1

    def test_lengths_sorted_and_connected(self, rng):
        d = random_metric(rng, 7)
        summary = fm.mst(d)
        assert list(summary.lengths) == sorted(summary.lengths)
        parent = list(range(7))

        def find(a):
            while parent[a] != a:
                a = parent[a]
            return a

        for i, j, _ in summary.edges:
            parent[find(i)] = find(j)
        assert len({find(v) for v in range(7)}) == 1


class TestH0Diagram:
    def test_single_point(self):
        diagram = fm.h0_diagram(np.zeros((1, 1)))
        assert diagram.points == ((0.0, math.inf),)

    def test_line_deaths(self):
        x = fm.Configuration(fm.circle(), np.array([[0.0], [0.5], [1.2]]))
        diagram = fm.h0_diagram(fm.induced_distance_matrix(x))
        finite = [d for _, d in diagram.finite_points]
        assert finite == pytest.approx(
            h0_deaths_by_sweep(fm.induced_distance_matrix(x).values), abs=0
        )
        assert finite == pytest.approx([0.25, 0.35], abs=1e-12)

    def test_merge_sweep_oracle(self, rng):
        for _ in range(50):
            n = int(rng.integers(1, 9))
            d = random_metric(rng, n)
            diagram = fm.h0_diagram(d)
            deaths = sorted(dd for _, dd in diagram.finite_points)
            assert deaths == h0_deaths_by_sweep(d)
            assert len(diagram.essential_births) == 1

    def test_torus_counterexample_diagrams_match(self):
        line, square = fm.torus_mst_pair(0.2)
        da = fm.h0_diagram(fm.induced_distance_matrix(line))
        db = fm.h0_diagram(fm.induced_distance_matrix(square))
        assert da.points == db.points
        finite = [d for _, d in da.finite_points]
        assert finite == pytest.approx([0.1, 0.1, 0.1], abs=1e-12)


class TestRipsDiagram:
    def test_degree_zero_matches_mst_route(self, rng):
        for _ in range(100):
            n = int(rng.integers(1, 9))
            d = random_metric(rng, n)
            assert fm.rips_diagram(d, 0, max_n=16).points == fm.h0_diagram(d).points

    def test_three_points_have_no_cycles(self, rng):
        for _ in range(20):
            d = random_metric(rng, 3)
            assert fm.rips_diagram(d, 1).points == ()

    def test_torus_square_one_cycle(self):
        _, square = fm.torus_mst_pair(0.2)
        diagram = fm.rips_diagram(fm.induced_distance_matrix(square), 1)
        assert len(diagram.points) == 1
        birth, death = diagram.points[0]
        assert birth == pytest.approx(0.1, abs=1e-12)
        assert death == pytest.approx(0.1 * np.sqrt(2), abs=1e-12)

    def test_matches_persistent_betti_oracle(self, rng):
        for _ in range(40):
            n = int(rng.integers(4, 8))
            d = random_metric(rng, n)
            got = fm.rips_diagram(d, 1, max_n=8).points
            assert got == naive_rips_diagram(d.tolist(), 1)

    def test_degree_zero_matches_oracle_with_essentials(self, rng):
        for _ in range(15):
            n = int(rng.integers(2, 6))
            d = random_metric(rng, n)
            assert fm.rips_diagram(d, 0).points == naive_rips_diagram(d.tolist(), 0)

    def test_degree_two_on_small_instance(self, rng):
        d = random_metric(rng, 6)
        got = fm.rips_diagram(d, 2).points
        assert got == naive_rips_diagram(d.tolist(), 2)

    def test_scaling_convention_locked(self, rng):
        d = random_metric(rng, 6)
        base = fm.rips_diagram(d, 1, max_n=8).points
        doubled = fm.rips_diagram(2.0 * d, 1, max_n=8).points
        assert doubled == tuple((2.0 * b, 2.0 * dd) for b, dd in base)

    def test_guard(self):
        d = np.zeros((30, 30))
        with pytest.raises(UnsupportedInstanceError):
            fm.rips_diagram(d, 1)
        with pytest.raises(InvalidInputError):
            fm.rips_diagram(np.zeros((3, 3)), -1)


class TestSignature:
    def test_action_invariance_exact_on_torus(self, rng):
        space = fm.torus(2)
        x = fm.random_configuration(space, 5, 11)
        h = fm.LabeledAction(np.zeros(2), rng.permutation(5))
        moved = fm.apply_action(h, x)
        a = fm.signature(x, (0, 1))
        b = fm.signature(moved, (0, 1))
        for k in (0, 1):
            assert a[k].points == b[k].points

    def test_rotation_invariance_on_sphere(self, rng):
        x = fm.random_configuration(fm.sphere2(), 5, 12)
        h = random_action(fm.sphere2(), 5, rng)
        a = fm.signature(x, (0, 1))
        b = fm.signature(fm.apply_action(h, x), (0, 1))
        for k in (0, 1):
            for (b1, d1), (b2, d2) in zip(a[k].points, b[k].points):
                assert abs(b1 - b2) <= 1e-9
                assert (math.isinf(d1) and math.isinf(d2)) or abs(d1 - d2) <= 1e-9

    def test_reflection_blindness(self):
        x, y = fm.sphere_reflection_pair(5, 3)
        a = fm.signature(x, (0, 1, 2))
        b = fm.signature(y, (0, 1, 2))
        for k in (0, 1, 2):
            assert a[k].points == b[k].points

    def test_empty_degrees_rejected(self):
        x = fm.random_configuration(fm.circle(), 3, 0)
        with pytest.raises(InvalidInputError):
            fm.signature(x, ())


class TestDiagramType:
    def test_points_sorted_and_validated(self):
        d = fm.PersistenceDiagram(0, ((0.0, math.inf), (0.0, 0.2)))
        assert d.points[0] == (0.0, 0.2)
        with pytest.raises(InvalidInputError):
            fm.PersistenceDiagram(0, ((0.5, 0.2),))
        with pytest.raises(InvalidInputError):
            fm.PersistenceDiagram(-1, ())

    def test_finite_and_essential_split(self):
        d = fm.PersistenceDiagram(0, ((0.0, 1.0), (0.0, math.inf)))
        assert d.finite_points == ((0.0, 1.0),)
        assert d.essential_births == (0.0,)
