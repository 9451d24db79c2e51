"""Vietoris-Rips persistence of finite metric spaces.

Degree 0 has a dedicated minimum-spanning-tree route (component merges are
exactly the MST edges, so the finite deaths are the edge lengths halved).
General degrees go through boundary-matrix column reduction over the
two-element field; the two routes are cross-checked in the test suite.

Filtration convention, fixed here and relied on by every stability bound
downstream: a simplex enters at HALF its diameter, so the scale parameter
plays the role of a radius. Doubling every matrix entry doubles every
finite coordinate of every diagram.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .errors import InvalidInputError, UnsupportedInstanceError
from .formation import Configuration, DistanceMatrix, induced_distance_matrix

# complex sizes explode combinatorially; guards keep requests honest
_DEFAULT_GUARDS = {0: 64, 1: 24, 2: 16}
_FALLBACK_GUARD = 12


@dataclass(frozen=True)
class PersistenceDiagram:
    """Multiset of (birth, death) pairs for one homology degree.

    Deaths may be math.inf (essential classes). Points are kept sorted so
    multiset equality is plain tuple equality.
    """

    degree: int
    points: tuple

    def __post_init__(self):
        if self.degree < 0:
            raise InvalidInputError("homology degree must be >= 0")
        pts = []
        for b, d in self.points:
            b = float(b)
            d = float(d)
            if b < 0 or d < b:
                raise InvalidInputError(f"bad diagram point ({b}, {d})")
            pts.append((b, d))
        object.__setattr__(self, "points", tuple(sorted(pts)))

    @property
    def finite_points(self) -> tuple:
        return tuple(p for p in self.points if math.isfinite(p[1]))

    @property
    def essential_births(self) -> tuple:
        return tuple(p[0] for p in self.points if math.isinf(p[1]))


@dataclass(frozen=True)
class MstSummary:
    """Edges (i, j, length) of the deterministic minimum spanning tree."""

    edges: tuple

    @property
    def lengths(self) -> tuple:
        return tuple(e[2] for e in self.edges)

    @property
    def total_weight(self) -> float:
        return float(sum(self.lengths))


def _as_matrix(dm) -> np.ndarray:
    if isinstance(dm, DistanceMatrix):
        return dm.values
    return DistanceMatrix(np.asarray(dm, dtype=float)).values


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, a):
        while self.parent[a] != a:
            self.parent[a] = self.parent[self.parent[a]]
            a = self.parent[a]
        return a

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[rb] = ra
        return True


def mst(dm) -> MstSummary:
    """Kruskal over edges sorted by (length, i, j); deterministic tree."""
    d = _as_matrix(dm)
    n = d.shape[0]
    edges = sorted(
        ((float(d[i, j]), i, j) for i in range(n) for j in range(i + 1, n)),
    )
    uf = _UnionFind(n)
    tree = []
    for length, i, j in edges:
        if uf.union(i, j):
            tree.append((i, j, length))
            if len(tree) == n - 1:
                break
    return MstSummary(tuple(tree))


def h0_diagram(dm) -> PersistenceDiagram:
    """Degree-0 diagram: deaths are the MST edge lengths halved, plus one
    essential class born at zero."""
    summary = mst(dm)
    points = [(0.0, length / 2.0) for length in summary.lengths]
    points.append((0.0, math.inf))
    return PersistenceDiagram(0, tuple(points))


def rips_diagram(dm, k: int, max_n: int | None = None) -> PersistenceDiagram:
    """Degree-k diagram by column reduction over the two-element field.

    Simplices up to dimension k+1 enter at half their diameter and are
    ordered by (value, dimension, vertex tuple) so pairings are
    deterministic. Zero-persistence pairs are dropped.
    """
    if k < 0:
        raise InvalidInputError("homology degree must be >= 0")
    d = _as_matrix(dm)
    n = d.shape[0]
    guard = max_n if max_n is not None else _DEFAULT_GUARDS.get(k, _FALLBACK_GUARD)
    if n > guard:
        raise UnsupportedInstanceError(
            f"n={n} exceeds the degree-{k} complex guard ({guard}); pass max_n to override"
        )

    simplices = []
    for dim in range(0, min(k + 2, n)):
        for verts in combinations(range(n), dim + 1):
            if dim == 0:
                value = 0.0
            else:
                value = max(d[a, b] for a, b in combinations(verts, 2)) / 2.0
            simplices.append((value, dim, verts))
    simplices.sort()
    index_of = {s[2]: i for i, s in enumerate(simplices)}

    columns: list[set | None] = [None] * len(simplices)
    low_to_col: dict[int, int] = {}
    death_of: dict[int, int] = {}
    for j, (value, dim, verts) in enumerate(simplices):
        if dim == 0:
            columns[j] = set()
            continue
        col = {index_of[face] for face in combinations(verts, dim)}
        while col:
            low = max(col)
            other = low_to_col.get(low)
            if other is None:
                break
            col ^= columns[other]
        columns[j] = col
        if col:
            low = max(col)
            low_to_col[low] = j
            death_of[low] = j

    points = []
    for i, (value, dim, verts) in enumerate(simplices):
        if dim != k:
            continue
        j = death_of.get(i)
        if j is not None:
            death = simplices[j][0]
            if death > value:
                points.append((value, death))
        elif not columns[i]:
            points.append((value, math.inf))
    return PersistenceDiagram(k, tuple(points))


def signature(x: Configuration, degrees) -> dict[int, PersistenceDiagram]:
    """Per-degree diagrams of the induced inter-agent metric space.

    Invariant under any labeled action of the configuration because the
    induced matrix is (exactly on the torus, to rounding on the sphere).
    """
    degrees = sorted(set(int(k) for k in degrees))
    if not degrees:
        raise InvalidInputError("need at least one homology degree")
    dm = induced_distance_matrix(x)
    return {k: rips_diagram(dm, k) for k in degrees}
