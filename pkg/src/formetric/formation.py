"""Labeled configurations, the worst-case product distance, and group actions.

A configuration is an ordered tuple of points of one ambient space. The
combined action of a symmetry g and a relabeling sigma moves point i of the
input to slot sigma(i) of the output (so coordinate i of the result is
g applied to point sigma^-1(i)).

Permutations are index arrays; composition is fixed once as
(sigma o tau)(i) = sigma(tau(i)), i.e. ``composed = sigma[tau]``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidInputError
from .spaces import (
    AmbientSpace,
    apply_group_many,
    cross_distances,
    paired_distances,
    sample_points,
    validate_group,
    validate_point,
)


@dataclass(frozen=True)
class Configuration:
    """An ordered n-tuple of points of one ambient space (n >= 1)."""

    space: AmbientSpace
    points: np.ndarray

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float)
        if pts.ndim != 2 or pts.shape[0] < 1:
            raise InvalidInputError("points must be a non-empty (n, dim) array")
        canon = np.stack([validate_point(self.space, p) for p in pts])
        canon.setflags(write=False)
        object.__setattr__(self, "points", canon)

    @property
    def n(self) -> int:
        return int(self.points.shape[0])

    def __eq__(self, other):
        if not isinstance(other, Configuration):
            return NotImplemented
        return self.space == other.space and np.array_equal(self.points, other.points)


def random_configuration(space: AmbientSpace, n: int, seed: int) -> Configuration:
    """Seeded configuration with points drawn from the invariant measure."""
    if n < 1:
        raise InvalidInputError("need at least one agent")
    rng = np.random.default_rng(seed)
    return Configuration(space, sample_points(space, rng, n))


@dataclass(frozen=True)
class DistanceMatrix:
    """Symmetric nonnegative matrix with zero diagonal.

    Symmetry is exact by construction: only the upper triangle of the input
    is kept and mirrored. Pass ``verify=True`` to also check the triangle
    inequality within 1e-9.
    """

    values: np.ndarray
    verify: bool = field(default=False, compare=False)

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        if v.ndim != 2 or v.shape[0] != v.shape[1]:
            raise InvalidInputError("distance matrix must be square")
        if not np.all(np.isfinite(v)):
            raise InvalidInputError("distance matrix has non-finite entries")
        upper = np.triu(v, k=1)
        if np.any(upper < 0):
            raise InvalidInputError("distances must be nonnegative")
        sym = upper + upper.T
        if self.verify:
            # through[i, j] = min_k d[i, k] + d[k, j]
            through = np.min(sym[:, None, :] + sym[None, :, :], axis=2)
            if np.any(sym > through + 1e-9):
                raise InvalidInputError("triangle inequality violated beyond 1e-9")
        sym.setflags(write=False)
        object.__setattr__(self, "values", sym)

    @property
    def n(self) -> int:
        return int(self.values.shape[0])

    def __eq__(self, other):
        if not isinstance(other, DistanceMatrix):
            return NotImplemented
        return np.array_equal(self.values, other.values)


@dataclass(frozen=True)
class LabeledAction:
    """A symmetry g paired with a relabeling permutation sigma."""

    g: np.ndarray
    sigma: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "sigma", validate_permutation(self.sigma))
        g = np.asarray(self.g, dtype=float)
        g.setflags(write=False)
        object.__setattr__(self, "g", g)


def validate_permutation(sigma, n: int | None = None) -> np.ndarray:
    sigma = np.asarray(sigma)
    if sigma.ndim != 1 or not np.issubdtype(sigma.dtype, np.integer):
        raise InvalidInputError("permutation must be a 1-d integer array")
    if n is not None and sigma.shape[0] != n:
        raise InvalidInputError(f"permutation of length {sigma.shape[0]} does not match n={n}")
    check = np.zeros(sigma.shape[0], dtype=bool)
    check[sigma] = True  # raises IndexError on out-of-range values
    if not check.all():
        raise InvalidInputError("permutation is not a bijection")
    out = sigma.astype(np.int64).copy()
    out.setflags(write=False)
    return out


def invert_permutation(sigma: np.ndarray) -> np.ndarray:
    inv = np.empty_like(sigma)
    inv[sigma] = np.arange(sigma.shape[0])
    return inv


def _check_comparable(x: Configuration, y: Configuration):
    if x.space != y.space:
        raise InvalidInputError("configurations live in different spaces")
    if x.n != y.n:
        raise InvalidInputError(f"agent counts differ ({x.n} vs {y.n})")


def chebyshev_distance(x: Configuration, y: Configuration) -> float:
    """Worst coordinate-wise distance max_i d(x_i, y_i)."""
    _check_comparable(x, y)
    return float(np.max(paired_distances(x.space, x.points, y.points)))


def induced_distance_matrix(x: Configuration, verify: bool = False) -> DistanceMatrix:
    """The n-point metric space of pairwise distances between the agents.

    Invariant under any labeled action up to conjugating rows and columns
    by the permutation, which is what makes it the input to persistence.
    """
    return DistanceMatrix(cross_distances(x.space, x.points, x.points), verify=verify)


def apply_action(h: LabeledAction, x: Configuration) -> Configuration:
    """Coordinate i of the result is g applied to x_{sigma^-1(i)}."""
    sigma = validate_permutation(h.sigma, x.n)
    g = validate_group(x.space, h.g)
    permuted = x.points[invert_permutation(sigma)]
    return Configuration(x.space, apply_group_many(x.space, g, permuted))


def alignment_cost(g, sigma, x: Configuration, y: Configuration) -> float:
    """Feasible alignment cost max_i d(g x_i, y_{sigma(i)}).

    By definition an upper bound on the formation distance between the
    orbits of x and y, whatever (g, sigma) is.
    """
    _check_comparable(x, y)
    sigma = validate_permutation(sigma, x.n)
    g = validate_group(x.space, g)
    moved = apply_group_many(x.space, g, x.points)
    return float(np.max(paired_distances(x.space, moved, y.points[sigma])))


def has_collision(x: Configuration, tol: float = 1e-9) -> bool:
    """True iff some pair of distinct agents sits within tol of each other."""
    if tol < 0:
        raise InvalidInputError("collision tolerance must be >= 0")
    if x.n == 1:
        return False
    dm = cross_distances(x.space, x.points, x.points)
    iu = np.triu_indices(x.n, k=1)
    return bool(np.min(dm[iu]) <= tol)
