"""Ambient metric spaces, their symmetry groups, and geodesics.

Three models are supported: the unit sphere acted on by rotations, the flat
m-torus acted on by translations, and the circle (the 1-torus, kept as its
own kind because it admits exact alignment algorithms downstream).

Conventions, fixed once and relied on everywhere else:

- sphere points are unit 3-vectors; rotations are unit quaternions [w,x,y,z]
- torus/circle points are angle vectors stored wrapped to [0, 2*pi)
- angle differences wrap to (-pi, pi], half-open at -pi, so the choice at
  exactly pi is deterministic
- every function here is pure and returns freshly allocated arrays
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateGeodesicError, InvalidInputError

TWO_PI = 2.0 * np.pi

SPHERE2 = "sphere2"
TORUS = "torus"
CIRCLE = "circle"

_KINDS = (SPHERE2, TORUS, CIRCLE)


@dataclass(frozen=True)
class AmbientSpace:
    """A model space together with its symmetry group.

    ``kind`` selects the model; ``m`` is the torus dimension (1 for the
    circle, unused for the sphere).
    """

    kind: str
    m: int = 0

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise InvalidInputError(f"unknown space kind {self.kind!r}")
        if self.kind == TORUS and self.m < 1:
            raise InvalidInputError("torus dimension must be >= 1")
        if self.kind == CIRCLE and self.m != 1:
            raise InvalidInputError("circle has exactly one coordinate")
        if self.kind == SPHERE2 and self.m != 0:
            raise InvalidInputError("sphere2 takes no dimension parameter")

    @property
    def point_dim(self) -> int:
        """Length of a point's coordinate array."""
        return 3 if self.kind == SPHERE2 else self.m

    @property
    def group_dim(self) -> int:
        """Length of a group element's coordinate array."""
        return 4 if self.kind == SPHERE2 else self.m

    @property
    def is_flat(self) -> bool:
        return self.kind in (TORUS, CIRCLE)

    @property
    def diameter(self) -> float:
        """Largest possible point distance in this space."""
        if self.kind == SPHERE2:
            return float(np.pi)
        return float(np.pi * np.sqrt(self.m))


def sphere2() -> AmbientSpace:
    return AmbientSpace(SPHERE2)


def torus(m: int) -> AmbientSpace:
    return AmbientSpace(TORUS, int(m))


def circle() -> AmbientSpace:
    return AmbientSpace(CIRCLE, 1)


# ---------------------------------------------------------------------------
# angle wrapping


def wrap_angle(x):
    """Wrap angle differences into (-pi, pi], half-open at -pi."""
    return np.pi - np.mod(np.pi - np.asarray(x, dtype=float), TWO_PI)


def canonical_angle(x):
    """Wrap angles into the canonical range [0, 2*pi)."""
    r = np.mod(np.asarray(x, dtype=float), TWO_PI)
    # np.mod can round tiny negative inputs up to exactly 2*pi
    return np.where(r >= TWO_PI, 0.0, r)


# ---------------------------------------------------------------------------
# quaternions ([w, x, y, z], unit norm)


def quat_identity() -> np.ndarray:
    return np.array([1.0, 0.0, 0.0, 0.0])


def quat_normalize(q) -> np.ndarray:
    q = np.asarray(q, dtype=float)
    norm = float(np.linalg.norm(q))
    if norm < 1e-12:
        raise InvalidInputError("cannot normalize a near-zero quaternion")
    return q / norm


def quat_mul(a, b) -> np.ndarray:
    """Hamilton product, renormalized so drift stays below 1e-12."""
    aw, ax, ay, az = a
    bw, bx, by, bz = b
    out = np.array(
        [
            aw * bw - ax * bx - ay * by - az * bz,
            aw * bx + ax * bw + ay * bz - az * by,
            aw * by - ax * bz + ay * bw + az * bx,
            aw * bz + ax * by - ay * bx + az * bw,
        ]
    )
    return quat_normalize(out)


def quat_conj(q) -> np.ndarray:
    q = np.asarray(q, dtype=float)
    return np.array([q[0], -q[1], -q[2], -q[3]])


def quat_rotate(q, v) -> np.ndarray:
    """Rotate a single 3-vector by a unit quaternion."""
    qv = np.asarray(q, dtype=float)[1:]
    w = float(q[0])
    v = np.asarray(v, dtype=float)
    t = 2.0 * np.cross(qv, v)
    return v + w * t + np.cross(qv, t)


def quat_to_matrix(q) -> np.ndarray:
    w, x, y, z = np.asarray(q, dtype=float)
    return np.array(
        [
            [1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y)],
            [2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x)],
            [2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y)],
        ]
    )


def quat_from_matrix(R) -> np.ndarray:
    """Unit quaternion of a rotation matrix (largest-component branch)."""
    R = np.asarray(R, dtype=float)
    tr = R[0, 0] + R[1, 1] + R[2, 2]
    if tr > 0:
        s = np.sqrt(tr + 1.0) * 2.0
        q = np.array(
            [0.25 * s, (R[2, 1] - R[1, 2]) / s, (R[0, 2] - R[2, 0]) / s, (R[1, 0] - R[0, 1]) / s]
        )
    elif R[0, 0] >= R[1, 1] and R[0, 0] >= R[2, 2]:
        s = np.sqrt(1.0 + R[0, 0] - R[1, 1] - R[2, 2]) * 2.0
        q = np.array(
            [(R[2, 1] - R[1, 2]) / s, 0.25 * s, (R[0, 1] + R[1, 0]) / s, (R[0, 2] + R[2, 0]) / s]
        )
    elif R[1, 1] >= R[2, 2]:
        s = np.sqrt(1.0 + R[1, 1] - R[0, 0] - R[2, 2]) * 2.0
        q = np.array(
            [(R[0, 2] - R[2, 0]) / s, (R[0, 1] + R[1, 0]) / s, 0.25 * s, (R[1, 2] + R[2, 1]) / s]
        )
    else:
        s = np.sqrt(1.0 + R[2, 2] - R[0, 0] - R[1, 1]) * 2.0
        q = np.array(
            [(R[1, 0] - R[0, 1]) / s, (R[0, 2] + R[2, 0]) / s, (R[1, 2] + R[2, 1]) / s, 0.25 * s]
        )
    return quat_normalize(q)


def quat_from_rotvec(w) -> np.ndarray:
    """Quaternion for a rotation vector (axis * angle), small-angle safe."""
    w = np.asarray(w, dtype=float)
    angle = float(np.linalg.norm(w))
    if angle < 1e-12:
        return quat_identity()
    half = 0.5 * angle
    return np.concatenate(([np.cos(half)], np.sin(half) / angle * w))


# ---------------------------------------------------------------------------
# validation


def validate_point(space: AmbientSpace, p) -> np.ndarray:
    """Return the canonical copy of a point, or raise InvalidInputError.

    Sphere vectors already within 1e-9 of unit norm are kept bit-for-bit,
    ones within 1e-6 are renormalized, anything further off is rejected.
    """
    p = np.asarray(p, dtype=float)
    if p.shape != (space.point_dim,):
        raise InvalidInputError(
            f"point of shape {p.shape} does not match {space.kind} (expects {space.point_dim})"
        )
    if not np.all(np.isfinite(p)):
        raise InvalidInputError("point has non-finite coordinates")
    if space.kind == SPHERE2:
        norm = float(np.linalg.norm(p))
        if abs(norm - 1.0) <= 1e-9:
            return p.copy()
        if abs(norm - 1.0) <= 1e-6:
            return p / norm
        raise InvalidInputError(f"sphere point has norm {norm!r}, beyond the 1e-6 tolerance")
    return canonical_angle(p)


def validate_group(space: AmbientSpace, g) -> np.ndarray:
    """Return the canonical copy of a group element for this space."""
    g = np.asarray(g, dtype=float)
    if g.shape != (space.group_dim,):
        raise InvalidInputError(
            f"group element of shape {g.shape} does not match {space.kind}"
        )
    if not np.all(np.isfinite(g)):
        raise InvalidInputError("group element has non-finite coordinates")
    if space.kind == SPHERE2:
        norm = float(np.linalg.norm(g))
        if abs(norm - 1.0) > 1e-6:
            raise InvalidInputError(f"quaternion has norm {norm!r}, expected 1")
        return g if abs(norm - 1.0) <= 1e-12 else g / norm
    return canonical_angle(g)


def group_identity(space: AmbientSpace) -> np.ndarray:
    if space.kind == SPHERE2:
        return quat_identity()
    return np.zeros(space.m)


def group_inverse(space: AmbientSpace, g) -> np.ndarray:
    if space.kind == SPHERE2:
        return quat_conj(g)
    return canonical_angle(-np.asarray(g, dtype=float))


# ---------------------------------------------------------------------------
# core operations


def point_distance(space: AmbientSpace, a, b) -> float:
    """Geodesic distance between two points of the space."""
    a = validate_point(space, a)
    b = validate_point(space, b)
    if space.kind == SPHERE2:
        # clamp absorbs rounding; the only deviation from arccos(<a, b>)
        return float(np.arccos(np.clip(np.dot(a, b), -1.0, 1.0)))
    return float(np.linalg.norm(wrap_angle(a - b)))


def paired_distances(space: AmbientSpace, P, Q) -> np.ndarray:
    """Coordinate-wise distances between two stacks of canonical points."""
    P = np.asarray(P, dtype=float)
    Q = np.asarray(Q, dtype=float)
    if space.kind == SPHERE2:
        return np.arccos(np.clip(np.einsum("ij,ij->i", P, Q), -1.0, 1.0))
    return np.linalg.norm(wrap_angle(P - Q), axis=-1)


def cross_distances(space: AmbientSpace, P, Q) -> np.ndarray:
    """All-pairs distance matrix between two stacks of canonical points."""
    P = np.asarray(P, dtype=float)
    Q = np.asarray(Q, dtype=float)
    if space.kind == SPHERE2:
        return np.arccos(np.clip(P @ Q.T, -1.0, 1.0))
    return np.linalg.norm(wrap_angle(P[:, None, :] - Q[None, :, :]), axis=-1)


def apply_group(space: AmbientSpace, g, p) -> np.ndarray:
    """Act on a point by a symmetry; the result is in canonical form."""
    g = validate_group(space, g)
    p = validate_point(space, p)
    if space.kind == SPHERE2:
        out = quat_rotate(g, p)
        return out / np.linalg.norm(out)
    return canonical_angle(p + g)


def apply_group_many(space: AmbientSpace, g, P) -> np.ndarray:
    """Act on a stack of canonical points (no re-validation)."""
    P = np.asarray(P, dtype=float)
    if space.kind == SPHERE2:
        out = P @ quat_to_matrix(g).T
        return out / np.linalg.norm(out, axis=1, keepdims=True)
    return canonical_angle(P + np.asarray(g, dtype=float))


def geodesic_point(space: AmbientSpace, a, b, t: float, tie_break: bool = False) -> np.ndarray:
    """Point at parameter t on the constant-speed minimizing geodesic a -> b.

    Antipodal sphere pairs and torus coordinates that wrap to exactly pi
    have no unique minimizer. By default those raise
    DegenerateGeodesicError; with ``tie_break=True`` the sphere rotates
    through a fixed reference axis and the torus takes the +pi
    representative.
    """
    if not 0.0 <= t <= 1.0:
        raise InvalidInputError(f"geodesic parameter t={t!r} outside [0, 1]")
    a = validate_point(space, a)
    b = validate_point(space, b)
    if space.kind == SPHERE2:
        return _sphere_geodesic(a, b, t, tie_break)
    d = wrap_angle(b - a)
    if np.any(np.abs(d) >= np.pi - 1e-12) and not tie_break:
        raise DegenerateGeodesicError(
            "some coordinate difference wraps to exactly pi; minimizing geodesic not unique",
            hint="tie_break=True interpolates through the +pi representative",
        )
    return canonical_angle(a + t * d)


def _sphere_geodesic(a, b, t, tie_break):
    ang = float(np.arccos(np.clip(np.dot(a, b), -1.0, 1.0)))
    if ang >= np.pi - 1e-9:
        if not tie_break:
            raise DegenerateGeodesicError(
                "antipodal sphere points have no unique geodesic",
                hint="tie_break=True rotates through a fixed reference axis",
            )
        # deterministic halfway direction: reference axis least aligned with a
        axis = np.zeros(3)
        axis[int(np.argmin(np.abs(a)))] = 1.0
        u = axis - np.dot(axis, a) * a
        u /= np.linalg.norm(u)
        out = np.cos(t * np.pi) * a + np.sin(t * np.pi) * u
        return out / np.linalg.norm(out)
    if ang < 1e-12:
        return a.copy()
    s = np.sin(ang)
    out = (np.sin((1.0 - t) * ang) * a + np.sin(t * ang) * b) / s
    return out / np.linalg.norm(out)


# ---------------------------------------------------------------------------
# seeded sampling, uniform for the natural invariant measure


def sample(space: AmbientSpace, seed: int, what: str = "point") -> np.ndarray:
    """Deterministic uniform draw of a point or group element.

    Points are uniform for the area (sphere) or Lebesgue (torus) measure;
    sphere group elements are Haar-uniform rotations obtained from uniform
    unit quaternions. The same (space, seed, what) always returns the same
    value.
    """
    rng = np.random.default_rng(seed)
    if what == "point":
        return sample_points(space, rng, 1)[0]
    if what == "group":
        return sample_group(space, rng)
    raise InvalidInputError(f"what={what!r} must be 'point' or 'group'")


def sample_points(space: AmbientSpace, rng: np.random.Generator, n: int) -> np.ndarray:
    """Draw n points from the invariant measure using the caller's rng."""
    if space.kind == SPHERE2:
        v = rng.normal(size=(n, 3))
        norms = np.linalg.norm(v, axis=1, keepdims=True)
        while np.any(norms < 1e-12):  # astronomically rare; keeps draws valid
            bad = norms[:, 0] < 1e-12
            v[bad] = rng.normal(size=(int(bad.sum()), 3))
            norms = np.linalg.norm(v, axis=1, keepdims=True)
        return v / norms
    return rng.uniform(0.0, TWO_PI, size=(n, space.m)) % TWO_PI


def sample_group(space: AmbientSpace, rng: np.random.Generator) -> np.ndarray:
    """Draw one group element from the invariant (Haar) measure."""
    if space.kind == SPHERE2:
        q = rng.normal(size=4)
        while np.linalg.norm(q) < 1e-12:
            q = rng.normal(size=4)
        return q / np.linalg.norm(q)
    return rng.uniform(0.0, TWO_PI, size=space.m) % TWO_PI
