"""Solvers for the orbit alignment distance between two configurations.

For a fixed symmetry g the inner relabeling problem is an exact bottleneck
assignment, so every solver here alternates between moving g and re-solving
the assignment. What differs per space is how g is searched:

- circle: the objective is piecewise linear in the translation with slopes
  in {-1, 0, +1}, so the minimum sits on a finite candidate set (all
  single-pair zero translations, their pairwise midpoints, and the
  antipodal midpoints); evaluating the whole set is exact
- torus(m >= 2): multi-start coordinate descent from the n^2 single-pair
  translations plus seeded uniform starts; certified upper bound
- sphere: multi-start local descent over rotations from a deterministic
  low-discrepancy quaternion grid plus data-driven pair-frame starts;
  certified upper bound (no known finite candidate set)

Every result is a feasible (g, sigma) with its recomputed cost, hence a
sound upper bound regardless of how good the search was. An exhaustive
translation-grid oracle (compiled) is provided for independent
verification on small circle/torus instances.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations

import numpy as np

from . import _gridkernels
from .assignment import assignment_at, bottleneck_assignment, bottleneck_value
from .errors import InvalidInputError, UnsupportedInstanceError
from .formation import (
    Configuration,
    _check_comparable,
    alignment_cost,
    induced_distance_matrix,
    validate_permutation,
)
from .spaces import (
    CIRCLE,
    SPHERE2,
    TORUS,
    TWO_PI,
    apply_group_many,
    canonical_angle,
    cross_distances,
    quat_from_matrix,
    quat_from_rotvec,
    quat_identity,
    quat_mul,
    quat_to_matrix,
    wrap_angle,
)

_ORACLE_MAX_N = 6
_BRUTE_PERM_MAX_N = 7


@dataclass(frozen=True)
class SolverOptions:
    """Knobs for the heuristic solvers and the verification oracle."""

    restarts: int = 64
    refine_iters: int = 30
    seed: int = 0
    grid_resolution: float = 1e-3
    tolerance: float = 1e-6

    def __post_init__(self):
        if self.restarts < 1:
            raise InvalidInputError("restarts must be >= 1")
        if self.refine_iters < 0:
            raise InvalidInputError("refine_iters must be >= 0")
        if self.grid_resolution <= 0 or self.tolerance <= 0:
            raise InvalidInputError("grid_resolution and tolerance must be positive")


@dataclass(frozen=True)
class AlignmentResult:
    """A feasible alignment (g, sigma) and its certified worst-case cost.

    ``upper_bound`` is recomputed from (g, sigma) at construction, so it is
    a sound upper bound on the orbit distance whatever produced the pair.
    ``exact`` is set only by the circle solver.
    """

    upper_bound: float
    g: np.ndarray
    sigma: np.ndarray
    exact: bool
    method: str
    evaluations: int


def certify(
    x: Configuration,
    y: Configuration,
    g,
    sigma,
    exact: bool,
    method: str,
    evaluations: int,
) -> AlignmentResult:
    """Build a result whose bound is the recomputed cost of (g, sigma)."""
    cost = alignment_cost(g, sigma, x, y)
    g = np.asarray(g, dtype=float).copy()
    g.setflags(write=False)
    sigma = validate_permutation(sigma, x.n)
    return AlignmentResult(cost, g, sigma, exact, method, int(evaluations))


def formation_distance(
    x: Configuration, y: Configuration, opts: SolverOptions | None = None
) -> AlignmentResult:
    """Best found alignment between the orbits of x and y.

    Dispatches to the exact circle solver or to the multi-start heuristics;
    for the returned g the relabeling is always the exact assignment
    optimum, so the bound is the true minimum over sigma at that g.
    """
    _check_comparable(x, y)
    opts = opts or SolverOptions()
    if x.space.kind == CIRCLE:
        return circle_exact_distance(x, y)
    if x.space.kind == TORUS:
        return torus_multistart(x, y, opts)
    return so3_multistart(x, y, opts)


# ---------------------------------------------------------------------------
# circle: exact minimization over the finite candidate set


def circle_exact_distance(x: Configuration, y: Configuration) -> AlignmentResult:
    """Exact orbit distance on the circle.

    The translation objective t -> min_sigma max_i d(x_i + t, y_sigma(i))
    is piecewise linear with slopes in {-1, 0, +1}: its local minima are
    tent bottoms (single-pair zeros) or crossings of an up and a down
    slope (pairwise midpoints and their antipodes). All candidates are
    evaluated; ties resolve to the smallest translation in [0, 2*pi).
    """
    _check_comparable(x, y)
    if x.space.kind != CIRCLE:
        raise InvalidInputError("circle_exact_distance requires the circle model")
    n = x.n
    zeros = canonical_angle(y.points[None, :, 0] - x.points[:, None, 0])
    flat = np.unique(zeros.ravel())
    iu, ju = np.triu_indices(flat.size)
    mids = canonical_angle((flat[iu] + flat[ju]) / 2.0)
    cands = np.unique(np.concatenate([flat, mids, canonical_angle(mids + np.pi)]))

    # cost tensor and a per-candidate lower bound used to prune exact solves
    tensor = np.abs(wrap_angle(zeros.ravel()[None, :] - cands[:, None]))
    tensor = tensor.reshape(cands.size, n, n)
    lower = np.maximum(
        tensor.min(axis=2).max(axis=1), tensor.min(axis=1).max(axis=1)
    )
    order = np.lexsort((cands, lower))

    best_val = np.inf
    best_t = None
    evaluations = 0
    for idx in order:
        if lower[idx] > best_val:
            break  # sorted by bound: nothing later can tie or improve
        value = bottleneck_value(tensor[idx])
        evaluations += 1
        t = float(cands[idx])
        if value < best_val or (value == best_val and t < best_t):
            best_val = value
            best_t = t
    value, sigma = bottleneck_assignment(tensor[int(np.flatnonzero(cands == best_t)[0])])
    return certify(
        x, y, np.array([best_t]), sigma, True, "circle-candidate-exact", evaluations + 1
    )


# ---------------------------------------------------------------------------
# torus: multi-start coordinate descent


def torus_multistart(
    x: Configuration, y: Configuration, opts: SolverOptions | None = None
) -> AlignmentResult:
    """Certified upper bound on the torus by refined multi-start.

    Starts are the n^2 single-pair translations followed by opts.restarts
    uniform seeds (drawn one at a time, so a larger restart budget extends
    rather than reshuffles the candidate list and the best value is
    monotone in restarts). Each start is refined by per-coordinate
    golden-section descent against the assignment-optimized objective.
    """
    _check_comparable(x, y)
    if x.space.kind != TORUS:
        raise InvalidInputError("torus_multistart requires a torus model")
    opts = opts or SolverOptions()
    space, m, n = x.space, x.space.m, x.n
    evals = 0

    def objective(g):
        nonlocal evals
        evals += 1
        moved = apply_group_many(space, g, x.points)
        return bottleneck_value(cross_distances(space, moved, y.points))

    starts = [
        canonical_angle(y.points[j] - x.points[i]) for i in range(n) for j in range(n)
    ]
    rng = np.random.default_rng(opts.seed)
    for _ in range(opts.restarts):
        starts.append(rng.uniform(0.0, TWO_PI, size=m) % TWO_PI)

    best_val = np.inf
    best_g = starts[0]
    for g0 in starts:
        g, value = _refine_translation(objective, np.asarray(g0, float), m, opts)
        if value < best_val:
            best_val = value
            best_g = g

    cost = cross_distances(space, apply_group_many(space, best_g, x.points), y.points)
    _, sigma = bottleneck_assignment(cost)
    return certify(x, y, best_g, sigma, False, "torus-multistart", evals)


def _refine_translation(objective, g0, m, opts):
    g = g0.copy()
    value = objective(g)
    for it in range(opts.refine_iters):
        window = (np.pi / 2.0) * (0.5**it)
        improved = False
        for c in range(m):
            s, v = _golden_section(
                lambda s: objective(_with_coord(g, c, s)), g[c] - window, g[c] + window
            )
            if v < value - 1e-15:
                g = _with_coord(g, c, s)
                value = v
                improved = True
        if not improved or value < 1e-14:
            break
    return g, value


def _with_coord(g, c, s):
    out = g.copy()
    out[c] = s
    return canonical_angle(out)


def _golden_section(fn, a, b, iters=12):
    """Best sampled point of a golden-section scan of [a, b]."""
    inv_phi = (np.sqrt(5.0) - 1.0) / 2.0
    c = b - inv_phi * (b - a)
    d = a + inv_phi * (b - a)
    fc, fd = fn(c), fn(d)
    best_x, best_f = (c, fc) if fc <= fd else (d, fd)
    for _ in range(iters):
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - inv_phi * (b - a)
            fc = fn(c)
        else:
            a, c, fc = c, d, fd
            d = a + inv_phi * (b - a)
            fd = fn(d)
        if fc <= fd and fc < best_f:
            best_x, best_f = c, fc
        elif fd < fc and fd < best_f:
            best_x, best_f = d, fd
    return best_x, best_f


# ---------------------------------------------------------------------------
# sphere: multi-start rotation descent


def so3_multistart(
    x: Configuration, y: Configuration, opts: SolverOptions | None = None
) -> AlignmentResult:
    """Certified upper bound over rotations.

    Starts: the identity, data-driven rotations mapping a pair frame of x
    onto pair frames of y (midpoint and tangent aligned, which is already
    optimal for two-agent configurations), and a super-Fibonacci spiral of
    opts.restarts quaternions. Starts that improve the incumbent are
    refined by subgradient descent in an axis-angle chart, re-solving the
    assignment after every accepted rotation update.
    """
    _check_comparable(x, y)
    if x.space.kind != SPHERE2:
        raise InvalidInputError("so3_multistart requires the sphere model")
    opts = opts or SolverOptions()
    space = x.space
    evals = 0

    def objective(q):
        nonlocal evals
        evals += 1
        moved = x.points @ quat_to_matrix(q).T
        return bottleneck_value(np.arccos(np.clip(moved @ y.points.T, -1.0, 1.0)))

    starts = [quat_identity()]
    starts.extend(_pair_frame_starts(x.points, y.points))
    starts.extend(_super_fibonacci(opts.restarts))

    best_val = np.inf
    best_q = starts[0]
    for q0 in starts:
        v0 = objective(q0)
        if v0 >= best_val:
            continue  # refinement cannot certify anything better than its start region
        best_val, best_q = v0, q0
        q, v = _refine_rotation(objective, x.points, y.points, q0, v0, opts)
        if v < best_val:
            best_val, best_q = v, q

    cost = np.arccos(np.clip((x.points @ quat_to_matrix(best_q).T) @ y.points.T, -1.0, 1.0))
    _, sigma = bottleneck_assignment(cost)
    return certify(x, y, best_q, sigma, False, "so3-multistart", evals)


def _super_fibonacci(count):
    """Deterministic low-discrepancy quaternions (spiral on the 3-sphere)."""
    phi = np.sqrt(2.0)
    psi = 1.533751168755204288118041
    out = []
    for i in range(count):
        s = i + 0.5
        r = np.sqrt(s / count)
        big_r = np.sqrt(1.0 - s / count)
        alpha = TWO_PI * s / phi
        beta = TWO_PI * s / psi
        out.append(
            np.array(
                [
                    r * np.sin(alpha),
                    r * np.cos(alpha),
                    big_r * np.sin(beta),
                    big_r * np.cos(beta),
                ]
            )
        )
    return out


def _midpoint_frame(p, q):
    """Orthonormal frame (midpoint, tangent toward q, normal); None if degenerate."""
    dot = float(np.clip(np.dot(p, q), -1.0, 1.0))
    ang = float(np.arccos(dot))
    if ang < 1e-9 or ang > np.pi - 1e-9:
        return None
    mid = p + q
    mid /= np.linalg.norm(mid)
    u = q - np.dot(q, mid) * mid
    u /= np.linalg.norm(u)
    return np.column_stack([mid, u, np.cross(mid, u)])


def _pair_frame_starts(X, Y, cap=24):
    n = X.shape[0]
    if n == 1:
        axis = np.cross(X[0], Y[0])
        norm = float(np.linalg.norm(axis))
        if norm < 1e-12:
            return [quat_identity()]
        ang = float(np.arccos(np.clip(np.dot(X[0], Y[0]), -1.0, 1.0)))
        return [quat_from_rotvec(axis / norm * ang)]
    gaps = np.arccos(np.clip(X @ X.T, -1.0, 1.0))
    i0, j0 = np.unravel_index(np.argmax(gaps), gaps.shape)
    frame_x = _midpoint_frame(X[i0], X[j0])
    if frame_x is None:
        return []
    out = []
    for k in range(n):
        for l in range(n):
            if k == l:
                continue
            frame_y = _midpoint_frame(Y[k], Y[l])
            if frame_y is None:
                continue
            out.append(quat_from_matrix(frame_y @ frame_x.T))
            if len(out) >= cap:
                return out
    return out


def _refine_rotation(objective, X, Y, q0, v0, opts):
    q, value = q0, v0
    n = X.shape[0]
    for _ in range(opts.refine_iters):
        moved = X @ quat_to_matrix(q).T
        cost = np.arccos(np.clip(moved @ Y.T, -1.0, 1.0))
        sigma = assignment_at(cost, value)
        if sigma is None:  # value drifted below feasibility by rounding
            sigma = bottleneck_assignment(cost)[1]
        per_agent = cost[np.arange(n), sigma]
        band = max(1e-9, 1e-3 * value)
        active = per_agent >= value - band
        targets = Y[sigma[active]]
        grad = np.zeros(3)
        h = 1e-6
        for axis in range(3):
            probe = np.zeros(3)
            probe[axis] = h
            up = _mean_cost(X[active], targets, quat_mul(quat_from_rotvec(probe), q))
            probe[axis] = -h
            down = _mean_cost(X[active], targets, quat_mul(quat_from_rotvec(probe), q))
            grad[axis] = (up - down) / (2.0 * h)
        norm = float(np.linalg.norm(grad))
        if norm < 1e-12:
            break
        direction = -grad / norm
        step = max(value, 1e-2)
        improved = False
        while step > 1e-13:
            q_try = quat_mul(quat_from_rotvec(step * direction), q)
            v_try = objective(q_try)
            if v_try < value - 1e-15:
                q, value = q_try, v_try
                improved = True
                break
            step *= 0.5
        if not improved or value < 1e-12:
            break
    return q, value


def _mean_cost(Xa, Ya, q):
    moved = Xa @ quat_to_matrix(q).T
    return float(
        np.mean(np.arccos(np.clip(np.einsum("ij,ij->i", moved, Ya), -1.0, 1.0)))
    )


# ---------------------------------------------------------------------------
# independent verification oracle


def grid_oracle(x: Configuration, y: Configuration, resolution: float) -> float:
    """Exhaustive translation-grid minimum with brute-force relabelings.

    Supports the circle and tori up to m=2 with n <= 6. The result is the
    exact minimum over the grid {k * resolution per axis}; since the
    objective is 1-Lipschitz in the translation it lies within
    resolution * sqrt(m) of the true orbit distance.
    """
    _check_comparable(x, y)
    if resolution <= 0:
        raise InvalidInputError("resolution must be positive")
    space = x.space
    if space.kind == SPHERE2 or space.m > 2:
        raise UnsupportedInstanceError("grid oracle supports the circle and torus m <= 2")
    if x.n > _ORACLE_MAX_N:
        raise UnsupportedInstanceError(
            f"grid oracle is capped at n <= {_ORACLE_MAX_N} (got n={x.n})"
        )
    perms = np.array(list(permutations(range(x.n))), dtype=np.int64)
    npoints = int(np.ceil(TWO_PI / resolution))
    if space.m == 1:
        diffs = canonical_angle(y.points[None, :, 0] - x.points[:, None, 0])
        return float(
            _gridkernels.circle_grid_min(diffs, perms, float(resolution), npoints)
        )
    dx = canonical_angle(y.points[None, :, 0] - x.points[:, None, 0])
    dy = canonical_angle(y.points[None, :, 1] - x.points[:, None, 1])
    return float(
        _gridkernels.torus2_grid_min(dx, dy, perms, float(resolution), npoints)
    )


def brute_sigma_distance(x: Configuration, y: Configuration, g) -> float:
    """min over all n! relabelings of the alignment cost at a fixed g.

    Capped at n <= 7; oracle building block, loudly refuses larger inputs.
    """
    _check_comparable(x, y)
    if x.n > _BRUTE_PERM_MAX_N:
        raise UnsupportedInstanceError(
            f"permutation brute force is capped at n <= {_BRUTE_PERM_MAX_N}"
        )
    moved = apply_group_many(x.space, np.asarray(g, float), x.points)
    cost = cross_distances(x.space, moved, y.points)
    best = np.inf
    for sigma in permutations(range(x.n)):
        best = min(best, float(np.max(cost[np.arange(x.n), sigma])))
    return best


def gh_correspondence_distortion(x: Configuration, y: Configuration, sigma) -> float:
    """Distortion of the correspondence that pairs i with sigma(i).

    Computed from the two induced matrices: max |d_x(i,j) - d_y(s(i),s(j))|.
    Half of it lower-bounds the metric-space (Gromov-Hausdorff) distance,
    and it is at most twice any feasible alignment cost using sigma.
    """
    _check_comparable(x, y)
    sigma = validate_permutation(sigma, x.n)
    dx = induced_distance_matrix(x).values
    dy = induced_distance_matrix(y).values
    return float(np.max(np.abs(dx - dy[np.ix_(sigma, sigma)])))
