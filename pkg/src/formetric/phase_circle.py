"""Half-circle phase formations: anchored lifts, gap vectors, and the
conditional two-sided bound relating degree-0 persistence to the exact
circle distance.

When all phases fit in an open arc shorter than a half circle, wrap-around
is inactive and the configuration reduces to points on a line. The sorted,
minimum-anchored lift is then a canonical representative, its consecutive
gaps halved are exactly the finite degree-0 deaths, and under a margin
condition on the gaps the degree-0 bottleneck distance controls the orbit
distance from both sides.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .alignment import circle_exact_distance
from .diagrams import bottleneck_distance
from .errors import (
    DegenerateConfigurationError,
    InvalidInputError,
    NotSemicircleError,
)
from .formation import Configuration
from .rips import signature
from .spaces import CIRCLE, TWO_PI, canonical_angle

_COLLISION_TOL = 1e-12


@dataclass(frozen=True)
class AnchoredLift:
    """Sorted real-angle representative with the minimum subtracted.

    thetas[0] is exactly 0, values are strictly increasing, and the last
    one stays below pi (open half circle).
    """

    thetas: tuple

    def __post_init__(self):
        t = tuple(float(v) for v in self.thetas)
        if not t:
            raise InvalidInputError("lift needs at least one angle")
        if t[0] != 0.0:
            raise InvalidInputError("lift must be anchored at 0")
        if any(b - a <= 0 for a, b in zip(t, t[1:])):
            raise InvalidInputError("lift angles must be strictly increasing")
        if t[-1] >= np.pi - 1e-12:
            raise InvalidInputError("lift must stay inside the open half circle")
        object.__setattr__(self, "thetas", t)

    @property
    def n(self) -> int:
        return len(self.thetas)


@dataclass(frozen=True)
class GapLabeling:
    """Disjoint open gap slots with margin parameters.

    Every slot starts at rho or later and any two slots are separated by at
    least 2*gamma; both conditions are checked at construction.
    """

    intervals: tuple
    rho: float
    gamma: float

    def __post_init__(self):
        if self.rho <= 0 or self.gamma <= 0:
            raise InvalidInputError("rho and gamma must be positive")
        iv = []
        for idx, (lo, hi) in enumerate(self.intervals):
            lo, hi = float(lo), float(hi)
            if not (0.0 < lo < hi < np.pi):
                raise InvalidInputError(f"interval {idx} must satisfy 0 < lo < hi < pi")
            if lo < self.rho:
                raise InvalidInputError(f"interval {idx} starts below rho={self.rho}")
            iv.append((lo, hi))
        for a in range(len(iv)):
            for b in range(a + 1, len(iv)):
                gap = max(iv[a][0] - iv[b][1], iv[b][0] - iv[a][1])
                if gap < 2.0 * self.gamma - 1e-12:  # dust slack so gap == 2*gamma passes
                    raise InvalidInputError(
                        f"intervals {a} and {b} are closer than 2*gamma={2 * self.gamma}"
                    )
        object.__setattr__(self, "intervals", tuple(iv))

    @property
    def gate(self) -> float:
        """Margin threshold: the inverse bound needs epsilon strictly below it."""
        return min(self.rho, self.gamma) / 4.0


@dataclass(frozen=True)
class GapLabelingReport:
    ok: bool
    gaps: tuple
    memberships: tuple
    violations: tuple


@dataclass(frozen=True)
class InverseBoundReport:
    """Outcome of the conditional two-sided check for one pair.

    When ``hypothesis_ok`` is False no claim is made (``reason`` says why);
    otherwise the distance sandwich and the per-gap control are asserted
    and ``passed`` reports whether both held.
    """

    n: int
    epsilon: float
    gate: float
    hypothesis_ok: bool
    reason: str | None
    distance: float | None = None
    bound: float | None = None
    stability_ok: bool | None = None
    distance_ok: bool | None = None
    gap_deltas: tuple | None = None
    gap_control_ok: bool | None = None

    @property
    def passed(self) -> bool:
        if not self.hypothesis_ok:
            return True  # vacuous: the theorem makes no claim here
        return bool(self.stability_ok and self.distance_ok and self.gap_control_ok)


def semicircle_support(x: Configuration) -> AnchoredLift | None:
    """Anchored lift of a circle configuration, or None if it needs more
    than an open half circle.

    The largest circular gap between consecutive sorted phases must exceed
    pi (an enclosing arc of length exactly pi does not qualify). Duplicate
    phases within 1e-12 are rejected since the lift must be strictly
    increasing.
    """
    if x.space.kind != CIRCLE:
        raise InvalidInputError("semicircle support is defined for circle configurations")
    angles = np.sort(x.points[:, 0])
    n = angles.size
    if n == 1:
        return AnchoredLift((0.0,))
    gaps = np.diff(np.concatenate([angles, [angles[0] + TWO_PI]]))
    if np.any(gaps <= _COLLISION_TOL):
        raise DegenerateConfigurationError(
            "two phases coincide within 1e-12; the lift is undefined"
        )
    widest = int(np.argmax(gaps))
    if gaps[widest] <= np.pi:
        return None
    start = angles[(widest + 1) % n]
    lifted = np.sort(canonical_angle(angles - start))
    if lifted[-1] >= np.pi - 1e-12:  # enclosing arc of essentially length pi
        return None
    return AnchoredLift(tuple(lifted))


def gap_vector(lift: AnchoredLift) -> np.ndarray:
    """Consecutive differences of the lift; their sum stays below pi."""
    return np.diff(np.asarray(lift.thetas))


def reconstruct_from_gaps(gaps) -> AnchoredLift:
    """Anchored lift with the given consecutive gaps (telescoping sums)."""
    gaps = np.asarray(gaps, dtype=float)
    if gaps.size and np.any(gaps <= 0):
        raise InvalidInputError("gaps must be positive")
    if float(gaps.sum()) >= np.pi:
        raise NotSemicircleError("gap sum reaches the half circle; no valid lift")
    return AnchoredLift((0.0, *np.cumsum(gaps)))


def check_gap_labeling(x: Configuration, labeling: GapLabeling) -> GapLabelingReport:
    """Membership of each consecutive gap in its designated slot."""
    lift = semicircle_support(x)
    if lift is None:
        raise NotSemicircleError("configuration is not supported inside a half circle")
    gaps = gap_vector(lift)
    if gaps.size != len(labeling.intervals):
        raise InvalidInputError(
            f"labeling has {len(labeling.intervals)} slots but the shape has {gaps.size} gaps"
        )
    memberships = []
    violations = []
    for i, (g, (lo, hi)) in enumerate(zip(gaps, labeling.intervals)):
        inside = lo < g < hi
        memberships.append(inside)
        if not inside:
            violations.append(f"gap {i} = {g:.6g} outside ({lo:.6g}, {hi:.6g})")
    return GapLabelingReport(
        ok=not violations,
        gaps=tuple(float(g) for g in gaps),
        memberships=tuple(memberships),
        violations=tuple(violations),
    )


def inverse_bound_check(
    x: Configuration, y: Configuration, labeling: GapLabeling
) -> InverseBoundReport:
    """Conditional two-sided check for a labeled pair of phase shapes.

    epsilon is the degree-0 bottleneck distance. If either shape violates
    the labeling, or epsilon reaches min(rho, gamma)/4 (the margin is
    strict), the report only states that the hypothesis fails. Otherwise
    it asserts epsilon <= distance <= 2(n-1) epsilon, with the distance
    from the exact circle solver, and per-slot gap control
    |gap_i(x) - gap_i(y)| <= 2 epsilon.
    """
    if x.n != y.n:
        raise InvalidInputError("pairs must have the same number of agents")
    report_x = check_gap_labeling(x, labeling)
    report_y = check_gap_labeling(y, labeling)
    eps = bottleneck_distance(signature(x, [0])[0], signature(y, [0])[0])
    gate = labeling.gate
    if not report_x.ok or not report_y.ok:
        which = [] if report_x.ok else ["x"]
        which += [] if report_y.ok else ["y"]
        return InverseBoundReport(
            n=x.n,
            epsilon=eps,
            gate=gate,
            hypothesis_ok=False,
            reason=f"gap labeling violated for {', '.join(which)}",
        )
    if eps >= gate:
        return InverseBoundReport(
            n=x.n,
            epsilon=eps,
            gate=gate,
            hypothesis_ok=False,
            reason=f"epsilon {eps:.6g} does not clear the strict margin gate {gate:.6g}",
        )
    distance = circle_exact_distance(x, y).upper_bound
    bound = 2.0 * (x.n - 1) * eps
    deltas = tuple(
        float(abs(gx - gy)) for gx, gy in zip(report_x.gaps, report_y.gaps)
    )
    return InverseBoundReport(
        n=x.n,
        epsilon=eps,
        gate=gate,
        hypothesis_ok=True,
        reason=None,
        distance=distance,
        bound=bound,
        stability_ok=eps <= distance + 1e-9,
        distance_ok=distance <= bound + 1e-9,
        gap_deltas=deltas,
        gap_control_ok=all(d <= 2.0 * eps + 1e-12 for d in deltas),
    )
