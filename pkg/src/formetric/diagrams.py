"""Bottleneck distance between persistence diagrams and the stability check.

Finite points match each other or their own diagonal projection; essential
(infinite-death) points form a separate exact sub-matching because mixing
infinities into the assignment matrix would break its finiteness contract.
Ground metric on the plane is L-infinity, so a point's diagonal cost is
half its persistence.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .alignment import (
    AlignmentResult,
    SolverOptions,
    formation_distance,
    gh_correspondence_distortion,
)
from .assignment import bottleneck_assignment
from .errors import InvalidInputError
from .formation import Configuration
from .rips import PersistenceDiagram, signature

_SLACK = 1e-9


def bottleneck_distance(d1: PersistenceDiagram, d2: PersistenceDiagram) -> float:
    """Exact bottleneck distance, essential classes included.

    Essential points pair among themselves by sorted births (optimal for a
    minimax matching on a line); a count mismatch makes the distance
    infinite. Finite points go through the standard augmented assignment
    where each point may also take its own diagonal projection.
    """
    if d1.degree != d2.degree:
        raise InvalidInputError(
            f"cannot compare diagrams of degrees {d1.degree} and {d2.degree}"
        )
    e1 = sorted(d1.essential_births)
    e2 = sorted(d2.essential_births)
    if len(e1) != len(e2):
        return math.inf
    essential = max((abs(a - b) for a, b in zip(e1, e2)), default=0.0)

    p1 = d1.finite_points
    p2 = d2.finite_points
    return max(essential, _finite_bottleneck(p1, p2))


def _finite_bottleneck(p1, p2) -> float:
    n1, n2 = len(p1), len(p2)
    if n1 == 0 and n2 == 0:
        return 0.0
    diag1 = [(d - b) / 2.0 for b, d in p1]
    diag2 = [(d - b) / 2.0 for b, d in p2]
    size = n1 + n2
    # entries beyond any achievable optimum stand in for "not allowed"
    blocked = 4.0 * max(
        max((d for _, d in p1), default=0.0), max((d for _, d in p2), default=0.0), 1.0
    )
    costs = np.full((size, size), blocked)
    for i, (b1, dd1) in enumerate(p1):
        for j, (b2, dd2) in enumerate(p2):
            costs[i, j] = max(abs(b1 - b2), abs(dd1 - dd2))
    for i in range(n1):
        costs[i, n2 + i] = diag1[i]
    for j in range(n2):
        costs[n1 + j, j] = diag2[j]
    costs[n1:, n2:] = 0.0  # diagonal-to-diagonal is free
    value, _ = bottleneck_assignment(costs)
    return float(value)


@dataclass(frozen=True)
class DegreeStability:
    degree: int
    bottleneck: float
    within_distance: bool
    within_half_distortion: bool


@dataclass(frozen=True)
class StabilityReport:
    """Per-degree comparison of diagram movement against the alignment bound.

    ``passed`` requires every degree's bottleneck distance to stay below
    the certified distance bound (plus 1e-9); the half-distortion chain
    d_B <= dis/2 <= cost is reported alongside. ``strict`` flags pairs
    whose diagrams agree while the distance bound stays positive.
    """

    alignment: AlignmentResult
    distortion: float
    degrees: tuple

    @property
    def passed(self) -> bool:
        return all(d.within_distance for d in self.degrees)

    @property
    def sandwich_ok(self) -> bool:
        return (
            all(d.within_half_distortion for d in self.degrees)
            and self.distortion / 2.0 <= self.alignment.upper_bound + _SLACK
        )

    @property
    def strict(self) -> bool:
        worst = max((d.bottleneck for d in self.degrees), default=0.0)
        return worst + _SLACK < self.alignment.upper_bound


def stability_check(
    x: Configuration,
    y: Configuration,
    degrees=(0, 1),
    opts: SolverOptions | None = None,
) -> StabilityReport:
    """Verify that diagram movement is bounded by the alignment certificate."""
    result = formation_distance(x, y, opts)
    distortion = gh_correspondence_distortion(x, y, result.sigma)
    sig_x = signature(x, degrees)
    sig_y = signature(y, degrees)
    rows = []
    for k in sorted(sig_x):
        d_b = bottleneck_distance(sig_x[k], sig_y[k])
        rows.append(
            DegreeStability(
                degree=k,
                bottleneck=d_b,
                within_distance=d_b <= result.upper_bound + _SLACK,
                within_half_distortion=d_b <= distortion / 2.0 + _SLACK,
            )
        )
    return StabilityReport(alignment=result, distortion=distortion, degrees=tuple(rows))
