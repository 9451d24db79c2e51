"""Trajectory monitoring: per-step certified distance bounds and diagram rates.

Because diagrams move no faster than the formation distance, a certified
per-step distance bound also bounds every degree's bottleneck rate; a step
whose diagram movement exceeds its distance bound indicates a software bug,
and the report flags it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .alignment import SolverOptions, formation_distance
from .diagrams import bottleneck_distance
from .errors import InvalidInputError
from .formation import Configuration
from .rips import signature
from .spaces import AmbientSpace

_SLACK = 1e-9


@dataclass(frozen=True)
class Trajectory:
    """Time-stamped formation path; times strictly increase, frames share
    one space and agent count."""

    space: AmbientSpace
    times: tuple
    frames: tuple

    def __post_init__(self):
        if len(self.times) != len(self.frames) or not self.frames:
            raise InvalidInputError("need matching, non-empty times and frames")
        if any(b <= a for a, b in zip(self.times, self.times[1:])):
            raise InvalidInputError("times must be strictly increasing")
        n = self.frames[0].n
        for idx, frame in enumerate(self.frames):
            if frame.space != self.space:
                raise InvalidInputError(f"frame {idx} lives in a different space")
            if frame.n != n:
                raise InvalidInputError(f"frame {idx} has {frame.n} agents, expected {n}")
        object.__setattr__(self, "times", tuple(float(t) for t in self.times))
        object.__setattr__(self, "frames", tuple(self.frames))


@dataclass(frozen=True)
class MonitorStep:
    t0: float
    t1: float
    dt: float
    distance_upper: float
    bottleneck: dict
    rate: float


@dataclass(frozen=True)
class MonitorReport:
    steps: tuple
    max_rate: float
    lipschitz_ok: bool


def monitor(
    trajectory: Trajectory,
    degrees=(0, 1),
    opts: SolverOptions | None = None,
) -> MonitorReport:
    """Per-step distance bounds, per-degree diagram movement, and rates.

    Signatures are computed once per frame. ``lipschitz_ok`` is False if
    any step's diagram movement exceeds its certified distance bound.
    """
    if len(trajectory.frames) < 2:
        raise InvalidInputError("monitoring needs at least two frames")
    degrees = sorted(set(int(k) for k in degrees))
    signatures = [signature(frame, degrees) for frame in trajectory.frames]
    steps = []
    ok = True
    max_rate = 0.0
    for i in range(len(trajectory.frames) - 1):
        t0, t1 = trajectory.times[i], trajectory.times[i + 1]
        dt = t1 - t0
        bound = formation_distance(
            trajectory.frames[i], trajectory.frames[i + 1], opts
        ).upper_bound
        per_degree = {
            k: bottleneck_distance(signatures[i][k], signatures[i + 1][k])
            for k in degrees
        }
        worst = max(per_degree.values())
        if worst > bound + _SLACK:
            ok = False
        rate = worst / dt if math.isfinite(worst) else math.inf
        max_rate = max(max_rate, rate)
        steps.append(
            MonitorStep(
                t0=t0,
                t1=t1,
                dt=dt,
                distance_upper=bound,
                bottleneck=per_degree,
                rate=rate,
            )
        )
    return MonitorReport(steps=tuple(steps), max_rate=max_rate, lipschitz_ok=ok)
