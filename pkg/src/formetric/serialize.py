"""JSON interchange for configurations, trajectories, labelings, diagrams,
and the report objects the harness emits.

All interchange is JSON. Infinite deaths serialize as the string "inf"
(JSON has no infinity literal). Canonical-form configurations round-trip
bit-exactly because floats are emitted with full repr precision.
Validation failures raise ParseError whose message carries the field path.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict

import numpy as np

from .alignment import AlignmentResult
from .diagrams import StabilityReport
from .errors import InvalidInputError, ParseError
from .formation import Configuration
from .monitor import MonitorReport, Trajectory
from .phase_circle import GapLabeling, InverseBoundReport
from .quotient import MetricAxiomReport
from .rips import PersistenceDiagram
from .spaces import CIRCLE, SPHERE2, TORUS, AmbientSpace, circle, sphere2, torus


def dumps(payload) -> str:
    """Canonical JSON text: sorted keys, two-space indent, trailing newline."""
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def loads(text):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed JSON: {exc}") from exc


# ---------------------------------------------------------------------------
# spaces and configurations


def space_to_dict(space: AmbientSpace) -> dict:
    if space.kind == TORUS:
        return {"kind": "torus", "m": space.m}
    return {"kind": space.kind}


def space_from_dict(data, path="space") -> AmbientSpace:
    if not isinstance(data, dict) or "kind" not in data:
        raise ParseError(f"{path}: expected an object with a 'kind' field")
    kind = data["kind"]
    if kind == "sphere2":
        return sphere2()
    if kind == "circle":
        return circle()
    if kind == "torus":
        m = data.get("m")
        if not isinstance(m, int) or m < 1:
            raise ParseError(f"{path}.m: torus needs a positive integer dimension")
        return torus(m)
    raise ParseError(f"{path}.kind: unknown space kind {kind!r}")


def _points_from_list(space, raw, path) -> np.ndarray:
    if not isinstance(raw, list) or not raw:
        raise ParseError(f"{path}: expected a non-empty list of points")
    points = []
    for idx, entry in enumerate(raw):
        if not isinstance(entry, list) or len(entry) != space.point_dim:
            raise ParseError(
                f"{path}[{idx}]: expected {space.point_dim} coordinates"
            )
        try:
            points.append([float(v) for v in entry])
        except (TypeError, ValueError) as exc:
            raise ParseError(f"{path}[{idx}]: non-numeric coordinate") from exc
    return np.asarray(points, dtype=float)


def configuration_to_dict(config: Configuration) -> dict:
    return {
        "space": space_to_dict(config.space),
        "points": [[float(v) for v in p] for p in config.points],
    }


def configuration_from_dict(data, path="") -> Configuration:
    prefix = f"{path}." if path else ""
    if not isinstance(data, dict):
        raise ParseError(f"{path or 'document'}: expected an object")
    space = space_from_dict(data.get("space"), f"{prefix}space")
    points = _points_from_list(space, data.get("points"), f"{prefix}points")
    try:
        return Configuration(space, points)
    except InvalidInputError as exc:
        raise ParseError(f"{prefix}points: {exc}") from exc


def parse_configuration(data) -> Configuration:
    """Parse a configuration document from JSON text or bytes."""
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    return configuration_from_dict(loads(data))


def serialize_configuration(config: Configuration) -> str:
    return dumps(configuration_to_dict(config))


# ---------------------------------------------------------------------------
# trajectories


def trajectory_to_dict(traj: Trajectory) -> dict:
    return {
        "space": space_to_dict(traj.space),
        "frames": [
            {"t": float(t), "points": [[float(v) for v in p] for p in c.points]}
            for t, c in zip(traj.times, traj.frames)
        ],
    }


def trajectory_from_dict(data) -> Trajectory:
    if not isinstance(data, dict):
        raise ParseError("document: expected an object")
    space = space_from_dict(data.get("space"))
    raw_frames = data.get("frames")
    if not isinstance(raw_frames, list) or not raw_frames:
        raise ParseError("frames: expected a non-empty list")
    times = []
    frames = []
    for idx, frame in enumerate(raw_frames):
        if not isinstance(frame, dict) or "t" not in frame:
            raise ParseError(f"frames[{idx}]: expected an object with 't' and 'points'")
        try:
            times.append(float(frame["t"]))
        except (TypeError, ValueError) as exc:
            raise ParseError(f"frames[{idx}].t: non-numeric time") from exc
        points = _points_from_list(space, frame.get("points"), f"frames[{idx}].points")
        try:
            frames.append(Configuration(space, points))
        except InvalidInputError as exc:
            raise ParseError(f"frames[{idx}].points: {exc}") from exc
    try:
        return Trajectory(space, tuple(times), tuple(frames))
    except InvalidInputError as exc:
        raise ParseError(f"frames: {exc}") from exc


def parse_trajectory(data) -> Trajectory:
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    return trajectory_from_dict(loads(data))


# ---------------------------------------------------------------------------
# gap labelings


def gap_labeling_to_dict(labeling: GapLabeling) -> dict:
    return {
        "intervals": [[lo, hi] for lo, hi in labeling.intervals],
        "rho": labeling.rho,
        "gamma": labeling.gamma,
    }


def gap_labeling_from_dict(data) -> GapLabeling:
    if not isinstance(data, dict):
        raise ParseError("labeling: expected an object")
    raw = data.get("intervals")
    if not isinstance(raw, list):
        raise ParseError("labeling.intervals: expected a list of [lo, hi] pairs")
    intervals = []
    for idx, pair in enumerate(raw):
        if not isinstance(pair, list) or len(pair) != 2:
            raise ParseError(f"labeling.intervals[{idx}]: expected [lo, hi]")
        intervals.append((float(pair[0]), float(pair[1])))
    try:
        return GapLabeling(
            tuple(intervals), float(data.get("rho", 0)), float(data.get("gamma", 0))
        )
    except (TypeError, ValueError) as exc:
        raise ParseError(f"labeling: {exc}") from exc


# ---------------------------------------------------------------------------
# diagrams


def _death_to_json(d: float):
    return "inf" if math.isinf(d) else d


def diagram_to_dict(diagram: PersistenceDiagram) -> dict:
    return {
        "degree": diagram.degree,
        "points": [[b, _death_to_json(d)] for b, d in diagram.points],
    }


def diagram_from_dict(data, path="diagram") -> PersistenceDiagram:
    if not isinstance(data, dict) or "degree" not in data:
        raise ParseError(f"{path}: expected an object with 'degree' and 'points'")
    raw = data.get("points", [])
    if not isinstance(raw, list):
        raise ParseError(f"{path}.points: expected a list")
    points = []
    for idx, pair in enumerate(raw):
        if not isinstance(pair, list) or len(pair) != 2:
            raise ParseError(f"{path}.points[{idx}]: expected [birth, death]")
        birth, death = pair
        if death == "inf":
            death = math.inf
        try:
            points.append((float(birth), float(death)))
        except (TypeError, ValueError) as exc:
            raise ParseError(f"{path}.points[{idx}]: non-numeric entry") from exc
    try:
        return PersistenceDiagram(int(data["degree"]), tuple(points))
    except (InvalidInputError, TypeError, ValueError) as exc:
        raise ParseError(f"{path}: {exc}") from exc


# ---------------------------------------------------------------------------
# report objects (output only)


def alignment_result_to_dict(result: AlignmentResult) -> dict:
    return {
        "upper_bound": result.upper_bound,
        "g": [float(v) for v in result.g],
        "sigma": [int(v) for v in result.sigma],
        "exact": result.exact,
        "method": result.method,
        "evaluations": result.evaluations,
    }


def stability_report_to_dict(report: StabilityReport) -> dict:
    return {
        "alignment": alignment_result_to_dict(report.alignment),
        "distortion": report.distortion,
        "degrees": [
            {
                "degree": row.degree,
                "bottleneck": row.bottleneck,
                "within_distance": row.within_distance,
                "within_half_distortion": row.within_half_distortion,
            }
            for row in report.degrees
        ],
        "passed": report.passed,
        "sandwich_ok": report.sandwich_ok,
        "strict": report.strict,
    }


def monitor_report_to_dict(report: MonitorReport) -> dict:
    return {
        "steps": [
            {
                "t0": step.t0,
                "t1": step.t1,
                "dt": step.dt,
                "distance_upper": step.distance_upper,
                "bottleneck": {str(k): _death_to_json(v) for k, v in step.bottleneck.items()},
                "rate": _death_to_json(step.rate),
            }
            for step in report.steps
        ],
        "max_rate": _death_to_json(report.max_rate),
        "lipschitz_ok": report.lipschitz_ok,
    }


def inverse_report_to_dict(report: InverseBoundReport) -> dict:
    data = asdict(report)
    data["passed"] = report.passed
    if data["gap_deltas"] is not None:
        data["gap_deltas"] = list(data["gap_deltas"])
    return data


def axiom_report_to_dict(report: MetricAxiomReport) -> dict:
    data = asdict(report)
    data["space"] = space_to_dict(report.space)
    data["passed"] = report.passed
    return data
