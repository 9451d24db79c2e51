"""Command-line interface.

Subcommands: dist, persist, bottleneck, geodesic, monitor, invert-check,
counterexample, verify. All structured output is JSON with sorted keys so
identical invocations produce byte-identical reports; CSV is available
only where a flat table exists (induced distance matrices via ``persist``,
step tables via ``monitor``).

Exit codes: 0 success, 1 verification failure, 2 input error,
3 unsupported instance.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import serialize
from .alignment import SolverOptions, formation_distance
from .counterexamples import (
    sphere_reflection_pair,
    sphere_two_point_pair,
    torus_mst_pair,
)
from .diagrams import bottleneck_distance
from .errors import (
    DegenerateConfigurationError,
    DegenerateGeodesicError,
    InvalidInputError,
    NotSemicircleError,
    ParseError,
    UnsupportedInstanceError,
)
from .formation import induced_distance_matrix
from .monitor import monitor as run_monitor
from .phase_circle import inverse_bound_check
from .quotient import quotient_geodesic
from .rips import signature
from .verify import verify_all

EXIT_OK = 0
EXIT_VERIFICATION_FAILURE = 1
EXIT_INPUT_ERROR = 2
EXIT_UNSUPPORTED = 3


def _add_common(parser):
    parser.add_argument("--input", "-i", default="-", help="input file, or - for stdin")
    parser.add_argument("--degrees", default="0,1", help="comma-separated homology degrees")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--restarts", type=int, default=64)
    parser.add_argument("--refine-iters", type=int, default=30)
    parser.add_argument("--grid-resolution", type=float, default=1e-3)
    parser.add_argument("--tolerance", type=float, default=1e-6)
    parser.add_argument("--output", choices=("json", "csv"), default="json")


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="formetric",
        description="Formation metrics and persistence signatures on quotient spaces",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, helptext in [
        ("dist", "orbit distance between two configurations ({'x':…, 'y':…})"),
        ("persist", "persistence diagrams of one configuration"),
        ("bottleneck", "bottleneck distance between two diagrams ({'d1':…, 'd2':…})"),
        ("geodesic", "point on the quotient geodesic ({'x':…, 'y':…}, --t)"),
        ("monitor", "per-step distance/diagram rates of a trajectory"),
        ("invert-check", "conditional inverse bound ({'x':…, 'y':…, 'labeling':…})"),
        ("counterexample", "emit a named witness pair"),
        ("verify", "run the full claim-verification suite"),
    ]:
        p = sub.add_parser(name, help=helptext)
        _add_common(p)
        if name == "geodesic":
            p.add_argument("--t", type=float, default=0.5, help="path parameter in [0, 1]")
            p.add_argument(
                "--tie-break",
                action="store_true",
                help="resolve cut-locus ambiguities deterministically",
            )
        if name == "counterexample":
            p.add_argument(
                "name",
                choices=("torus-mst", "sphere-reflection", "sphere-two-point"),
            )
            p.add_argument("--a", type=float, default=0.2, help="torus side length")
            p.add_argument("--n", type=int, default=5, help="reflection agent count")
            p.add_argument("--delta-x", type=float, default=1.0)
            p.add_argument("--delta-y", type=float, default=0.4)
        if name == "verify":
            p.add_argument("--budget", type=float, default=1.0)
            p.add_argument("--tamper", default=None, help="claim id to fault-inject")
    return parser


def _solver_options(args) -> SolverOptions:
    return SolverOptions(
        restarts=args.restarts,
        refine_iters=args.refine_iters,
        seed=args.seed,
        grid_resolution=args.grid_resolution,
        tolerance=args.tolerance,
    )


def _degrees(args):
    try:
        return tuple(int(part) for part in str(args.degrees).split(",") if part != "")
    except ValueError as exc:
        raise ParseError(f"--degrees: {exc}") from exc


def _read_input(args) -> str:
    if args.input == "-":
        return sys.stdin.read()
    try:
        with open(args.input, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {args.input}: {exc}") from exc


def _load_pair(args):
    doc = serialize.loads(_read_input(args))
    if not isinstance(doc, dict) or "x" not in doc or "y" not in doc:
        raise ParseError("document: expected an object with 'x' and 'y' configurations")
    x = serialize.configuration_from_dict(doc["x"], "x")
    y = serialize.configuration_from_dict(doc["y"], "y")
    return doc, x, y


def _require_json(args):
    if args.output != "json":
        raise ParseError(f"{args.command}: only json output is available")


def _emit(text: str):
    sys.stdout.write(text)


def _cmd_dist(args) -> int:
    _require_json(args)
    _, x, y = _load_pair(args)
    result = formation_distance(x, y, _solver_options(args))
    _emit(serialize.dumps(serialize.alignment_result_to_dict(result)))
    return EXIT_OK


def _cmd_persist(args) -> int:
    config = serialize.configuration_from_dict(serialize.loads(_read_input(args)))
    if args.output == "csv":
        matrix = induced_distance_matrix(config).values
        lines = [",".join(repr(float(v)) for v in row) for row in matrix]
        _emit("\n".join(lines) + "\n")
        return EXIT_OK
    diagrams = signature(config, _degrees(args))
    payload = {
        "degrees": {str(k): serialize.diagram_to_dict(d) for k, d in diagrams.items()}
    }
    _emit(serialize.dumps(payload))
    return EXIT_OK


def _cmd_bottleneck(args) -> int:
    _require_json(args)
    doc = serialize.loads(_read_input(args))
    if not isinstance(doc, dict) or "d1" not in doc or "d2" not in doc:
        raise ParseError("document: expected an object with diagrams 'd1' and 'd2'")
    d1 = serialize.diagram_from_dict(doc["d1"], "d1")
    d2 = serialize.diagram_from_dict(doc["d2"], "d2")
    value = bottleneck_distance(d1, d2)
    _emit(serialize.dumps({"bottleneck": serialize._death_to_json(value)}))
    return EXIT_OK


def _cmd_geodesic(args) -> int:
    _require_json(args)
    _, x, y = _load_pair(args)
    frame = quotient_geodesic(x, y, args.t, _solver_options(args), tie_break=args.tie_break)
    _emit(serialize.dumps(serialize.configuration_to_dict(frame)))
    return EXIT_OK


def _cmd_monitor(args) -> int:
    trajectory = serialize.parse_trajectory(_read_input(args))
    report = run_monitor(trajectory, _degrees(args), _solver_options(args))
    if args.output == "csv":
        degrees = sorted(report.steps[0].bottleneck) if report.steps else []
        header = ["t0", "t1", "dt", "distance_upper"] + [f"d_b_{k}" for k in degrees] + ["rate"]
        lines = [",".join(header)]
        for step in report.steps:
            row = [repr(step.t0), repr(step.t1), repr(step.dt), repr(step.distance_upper)]
            row += [repr(step.bottleneck[k]) for k in degrees]
            row.append(repr(step.rate))
            lines.append(",".join(row))
        _emit("\n".join(lines) + "\n")
    else:
        _emit(serialize.dumps(serialize.monitor_report_to_dict(report)))
    return EXIT_OK if report.lipschitz_ok else EXIT_VERIFICATION_FAILURE


def _cmd_invert_check(args) -> int:
    _require_json(args)
    doc, x, y = _load_pair(args)
    if "labeling" not in doc:
        raise ParseError("document: missing 'labeling'")
    labeling = serialize.gap_labeling_from_dict(doc["labeling"])
    report = inverse_bound_check(x, y, labeling)
    _emit(serialize.dumps(serialize.inverse_report_to_dict(report)))
    if report.hypothesis_ok and not report.passed:
        return EXIT_VERIFICATION_FAILURE
    return EXIT_OK


def _cmd_counterexample(args) -> int:
    _require_json(args)
    if args.name == "torus-mst":
        x, y = torus_mst_pair(args.a)
    elif args.name == "sphere-reflection":
        x, y = sphere_reflection_pair(args.n, args.seed)
    else:
        x, y = sphere_two_point_pair(args.delta_x, args.delta_y)
    payload = {
        "name": args.name,
        "x": serialize.configuration_to_dict(x),
        "y": serialize.configuration_to_dict(y),
    }
    _emit(serialize.dumps(payload))
    return EXIT_OK


def _cmd_verify(args) -> int:
    _require_json(args)
    report = verify_all(seed=args.seed, budget=args.budget, tamper=args.tamper)
    _emit(serialize.dumps(report.to_dict()))
    return EXIT_OK if report.passed else EXIT_VERIFICATION_FAILURE


_COMMANDS = {
    "dist": _cmd_dist,
    "persist": _cmd_persist,
    "bottleneck": _cmd_bottleneck,
    "geodesic": _cmd_geodesic,
    "monitor": _cmd_monitor,
    "invert-check": _cmd_invert_check,
    "counterexample": _cmd_counterexample,
    "verify": _cmd_verify,
}


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except UnsupportedInstanceError as exc:
        print(f"unsupported instance: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except (
        ParseError,
        InvalidInputError,
        NotSemicircleError,
        DegenerateConfigurationError,
        DegenerateGeodesicError,
    ) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
