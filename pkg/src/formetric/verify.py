"""One-shot verification suite: re-checks every testable claim of the library.

``verify_all`` runs twelve independent claim checks at a seed/budget and
returns a machine-readable report; the CLI maps any failure to a nonzero
exit. ``budget`` scales the per-claim instance counts (1.0 is the full
desk-scale run). ``tamper`` injects a deliberate fault (doubling one
diagram death or gap) into the named claim so the suite's ability to catch
violations can itself be tested.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .alignment import (
    SolverOptions,
    circle_exact_distance,
    formation_distance,
    gh_correspondence_distortion,
    grid_oracle,
)
from .assignment import bottleneck_assignment
from .counterexamples import (
    REFLECTION_FIXTURE_FLOOR,
    REFLECTION_FIXTURE_N,
    REFLECTION_FIXTURE_SEED,
    sphere_reflection_pair,
    sphere_two_point_pair,
    torus_mst_pair,
)
from .diagrams import bottleneck_distance
from .errors import InvalidInputError
from .formation import Configuration, induced_distance_matrix, random_configuration
from .monitor import Trajectory, monitor
from .oracles import (
    brute_assignment_value,
    brute_diagram_bottleneck,
    brute_min_tree_weight,
)
from .phase_circle import GapLabeling, inverse_bound_check, reconstruct_from_gaps
from .quotient import metric_axiom_sampler, quotient_geodesic
from .rips import PersistenceDiagram, mst, rips_diagram, signature
from .spaces import TWO_PI, canonical_angle, circle, sphere2, torus

_SLACK = 1e-9

# honest-effort solver settings per model for the bulk stability sweep;
# any feasible certificate is a sound bound, so these trade tightness for
# the suite's time budget
_TORUS_OPTS = SolverOptions(restarts=1, refine_iters=0, seed=101)
_SPHERE_OPTS = SolverOptions(restarts=4, refine_iters=5, seed=202)

TAMPERABLE = (
    "stability-inequality",
    "h0-equals-mst",
    "sphere-two-point-sharpness",
    "torus-square-counterexample",
    "reflection-strictness",
    "phase-gap-inverse-bound",
)


@dataclass(frozen=True)
class ClaimResult:
    claim: str
    description: str
    passed: bool
    details: dict


@dataclass(frozen=True)
class VerifyReport:
    seed: int
    budget: float
    results: tuple

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def to_dict(self) -> dict:
        return {
            "seed": self.seed,
            "budget": self.budget,
            "passed": self.passed,
            "claims": [
                {
                    "claim": r.claim,
                    "description": r.description,
                    "passed": r.passed,
                    "details": r.details,
                }
                for r in self.results
            ],
        }


def _scaled(base: int, budget: float, minimum: int = 1) -> int:
    return max(minimum, int(round(base * budget)))


def _double_first_death(diagram: PersistenceDiagram) -> PersistenceDiagram:
    points = list(diagram.points)
    for i, (b, d) in enumerate(points):
        if math.isfinite(d) and d > b:
            points[i] = (b, 2.0 * d)
            return PersistenceDiagram(diagram.degree, tuple(points))
    raise InvalidInputError("no finite death available to tamper")


# ---------------------------------------------------------------------------
# claims 1 + 2: stability sweep and the distortion sandwich


def _stability_sweep(seed: int, budget: float, tamper: bool):
    models = [
        (circle(), 8, None),
        (torus(2), 6, _TORUS_OPTS),
        (sphere2(), 8, _SPHERE_OPTS),
    ]
    pairs_per_model = _scaled(500, budget)
    degrees = (0, 1)
    stability_failures = 0
    sandwich_failures = 0
    checked = 0
    worst_margin = -math.inf
    for model_idx, (space, max_n, opts) in enumerate(models):
        rng = np.random.default_rng(seed * 7919 + model_idx)
        for _ in range(pairs_per_model):
            n = int(rng.integers(2, max_n + 1))
            x = random_configuration(space, n, int(rng.integers(0, 2**31)))
            y = random_configuration(space, n, int(rng.integers(0, 2**31)))
            result = formation_distance(x, y, opts)
            sig_x = signature(x, degrees)
            sig_y = signature(y, degrees)
            dis = gh_correspondence_distortion(x, y, result.sigma)
            if dis / 2.0 > result.upper_bound + _SLACK:
                sandwich_failures += 1
            for k in degrees:
                d_b = bottleneck_distance(sig_x[k], sig_y[k])
                if d_b > result.upper_bound + _SLACK:
                    stability_failures += 1
                if d_b > dis / 2.0 + _SLACK:
                    sandwich_failures += 1
                worst_margin = max(worst_margin, d_b - result.upper_bound)
            checked += 1
    if tamper:
        x = random_configuration(circle(), 4, seed)
        result = formation_distance(x, x)
        fake = _double_first_death(signature(x, (0,))[0])
        if bottleneck_distance(signature(x, (0,))[0], fake) > result.upper_bound + _SLACK:
            stability_failures += 1
        checked += 1
    stability = ClaimResult(
        claim="stability-inequality",
        description="diagram movement never exceeds the certified distance bound",
        passed=stability_failures == 0,
        details={
            "pairs": checked,
            "failures": stability_failures,
            "worst_margin": worst_margin,
        },
    )
    sandwich = ClaimResult(
        claim="alignment-distortion-sandwich",
        description="half correspondence distortion sits between d_B and the certificate",
        passed=sandwich_failures == 0,
        details={"pairs": checked, "failures": sandwich_failures},
    )
    return stability, sandwich


# ---------------------------------------------------------------------------
# claim 3: degree-0 persistence equals the MST profile


def _check_h0_mst(seed: int, budget: float, tamper: bool) -> ClaimResult:
    rng = np.random.default_rng(seed * 7919 + 30)
    instances = _scaled(300, budget)
    failures = 0
    weight_failures = 0
    tampered = False
    spaces = [sphere2(), torus(2), circle()]
    for i in range(instances):
        space = spaces[i % len(spaces)]
        n = int(rng.integers(1, 9))
        x = random_configuration(space, n, int(rng.integers(0, 2**31)))
        dm = induced_distance_matrix(x)
        summary = mst(dm)
        # reduction route, so the MST characterization is not self-checked
        reduced = rips_diagram(dm, 0, max_n=16)
        deaths = sorted(d for _, d in reduced.finite_points)
        expected = sorted(length / 2.0 for length in summary.lengths)
        if tamper and not tampered and expected:
            expected[0] *= 2.0
            tampered = True
        if deaths != expected or len(reduced.essential_births) != 1:
            failures += 1
        if n <= 6:
            brute = brute_min_tree_weight(dm.values)
            if not math.isclose(summary.total_weight, brute, rel_tol=0.0, abs_tol=1e-12):
                weight_failures += 1
    return ClaimResult(
        claim="h0-equals-mst",
        description="finite degree-0 deaths are the MST edge lengths halved",
        passed=failures == 0 and weight_failures == 0,
        details={
            "instances": instances,
            "multiset_failures": failures,
            "tree_weight_failures": weight_failures,
        },
    )


# ---------------------------------------------------------------------------
# claim 4: both bottleneck solvers are exact


def _check_bottleneck_exact(seed: int, budget: float) -> ClaimResult:
    rng = np.random.default_rng(seed * 7919 + 40)
    assign_instances = _scaled(200, budget)
    diagram_instances = _scaled(200, budget)
    assign_failures = 0
    for i in range(assign_instances):
        n = int(rng.integers(1, 8))
        costs = rng.uniform(0.0, 1.0, size=(n, n))
        value, sigma = bottleneck_assignment(costs)
        brute = brute_assignment_value(costs)
        realized = float(np.max(costs[np.arange(n), sigma]))
        if value != brute or realized != value:
            assign_failures += 1
        if i % 50 == 0:  # determinism spot check
            again_value, again_sigma = bottleneck_assignment(costs)
            if again_value != value or not np.array_equal(again_sigma, sigma):
                assign_failures += 1
    diagram_failures = 0
    for _ in range(diagram_instances):
        d1 = _random_diagram(rng)
        d2 = _random_diagram(rng)
        if bottleneck_distance(d1, d2) != brute_diagram_bottleneck(d1, d2):
            diagram_failures += 1
    return ClaimResult(
        claim="bottleneck-solvers-exact",
        description="assignment and diagram bottleneck match brute-force enumeration",
        passed=assign_failures == 0 and diagram_failures == 0,
        details={
            "assignment_instances": assign_instances,
            "assignment_failures": assign_failures,
            "diagram_instances": diagram_instances,
            "diagram_failures": diagram_failures,
        },
    )


def _random_diagram(rng) -> PersistenceDiagram:
    count = int(rng.integers(0, 6))
    points = []
    for _ in range(count):
        birth = float(rng.uniform(0.0, 1.0))
        points.append((birth, birth + float(rng.uniform(0.0, 1.0))))
    for _ in range(int(rng.integers(0, 2))):
        points.append((float(rng.uniform(0.0, 0.5)), math.inf))
    return PersistenceDiagram(1, tuple(points))


# ---------------------------------------------------------------------------
# claim 5: circle solver is exact against the grid oracle


def _check_circle_exact(seed: int, budget: float) -> ClaimResult:
    rng = np.random.default_rng(seed * 7919 + 50)
    instances = _scaled(200, budget)
    resolution = 1e-5
    failures = 0
    worst = 0.0
    for _ in range(instances):
        n = int(rng.integers(2, 7))
        x = random_configuration(circle(), n, int(rng.integers(0, 2**31)))
        y = random_configuration(circle(), n, int(rng.integers(0, 2**31)))
        exact = circle_exact_distance(x, y).upper_bound
        gridded = grid_oracle(x, y, resolution)
        gap = abs(exact - gridded)
        worst = max(worst, gap)
        # the grid minimum can only sit within one Lipschitz step above the
        # true optimum, and never below an exact solver's answer
        if gap > 2.0 * resolution or exact > gridded + _SLACK:
            failures += 1
    axioms = metric_axiom_sampler(circle(), 3, _scaled(100, budget), seed * 7919 + 51)
    return ClaimResult(
        claim="circle-solver-exact",
        description="candidate-set circle solver matches the dense grid oracle",
        passed=failures == 0 and axioms.passed,
        details={
            "instances": instances,
            "failures": failures,
            "worst_gap": worst,
            "axiom_violations": axioms.symmetry_violations
            + axioms.triangle_violations
            + axioms.identity_violations,
        },
    )


# ---------------------------------------------------------------------------
# claim 6: two-agent sphere sharpness


def _check_two_point(seed: int, budget: float, tamper: bool) -> ClaimResult:
    rng = np.random.default_rng(seed * 7919 + 60)
    instances = _scaled(50, budget)
    opts = SolverOptions(restarts=8, refine_iters=20, seed=606)
    failures = 0
    worst = 0.0
    for i in range(instances):
        base = float(rng.uniform(0.2, 1.5))
        factor = float(rng.uniform(1.0, 2.0))
        delta_x, delta_y = base, min(base * factor, np.pi - 0.05)
        if rng.uniform() < 0.5:
            delta_x, delta_y = delta_y, delta_x
        expected = abs(delta_x - delta_y) / 2.0
        x, y = sphere_two_point_pair(delta_x, delta_y)
        distance = formation_distance(x, y, opts).upper_bound
        sig_x = signature(x, (0,))[0]
        sig_y = signature(y, (0,))[0]
        if tamper and i == 0:
            sig_y = _double_first_death(sig_y)
        d_b = bottleneck_distance(sig_x, sig_y)
        gap = max(abs(distance - expected), abs(d_b - expected))
        worst = max(worst, gap)
        if gap > 1e-5:
            failures += 1
    return ClaimResult(
        claim="sphere-two-point-sharpness",
        description="two-agent sphere distance and d_B both equal half the separation gap",
        passed=failures == 0,
        details={"instances": instances, "failures": failures, "worst_gap": worst},
    )


# ---------------------------------------------------------------------------
# claim 7: torus line-vs-square counterexample


def _check_torus_counterexample(seed: int, budget: float, tamper: bool) -> ClaimResult:
    a = 0.2
    line, square = torus_mst_pair(a)
    sig_line = signature(line, (0,))[0]
    sig_square = signature(square, (0,))[0]
    if tamper:
        sig_line = _double_first_death(sig_line)
    identical = sig_line.points == sig_square.points
    dm_line = induced_distance_matrix(line).values
    dm_square = induced_distance_matrix(square).values
    pairs_at_a = lambda d: int(np.sum(np.isclose(d[np.triu_indices(4, 1)], a, atol=1e-12)))
    oracle_distance = grid_oracle(line, square, 1e-3)
    solver_bound = formation_distance(line, square, SolverOptions(seed=707)).upper_bound
    passed = (
        identical
        and pairs_at_a(dm_line) == 3
        and pairs_at_a(dm_square) == 4
        and oracle_distance >= 0.05
        and solver_bound >= 0.05
    )
    return ClaimResult(
        claim="torus-square-counterexample",
        description="identical degree-0 diagrams yet orbit distance certified >= 0.05",
        passed=passed,
        details={
            "diagrams_identical": identical,
            "oracle_distance": oracle_distance,
            "solver_bound": solver_bound,
        },
    )


# ---------------------------------------------------------------------------
# claim 8: reflection strictness / no global inverse bound


def _check_reflection(seed: int, budget: float, tamper: bool) -> ClaimResult:
    x, y = sphere_reflection_pair(REFLECTION_FIXTURE_N, REFLECTION_FIXTURE_SEED)
    degrees = (0, 1, 2)
    sig_x = signature(x, degrees)
    sig_y = signature(y, degrees)
    if tamper:
        sig_y = dict(sig_y)
        sig_y[0] = _double_first_death(sig_y[0])
    all_zero = all(
        sig_x[k].points == sig_y[k].points
        and bottleneck_distance(sig_x[k], sig_y[k]) == 0.0
        for k in degrees
    )
    bound = formation_distance(x, y, SolverOptions(seed=808)).upper_bound
    return ClaimResult(
        claim="reflection-strictness",
        description="mirror pair: all diagrams agree exactly while the distance stays positive",
        passed=all_zero and bound >= REFLECTION_FIXTURE_FLOOR,
        details={
            "diagrams_identical": all_zero,
            "distance_lower_evidence": bound,
            "frozen_floor": REFLECTION_FIXTURE_FLOOR,
        },
    )


# ---------------------------------------------------------------------------
# claim 9: three-point shapes have empty degree-1 diagrams


def _check_empty_h1(seed: int, budget: float) -> ClaimResult:
    rng = np.random.default_rng(seed * 7919 + 90)
    instances = _scaled(100, budget)
    spaces = [sphere2(), torus(2), circle()]
    failures = 0
    for i in range(instances):
        x = random_configuration(spaces[i % 3], 3, int(rng.integers(0, 2**31)))
        diagram = rips_diagram(induced_distance_matrix(x), 1)
        if diagram.points != ():
            failures += 1
    return ClaimResult(
        claim="empty-h1-three-points",
        description="every 3-agent shape has an empty degree-1 diagram",
        passed=failures == 0,
        details={"instances": instances, "failures": failures},
    )


# ---------------------------------------------------------------------------
# claim 10: conditional inverse bound on the phase circle


def _slot_labeling(n: int) -> GapLabeling:
    width = 0.04
    centers = [0.15 + 0.2 * i for i in range(n - 1)]
    intervals = tuple((c - width, c + width) for c in centers)
    return GapLabeling(intervals, rho=centers[0] - width, gamma=0.06)


def _labeled_pair(rng, labeling: GapLabeling, n: int, spoil: str | None = None):
    centers = [0.5 * (lo + hi) for lo, hi in labeling.intervals]
    gaps_x = np.array([c + rng.uniform(-0.035, 0.035) for c in centers])
    shift = rng.uniform(-0.01, 0.01, size=n - 1)
    gaps_y = np.clip(gaps_x + shift, [c - 0.0395 for c in centers], [c + 0.0395 for c in centers])
    if spoil == "slot":
        gaps_y[-1] = labeling.intervals[-1][1] + 0.05  # pushed out of its slot
    elif spoil == "gate":
        gaps_y = gaps_x + 0.039 * np.where(np.arange(n - 1) % 2 == 0, 1.0, -1.0)
        gaps_y = np.clip(gaps_y, [c - 0.0395 for c in centers], [c + 0.0395 for c in centers])
    elif spoil == "tamper":
        gaps_y[0] *= 2.0  # doubles the corresponding degree-0 death

    def realize(gaps):
        lift = reconstruct_from_gaps(gaps)
        angles = np.asarray(lift.thetas) + rng.uniform(0.0, TWO_PI)
        angles = canonical_angle(angles)
        order = rng.permutation(len(angles))
        return Configuration(circle(), angles[order][:, None])

    return realize(gaps_x), realize(gaps_y)


def _check_inverse_bound(seed: int, budget: float, tamper: bool) -> ClaimResult:
    pairs_per_n = _scaled(200, budget)
    controls_per_n = _scaled(20, budget)
    failures = 0
    control_failures = 0
    checked = 0
    for n in (3, 4, 5, 6):
        labeling = _slot_labeling(n)
        rng = np.random.default_rng(seed * 7919 + 100 + n)
        for i in range(pairs_per_n):
            spoil = "tamper" if tamper and i == 0 and n == 3 else None
            x, y = _labeled_pair(rng, labeling, n, spoil=spoil)
            report = inverse_bound_check(x, y, labeling)
            checked += 1
            if not report.hypothesis_ok or not report.passed:
                failures += 1
        for kind in ("slot", "gate"):
            for _ in range(controls_per_n):
                x, y = _labeled_pair(rng, labeling, n, spoil=kind)
                report = inverse_bound_check(x, y, labeling)
                if report.hypothesis_ok:
                    # the gate-spoiled pair may legitimately stay under the
                    # gate if the random shifts cancel; require only that a
                    # passing gate still yields sound assertions
                    if kind == "slot" or not report.passed:
                        control_failures += 1
    return ClaimResult(
        claim="phase-gap-inverse-bound",
        description="labeled semicircle pairs: eps <= distance <= 2(n-1) eps with gap control",
        passed=failures == 0 and control_failures == 0,
        details={
            "pairs": checked,
            "failures": failures,
            "negative_control_failures": control_failures,
        },
    )


# ---------------------------------------------------------------------------
# claim 11: quotient geodesics


def _check_geodesics(seed: int, budget: float) -> ClaimResult:
    rng = np.random.default_rng(seed * 7919 + 110)
    circle_pairs = _scaled(100, budget)
    grid = np.linspace(0.0, 1.0, 11)
    failures = 0
    worst = 0.0
    for _ in range(circle_pairs):
        n = int(rng.integers(2, 7))
        x = random_configuration(circle(), n, int(rng.integers(0, 2**31)))
        y = random_configuration(circle(), n, int(rng.integers(0, 2**31)))
        total = circle_exact_distance(x, y).upper_bound
        frames = [quotient_geodesic(x, y, float(t)) for t in grid]
        for i in range(len(grid)):
            for j in range(i + 1, len(grid)):
                d = circle_exact_distance(frames[i], frames[j]).upper_bound
                err = float(abs(d - abs(grid[i] - grid[j]) * total))
                worst = max(worst, err)
                if err > _SLACK:
                    failures += 1
    sphere_pairs = _scaled(25, budget)
    opts = SolverOptions(restarts=8, refine_iters=20, seed=1111)
    sphere_failures = 0
    for _ in range(sphere_pairs):
        base = float(rng.uniform(0.3, 1.2))
        factor = float(rng.uniform(1.0, 1.8))
        x, y = sphere_two_point_pair(base, min(base * factor, np.pi - 0.1))
        total = formation_distance(x, y, opts).upper_bound
        mid = quotient_geodesic(x, y, 0.5, opts)
        left = formation_distance(x, mid, opts).upper_bound
        right = formation_distance(mid, y, opts).upper_bound
        if abs(left - total / 2.0) > 1e-5 or abs(right - total / 2.0) > 1e-5:
            sphere_failures += 1
    return ClaimResult(
        claim="quotient-geodesics",
        description="aligned coordinate-wise interpolation is constant speed in the quotient",
        passed=failures == 0 and sphere_failures == 0,
        details={
            "circle_pairs": circle_pairs,
            "circle_failures": failures,
            "worst_circle_error": worst,
            "sphere_pairs": sphere_pairs,
            "sphere_failures": sphere_failures,
        },
    )


# ---------------------------------------------------------------------------
# claim 12: trajectory monitoring


def _check_monitoring(seed: int, budget: float) -> ClaimResult:
    rng = np.random.default_rng(seed * 7919 + 120)
    trajectories = _scaled(20, budget)
    failures = 0
    for _ in range(trajectories):
        n = int(rng.integers(2, 6))
        x = random_configuration(circle(), n, int(rng.integers(0, 2**31)))
        y = random_configuration(circle(), n, int(rng.integers(0, 2**31)))
        speed = circle_exact_distance(x, y).upper_bound
        times = np.linspace(0.0, 1.0, 11)
        frames = tuple(quotient_geodesic(x, y, float(t)) for t in times)
        report = monitor(Trajectory(circle(), tuple(times), frames), degrees=(0, 1))
        if not report.lipschitz_ok or report.max_rate > speed + _SLACK:
            failures += 1
    # constant trajectory: all rates vanish
    x = random_configuration(circle(), 4, seed)
    constant = Trajectory(circle(), (0.0, 0.5, 1.0), (x, x, x))
    report = monitor(constant, degrees=(0, 1))
    if report.max_rate != 0.0 or not report.lipschitz_ok:
        failures += 1
    return ClaimResult(
        claim="trajectory-monitoring",
        description="per-step diagram rates never exceed the geodesic speed",
        passed=failures == 0,
        details={"trajectories": trajectories, "failures": failures},
    )


# ---------------------------------------------------------------------------


def verify_all(seed: int = 0, budget: float = 1.0, tamper: str | None = None) -> VerifyReport:
    """Run every claim check; ``tamper`` names a claim to fault-inject."""
    if budget <= 0:
        raise InvalidInputError("budget must be positive")
    if tamper is not None and tamper not in TAMPERABLE:
        raise InvalidInputError(
            f"claim {tamper!r} does not support fault injection; choose from {TAMPERABLE}"
        )
    stability, sandwich = _stability_sweep(seed, budget, tamper == "stability-inequality")
    results = [
        stability,
        sandwich,
        _check_h0_mst(seed, budget, tamper == "h0-equals-mst"),
        _check_bottleneck_exact(seed, budget),
        _check_circle_exact(seed, budget),
        _check_two_point(seed, budget, tamper == "sphere-two-point-sharpness"),
        _check_torus_counterexample(seed, budget, tamper == "torus-square-counterexample"),
        _check_reflection(seed, budget, tamper == "reflection-strictness"),
        _check_empty_h1(seed, budget),
        _check_inverse_bound(seed, budget, tamper == "phase-gap-inverse-bound"),
        _check_geodesics(seed, budget),
        _check_monitoring(seed, budget),
    ]
    return VerifyReport(seed=seed, budget=budget, results=tuple(results))
