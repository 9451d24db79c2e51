"""Formation comparison on quotient configuration spaces.

Configurations of n agents on a sphere, torus, or phase circle are compared
by the worst-case agent-matching cost minimized over the ambient symmetry
group and relabelings. Vietoris-Rips persistence of the induced inter-agent
metric space gives signatures that move no faster than that distance, which
is what makes certified monitoring possible; on a labeled semicircle
stratum the degree-0 signature controls the distance from both sides.
"""

from .alignment import (
    AlignmentResult,
    SolverOptions,
    circle_exact_distance,
    formation_distance,
    gh_correspondence_distortion,
    grid_oracle,
    so3_multistart,
    torus_multistart,
)
from .assignment import bottleneck_assignment, bottleneck_value, feasibility_at
from .counterexamples import (
    sphere_reflection_pair,
    sphere_two_point_pair,
    torus_mst_pair,
)
from .diagrams import StabilityReport, bottleneck_distance, stability_check
from .errors import (
    DegenerateConfigurationError,
    DegenerateGeodesicError,
    FormetricError,
    InvalidInputError,
    NotSemicircleError,
    ParseError,
    UnsupportedInstanceError,
)
from .formation import (
    Configuration,
    DistanceMatrix,
    LabeledAction,
    alignment_cost,
    apply_action,
    chebyshev_distance,
    has_collision,
    induced_distance_matrix,
    random_configuration,
)
from .monitor import MonitorReport, Trajectory, monitor
from .phase_circle import (
    AnchoredLift,
    GapLabeling,
    InverseBoundReport,
    check_gap_labeling,
    gap_vector,
    inverse_bound_check,
    reconstruct_from_gaps,
    semicircle_support,
)
from .quotient import MetricAxiomReport, metric_axiom_sampler, quotient_geodesic
from .rips import (
    MstSummary,
    PersistenceDiagram,
    h0_diagram,
    mst,
    rips_diagram,
    signature,
)
from .spaces import (
    AmbientSpace,
    apply_group,
    circle,
    geodesic_point,
    point_distance,
    sample,
    sphere2,
    torus,
)
from .verify import VerifyReport, verify_all

__version__ = "0.1.0"

__all__ = [
    "AlignmentResult",
    "AmbientSpace",
    "AnchoredLift",
    "Configuration",
    "DegenerateConfigurationError",
    "DegenerateGeodesicError",
    "DistanceMatrix",
    "FormetricError",
    "GapLabeling",
    "InvalidInputError",
    "InverseBoundReport",
    "LabeledAction",
    "MetricAxiomReport",
    "MonitorReport",
    "MstSummary",
    "NotSemicircleError",
    "ParseError",
    "PersistenceDiagram",
    "SolverOptions",
    "StabilityReport",
    "Trajectory",
    "UnsupportedInstanceError",
    "VerifyReport",
    "alignment_cost",
    "apply_action",
    "apply_group",
    "bottleneck_assignment",
    "bottleneck_distance",
    "bottleneck_value",
    "chebyshev_distance",
    "check_gap_labeling",
    "circle",
    "circle_exact_distance",
    "feasibility_at",
    "formation_distance",
    "gap_vector",
    "geodesic_point",
    "gh_correspondence_distortion",
    "grid_oracle",
    "h0_diagram",
    "has_collision",
    "induced_distance_matrix",
    "inverse_bound_check",
    "metric_axiom_sampler",
    "monitor",
    "mst",
    "point_distance",
    "quotient_geodesic",
    "random_configuration",
    "reconstruct_from_gaps",
    "rips_diagram",
    "sample",
    "semicircle_support",
    "signature",
    "so3_multistart",
    "sphere2",
    "sphere_reflection_pair",
    "sphere_two_point_pair",
    "stability_check",
    "torus",
    "torus_multistart",
    "torus_mst_pair",
    "verify_all",
]
