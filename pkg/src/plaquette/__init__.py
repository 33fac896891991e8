"""Coupled-mode scattering simulator for a driven optomechanical plaquette.

Two optical and two mechanical modes form a closed loop whose coupling
phases enclose a synthetic flux.  The package solves the classical steady
state, linearizes around it, builds the 4x4 fluctuation dynamics matrix,
and computes frequency-resolved port scattering, both by direct inversion
and from hand-derived closed forms that cross-validate it.  On top sit
nonreciprocity metrics (isolation, directional-routing classification)
and a deterministic sweep engine with a CSV interchange format.
"""

__version__ = "0.1.0"

from .errors import (
    AmbiguousRouting,
    BasisError,
    EigenFailure,
    InvalidParameter,
    NonConvergence,
    ParseError,
    PlaquetteError,
    RegimeViolationWarning,
    RotatingWaveWarning,
    SingularMatrix,
    UnitarityWarning,
    UnstablePoint,
    ValidationError,
)
from .model import (
    LinearizedSystem,
    PlaquetteParams,
    SteadyState,
    linearize,
    linearized_direct,
    solve_steady_state,
    steady_state_residual,
)
from .dynamics import (
    Basis,
    DynamicsMatrix,
    StabilityReport,
    build_dynamics_matrix,
    stability_report,
    to_normal_mode,
)
from .scattering import (
    DiscrepancyReport,
    ScatteringResult,
    analytical_scattering,
    scattering_matrix,
    verify_closed_forms,
)
from .routing import (
    InhibitionCell,
    InhibitionGrid,
    RoutingVerdict,
    classify_direction,
    flux_reversed,
    inhibited_path_grid,
    isolation_db,
    optimal_preset,
)
from .sweep import (
    FIGDATA_NAMES,
    SweepAxis,
    SweepSpec,
    SweepTable,
    figdata,
    run_sweep,
    write_csv,
)
from .config import parse_config

__all__ = [
    "__version__",
    "AmbiguousRouting",
    "Basis",
    "BasisError",
    "DiscrepancyReport",
    "DynamicsMatrix",
    "EigenFailure",
    "FIGDATA_NAMES",
    "InhibitionCell",
    "InhibitionGrid",
    "InvalidParameter",
    "LinearizedSystem",
    "NonConvergence",
    "ParseError",
    "PlaquetteError",
    "PlaquetteParams",
    "RegimeViolationWarning",
    "RotatingWaveWarning",
    "RoutingVerdict",
    "ScatteringResult",
    "SingularMatrix",
    "StabilityReport",
    "SteadyState",
    "SweepAxis",
    "SweepSpec",
    "SweepTable",
    "UnitarityWarning",
    "UnstablePoint",
    "ValidationError",
    "analytical_scattering",
    "build_dynamics_matrix",
    "classify_direction",
    "figdata",
    "flux_reversed",
    "inhibited_path_grid",
    "isolation_db",
    "linearize",
    "linearized_direct",
    "optimal_preset",
    "parse_config",
    "run_sweep",
    "scattering_matrix",
    "solve_steady_state",
    "stability_report",
    "steady_state_residual",
    "to_normal_mode",
    "verify_closed_forms",
    "write_csv",
]
