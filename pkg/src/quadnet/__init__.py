"""Boundary value problems, gradient metrics and thick-path length bounds on
triangulated topological quadrilaterals."""

from .bounds import BoundsReport, ProofChainError, build_report, report_json
from .bvp import (
    BVPError,
    HarmonicSolution,
    LinearSystem,
    SingularSystemError,
    assemble,
    laplacian,
    residual_certificate,
    solve,
    solve_exact,
    solve_float,
)
from .io import QuadnetParseError, parse_quadnet, serialize_quadnet
from .mesh import (
    MeshError,
    Network,
    NoInteriorError,
    Triangulation,
    ValidationReport,
    derive_network,
    generate_grid,
    grid_id,
    unit_distance,
    validate,
)
from .paths import (
    EnumerationGuardError,
    NoThickPathError,
    Region,
    ThickPath,
    check_thick,
    enclosed_region,
    enumerate_thick_paths,
    path_length,
    shortest_thick_path,
)
from .potential import (
    GradientMetric,
    NetworkConstants,
    conductance_vector,
    differential,
    dirichlet_energy,
    gradient_metric,
    green_identity,
    network_constants,
    normal_derivative,
    normal_vector_derivative,
    region_network,
    restricted_gradient,
    weighted_norm_sq,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
