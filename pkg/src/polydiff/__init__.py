"""Exact Minkowski differences of convex polyhedra and the separability tools built on them."""

from .errors import DimensionMismatch, EmptySetError, InvalidSet, NumericalFailure, PolyDiffError
from .minkdiff import (
    LiftedDifference,
    ball_minus_point,
    box_minus_point,
    diff_membership,
    hrep_minus_hrep_lifted,
    hrep_minus_point,
    hrep_minus_vrep,
    hrep_minus_vrep_raw,
    orthant_minus_point,
    reduce_vrep,
    vrep_minus_vrep,
)
from .separability import (
    Category,
    Exactness,
    OriginLocation,
    SeparationReport,
    Verdict,
    classify_origin,
    distance,
    maximin_direction,
    nearest_points,
    project_origin,
    separate,
)
from .sets import (
    DEFAULT_TOL,
    BallSet,
    BoxSet,
    HPolyhedron,
    Tolerances,
    VPolytope,
    active_rows,
    contains_h,
    contains_v,
    is_feasible,
    orthant,
)
from .solvers import (
    LPResult,
    LPStatus,
    ProjectionResult,
    min_norm_point_vrep,
    project_origin_hrep,
    simplex_solve,
    support_inf,
)
from .variational import VIOutcome, solve_vi_omega, solve_vi_strong, solve_vi_weak

__version__ = "0.1.0"
