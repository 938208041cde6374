"""Dense numerical engines: simplex LP, H-polyhedron projection, min-norm point."""

from __future__ import annotations

import math

import numpy as np

from ..errors import DimensionMismatch, EmptySetError
from ..sets import DEFAULT_TOL, HPolyhedron, Tolerances, VPolytope, as_vec
from .minnorm import min_norm_point, min_norm_point_vrep
from .projection import ProjectionResult, hildreth, project_origin_hrep, project_origin_masked
from .simplex import LPResult, LPStatus, linprog

NEG_INF = -math.inf

__all__ = [
    "LPResult",
    "LPStatus",
    "NEG_INF",
    "ProjectionResult",
    "hildreth",
    "linprog",
    "min_norm_point",
    "min_norm_point_vrep",
    "project_origin_hrep",
    "project_origin_masked",
    "simplex_solve",
    "support_inf",
]


def simplex_solve(objective, P: HPolyhedron, extra_equalities=None, tol: Tolerances = DEFAULT_TOL) -> LPResult:
    """Minimize ``objective @ x`` over ``P`` (plus optional ``(a, beta)`` equalities ``a @ x == beta``)."""
    c = as_vec(objective, P.dim, name="objective")
    A_eq = b_eq = None
    if extra_equalities:
        A_eq = np.array([as_vec(a, P.dim, name="equality row") for a, _ in extra_equalities])
        b_eq = np.array([float(beta) for _, beta in extra_equalities])
    return linprog(
        c, A_ub=P.A, b_ub=P.b, A_eq=A_eq, b_eq=b_eq,
        feas_tol=tol.feas_tol, opt_tol=tol.opt_tol, max_iter=tol.max_iter,
    )


def support_inf(S, c, tol: Tolerances = DEFAULT_TOL) -> float:
    """``inf over x in S of <c, x>``; ``-inf`` when unbounded below.

    Raises EmptySetError for an infeasible H-polyhedron.
    """
    if isinstance(S, VPolytope):
        c = as_vec(c, S.dim, name="direction")
        return float(np.min(S.vertices @ c))
    if isinstance(S, HPolyhedron):
        res = simplex_solve(c, S, tol=tol)
        if res.status is LPStatus.INFEASIBLE:
            raise EmptySetError("support function of an empty polyhedron")
        if res.status is LPStatus.UNBOUNDED:
            return NEG_INF
        return float(res.objective)
    if hasattr(S, "support_inf"):
        return S.support_inf(c, tol)
    raise DimensionMismatch(f"unsupported set type {type(S).__name__}")
