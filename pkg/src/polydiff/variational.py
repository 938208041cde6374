"""Variational inequalities tied to linear separability of two convex sets.

Each problem asks for a nonzero ``c`` such that, for every ``z`` in ``A - B``,

* strong: ``<c, z> >= delta`` with ``delta > 0``;
* omega:  ``<c, z - c> >= 0``;
* weak:   ``<c, z> >= 0``.

Residuals are exact: the infimum over ``A - B`` is evaluated with the
support function of the difference set rather than by sampling.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .separability import Category, _as_operand, difference, locate_difference, project_difference
from .sets import DEFAULT_TOL, Tolerances, VPolytope
from .solvers import support_inf


@dataclass(frozen=True)
class VIOutcome:
    """Solvability verdict with witness ``c`` and its worst-case residual.

    ``certified`` is False when the pairing does not guarantee a closed
    difference set (two unbounded H-polyhedra).
    """

    solvable: bool
    witness: Optional[np.ndarray]
    certificate: str
    residual: float
    certified: bool = True


def difference_inf(A, B, c, tol: Tolerances = DEFAULT_TOL) -> float:
    """``inf over z in A - B of <c, z>``, i.e. ``inf_A <c, a> - sup_B <c, b>``."""
    S, flipped = difference(A, B, tol)
    if flipped:
        # S = B - A, so inf over A - B of <c, z> = inf over S of <-c, z>
        return support_inf(S, -np.asarray(c, dtype=float), tol)
    return support_inf(S, c, tol)


def _closed(A, B, tol) -> bool:
    """Whether ``A - B`` is guaranteed closed: true unless both operands are unbounded."""
    A, B = _as_operand(A), _as_operand(B)
    return _bounded(A, tol) or _bounded(B, tol)


def _bounded(S, tol) -> bool:
    if isinstance(S, VPolytope):
        return True
    n = S.dim
    for j in range(n):
        for sgn in (1.0, -1.0):
            c = np.zeros(n)
            c[j] = sgn
            if support_inf(S, c, tol) == -np.inf:
                return False
    return True


def solve_vi_strong(A, B, delta: float, tol: Tolerances = DEFAULT_TOL) -> VIOutcome:
    """Solve ``<c, z> >= delta`` on ``A - B`` via the projection ``P`` of the origin.

    ``c = delta * P / ||P||**2`` works because ``inf <P, z> = ||P||**2``.
    """
    if not delta > 0:
        raise ValueError("delta must be positive")
    proj = project_difference(A, B, tol)
    if proj.distance <= tol.feas_tol:
        return VIOutcome(False, None, "0 in A - B", 0.0)
    c = (delta / proj.distance**2) * proj.point
    residual = difference_inf(A, B, c, tol) - delta
    return VIOutcome(True, c, "0 not in A - B; c = delta * P(0) / ||P(0)||^2", float(residual))


def solve_vi_omega(A, B, tol: Tolerances = DEFAULT_TOL) -> VIOutcome:
    """Solve ``<c, z - c> >= 0`` on ``A - B`` with ``c = P_{A-B}(0)``."""
    closed = _closed(A, B, tol)
    proj = project_difference(A, B, tol)
    if proj.distance <= tol.feas_tol:
        return VIOutcome(False, None, "Omega_{A-B} = {0} <=> 0 in A - B", 0.0, closed)
    c = proj.point
    residual = difference_inf(A, B, c, tol) - float(c @ c)
    return VIOutcome(True, c, "c = P_{A-B}(0) != 0", float(residual), closed)


def solve_vi_weak(A, B, tol: Tolerances = DEFAULT_TOL, seed: int = 0) -> VIOutcome:
    """Solve ``<c, z> >= 0`` on ``A - B``; solvable iff the origin is not interior."""
    loc = locate_difference(A, B, tol, seed)
    if loc.category is Category.INTERIOR:
        return VIOutcome(False, None, "0 in int(A - B)", float(loc.margin))
    c = loc.direction
    residual = difference_inf(A, B, c, tol)
    return VIOutcome(True, c, f"0 not in int(A - B) ({loc.category.value})", float(residual))

