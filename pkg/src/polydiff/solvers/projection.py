"""Euclidean projection of the origin onto an H-polyhedron.

The workhorse is Hildreth's dual coordinate ascent for

    minimize 0.5 * sum(q * z**2) + g @ z   subject to  D @ z <= rhs

with a positive diagonal ``q``.  Every few sweeps the rows carrying a
positive multiplier are taken as an active-set guess and the equality
constrained KKT system is solved directly; if that solution is primal and
dual feasible it is exact and the iteration stops with a certificate.

Projections where only part of the variables enter the objective (the lifted
difference system) are handled by a proximal-point outer loop on the
remaining variables.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..errors import EmptySetError, NumericalFailure
from ..sets import DEFAULT_TOL, HPolyhedron, Tolerances
from .simplex import linprog


@dataclass(frozen=True)
class ProjectionResult:
    """Nearest point to the origin in a convex set.

    ``witness`` holds convex coefficients over the generators for V-polytopes
    and constraint multipliers for H-polyhedra.
    """

    point: np.ndarray
    distance: float
    witness: Optional[np.ndarray]
    iterations: int
    certified: bool
    aux: Optional[np.ndarray] = None  # witness block y for lifted systems


def _kkt_active(qdiag, g, D, rhs, active, tol):
    """Exact solution for a guessed active set, or None if it fails the KKT test."""
    idx = np.nonzero(active)[0]
    lam = np.zeros(D.shape[0])
    if idx.size:
        DS = D[idx]
        M = (DS / qdiag) @ DS.T
        r = -rhs[idx] - DS @ (g / qdiag)
        lam_S = np.linalg.lstsq(M, r, rcond=None)[0]
        scale = max(1.0, float(np.max(np.abs(lam_S))))
        if np.any(lam_S < -tol.opt_tol * scale * 1e2):
            return None
        lam[idx] = np.maximum(lam_S, 0.0)
    z = -(g + D.T @ lam) / qdiag
    slack = D @ z - rhs
    if np.any(slack > tol.feas_tol):
        return None
    if idx.size and np.any(np.abs(slack[idx]) > tol.feas_tol):
        return None
    return z, lam


def hildreth(qdiag, g, D, rhs, tol: Tolerances = DEFAULT_TOL, lam0=None):
    """Solve the diagonal QP above; returns ``(z, lam, sweeps)``.

    Raises NumericalFailure (with the last iterate) when ``tol.max_iter``
    sweeps pass without a certified active set.
    """
    qdiag = np.asarray(qdiag, dtype=float)
    g = np.asarray(g, dtype=float)
    D = np.asarray(D, dtype=float)
    rhs = np.asarray(rhs, dtype=float)
    r = D.shape[0]
    lam = np.zeros(r) if lam0 is None else np.array(lam0, dtype=float)
    Dq = D / qdiag
    denom = np.einsum("ij,ij->i", D, Dq)
    z = -(g + D.T @ lam) / qdiag

    # unconstrained minimizer may already be feasible
    hit = _kkt_active(qdiag, g, D, rhs, lam > 0, tol)
    if hit is not None:
        return hit[0], hit[1], 0

    for sweep in range(1, tol.max_iter + 1):
        for k in range(r):
            step = (D[k] @ z - rhs[k]) / denom[k]
            new = lam[k] + step
            if new < 0.0:
                new = 0.0
            delta = new - lam[k]
            if delta != 0.0:
                lam[k] = new
                z -= delta * Dq[k]
        if sweep <= 20 or sweep % 10 == 0:
            hit = _kkt_active(qdiag, g, D, rhs, lam > 0, tol)
            if hit is not None:
                return hit[0], hit[1], sweep
            near = lam > 0
            near |= np.abs(D @ z - rhs) <= max(1e-6, tol.feas_tol)
            hit = _kkt_active(qdiag, g, D, rhs, near, tol)
            if hit is not None:
                return hit[0], hit[1], sweep
    raise NumericalFailure("Hildreth iteration cap exceeded", best=(z, lam))


def _require_feasible(D, rhs, tol):
    res = linprog(
        np.zeros(D.shape[1]), A_ub=D, b_ub=rhs,
        feas_tol=tol.feas_tol, opt_tol=tol.opt_tol, max_iter=tol.max_iter,
    )
    if not res.optimal:
        raise EmptySetError("constraint system is infeasible")
    return res.x_opt


def project_origin_hrep(P: HPolyhedron, tol: Tolerances = DEFAULT_TOL) -> ProjectionResult:
    """Projection of the origin onto ``P``, certified by KKT multipliers."""
    _require_feasible(P.A, P.b, tol)
    n = P.dim
    try:
        z, lam, sweeps = hildreth(np.ones(n), np.zeros(n), P.A, P.b, tol)
    except NumericalFailure as exc:
        z, lam = exc.best
        raise NumericalFailure(
            "projection onto H-polyhedron did not certify",
            best=ProjectionResult(z, float(np.linalg.norm(z)), lam, tol.max_iter, False),
        ) from None
    return ProjectionResult(z, float(np.linalg.norm(z)), lam, sweeps, True)


def project_origin_masked(D, rhs, mask, tol: Tolerances = DEFAULT_TOL, z0=None, rho: float = 1.0):
    """Minimize ``0.5 * ||z[mask]||**2`` over ``D @ z <= rhs``.

    Returns ``(z, lam, iterations)``.  The free block is regularized by a
    proximal term that is re-centred until the unregularized KKT system can
    be certified.
    """
    D = np.asarray(D, dtype=float)
    rhs = np.asarray(rhs, dtype=float)
    mask = np.asarray(mask, dtype=bool)
    z_c = _require_feasible(D, rhs, tol) if z0 is None else np.array(z0, dtype=float)
    qdiag = np.where(mask, 1.0, rho)
    hdiag = mask.astype(float)
    lam = None
    total = 0
    n_var = D.shape[1]
    for outer in range(tol.max_iter):
        g = np.where(mask, 0.0, -rho * z_c)
        z, lam, sweeps = hildreth(qdiag, g, D, rhs, tol, lam0=lam)
        total += sweeps + 1
        exact = _kkt_singular(hdiag, D, rhs, lam > 0, tol)
        if exact is not None:
            return exact[0], exact[1], total
        if np.max(np.abs(z - z_c)) <= tol.opt_tol * max(1.0, float(np.max(np.abs(z)))):
            # prox fixed point: inner multipliers already certify the original problem
            stat = hdiag * z + D.T @ lam
            if np.max(np.abs(stat)) <= 1e3 * tol.opt_tol * max(1.0, float(np.max(np.abs(z)))):
                return z, lam, total
        z_c = z
        if total > tol.max_iter:
            break
    raise NumericalFailure("proximal projection did not certify", best=(z_c[:n_var], lam))


def _kkt_singular(hdiag, D, rhs, active, tol):
    """Active-set KKT solve for a positive semidefinite diagonal objective."""
    idx = np.nonzero(active)[0]
    n = D.shape[1]
    k = idx.size
    DS = D[idx]
    K = np.zeros((n + k, n + k))
    K[:n, :n] = np.diag(hdiag)
    K[:n, n:] = DS.T
    K[n:, :n] = DS
    r = np.concatenate([np.zeros(n), rhs[idx]])
    sol = np.linalg.lstsq(K, r, rcond=None)[0]
    if np.max(np.abs(K @ sol - r)) > tol.feas_tol:
        return None
    z, lam_S = sol[:n], sol[n:]
    scale = max(1.0, float(np.max(np.abs(lam_S))) if k else 1.0)
    if k and np.any(lam_S < -1e2 * tol.opt_tol * scale):
        return None
    if np.any(D @ z - rhs > tol.feas_tol):
        return None
    lam = np.zeros(D.shape[0])
    lam[idx] = np.maximum(lam_S, 0.0)
    return z, lam
