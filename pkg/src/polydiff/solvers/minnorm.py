"""Wolfe's minimum-norm-point algorithm over the convex hull of a point list."""

from __future__ import annotations

import numpy as np

from ..errors import NumericalFailure
from ..sets import DEFAULT_TOL, Tolerances, VPolytope
from .projection import ProjectionResult

_WEIGHT_EPS = 1e-14


def _affine_minimizer(Q):
    """Coefficients u (sum 1) minimizing ||u @ Q|| over the affine hull of the rows of Q."""
    if Q.shape[0] == 1:
        return np.ones(1)
    E = (Q[1:] - Q[0]).T
    t = np.linalg.lstsq(E, -Q[0], rcond=None)[0]
    return np.concatenate([[1.0 - t.sum()], t])


def min_norm_point(points, tol: Tolerances = DEFAULT_TOL):
    """Run Wolfe's method on the rows of ``points``.

    Returns ``(x, weights, iterations, certified)`` where ``weights`` are
    convex coefficients with ``x == weights @ points``.  The run stops once
    ``||x||**2 - min_i <x, p_i> <= opt_tol * max(1, ||x||**2)``.
    """
    Pts = np.asarray(points, dtype=float)
    m = Pts.shape[0]
    sq = np.einsum("ij,ij->i", Pts, Pts)
    start = int(np.argmin(sq))
    corral = [start]
    w = np.ones(1)
    x = Pts[start].copy()
    it = 0
    while True:
        xx = float(x @ x)
        prods = Pts @ x
        j = int(np.argmin(prods))
        gap = xx - float(prods[j])
        if gap <= tol.opt_tol * max(1.0, xx):
            return x, _scatter(m, corral, w), it, True
        if j in corral:
            # no progress possible in floating point
            return x, _scatter(m, corral, w), it, False
        corral.append(j)
        w = np.append(w, 0.0)
        while True:
            it += 1
            if it > tol.max_iter:
                raise NumericalFailure(
                    "min-norm-point iteration cap exceeded",
                    best=(x, _scatter(m, corral, w)),
                )
            u = _affine_minimizer(Pts[corral])
            if np.all(u > _WEIGHT_EPS):
                w = u
                x = w @ Pts[corral]
                break
            drop = u <= _WEIGHT_EPS
            dec = drop & (w - u > 0)
            theta = float(np.min(w[dec] / (w[dec] - u[dec]))) if np.any(dec) else 0.0
            theta = min(max(theta, 0.0), 1.0)
            w = theta * u + (1.0 - theta) * w
            w[w <= _WEIGHT_EPS] = 0.0
            keep = w > 0.0
            corral = [c for c, kp in zip(corral, keep) if kp]
            w = w[keep]
            w = w / w.sum()
            x = w @ Pts[corral]
            if len(corral) == 1:
                break


def _scatter(m, corral, w):
    full = np.zeros(m)
    full[corral] = w
    return full


def min_norm_point_vrep(P: VPolytope, tol: Tolerances = DEFAULT_TOL) -> ProjectionResult:
    """Projection of the origin onto ``conv(P.vertices)`` with convex-coefficient witness."""
    x, weights, it, certified = min_norm_point(P.vertices, tol)
    return ProjectionResult(x, float(np.linalg.norm(x)), weights, it, certified)
