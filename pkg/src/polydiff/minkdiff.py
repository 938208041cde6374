"""Minkowski difference constructors for every supported representation pair.

``A - B`` means the pairwise difference set ``{a - b : a in A, b in B}``.  The
one exception is the same-rows H/V form (:func:`hrep_minus_vrep` and its raw
variant), which describes ``{x : x + conv(M) inside P}``; that set agrees with
the pairwise difference for a single-point ``M`` and is a subset of it in
general.  :func:`hrep_minus_vrep_lifted` gives the exact pairwise difference.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import DimensionMismatch, EmptySetError
from .sets import (
    DEFAULT_TOL,
    BallSet,
    BoxSet,
    HPolyhedron,
    Tolerances,
    VPolytope,
    as_vec,
    contains_v,
    is_feasible,
)
from .solvers.simplex import LPStatus, linprog


def _same_dim(P, Q):
    if P.dim != Q.dim:
        raise DimensionMismatch(f"operands have dimensions {P.dim} and {Q.dim}")


def _require_nonempty(P: HPolyhedron, tol: Tolerances):
    if not is_feasible(P, tol):
        raise EmptySetError("H-polyhedron operand is empty")


def vrep_minus_vrep(L: VPolytope, M: VPolytope) -> VPolytope:
    """Hull of all ``z_i - p_j``; row order is ``i``-major, ``j``-minor, no reduction."""
    _same_dim(L, M)
    Z, P = L.vertices, M.vertices
    return VPolytope((Z[:, None, :] - P[None, :, :]).reshape(-1, L.dim))


def reduce_vrep(P: VPolytope, tol: Tolerances = DEFAULT_TOL) -> VPolytope:
    """Drop duplicate generators and every generator lying in the hull of the others.

    One LP per generator; the hull is unchanged.  Generators are tested in
    order against the current survivor list, so of several coincident-hull
    candidates the later ones go first.
    """
    V = P.vertices
    keep = []
    for i, v in enumerate(V):
        if not any(np.max(np.abs(v - V[j])) <= tol.feas_tol for j in keep):
            keep.append(i)
    idx = list(keep)
    k = 0
    while k < len(idx) and len(idx) > 1:
        others = [j for j in idx if j != idx[k]]
        if contains_v(VPolytope(V[others]), V[idx[k]], tol):
            idx.pop(k)
        else:
            k += 1
    return VPolytope(V[idx])


def hrep_minus_point(P: HPolyhedron, p, tol: Tolerances = DEFAULT_TOL) -> HPolyhedron:
    """Translate ``P`` by ``-p``: right-hand sides become ``b_k - <a_k, p>``."""
    p = as_vec(p, P.dim)
    _require_nonempty(P, tol)
    return HPolyhedron(P.A, P.b - P.A @ p)


def orthant_minus_point(n: int, p) -> HPolyhedron:
    """Nonnegative orthant shifted by ``-p``, encoded as ``-x_j <= p_j``."""
    p = as_vec(p, n)
    return HPolyhedron(-np.eye(n), p.copy())


def box_minus_point(B: BoxSet, p) -> BoxSet:
    p = as_vec(p, B.dim)
    return BoxSet(B.lower - p, B.upper - p)


def ball_minus_point(B: BallSet, p) -> BallSet:
    p = as_vec(p, B.dim)
    return BallSet(B.center - p, B.radius)


def hrep_minus_vrep_raw(P: HPolyhedron, M: VPolytope, tol: Tolerances = DEFAULT_TOL) -> HPolyhedron:
    """Overdetermined form: one shifted copy of every row per generator.

    Row ``k * m + j`` is ``a_k @ x <= b_k - a_k @ p_j``.  The result is the
    set of ``x`` with ``x + p`` in ``P`` for every ``p`` in ``conv(M)``; it equals
    the pairwise difference only when ``M`` is a single point, and is
    contained in it otherwise (see :func:`hrep_minus_vrep_lifted`).
    """
    _same_dim(P, M)
    _require_nonempty(P, tol)
    shifts = P.A @ M.vertices.T  # (r, m)
    rhs = (P.b[:, None] - shifts).reshape(-1)
    A = np.repeat(P.A, M.vertices.shape[0], axis=0)
    return HPolyhedron(A, rhs)


def hrep_minus_vrep(
    P: HPolyhedron, M: VPolytope, raw: bool = False, tol: Tolerances = DEFAULT_TOL
) -> HPolyhedron:
    """Row-wise reduction of the overdetermined form, same rows as ``P``.

    Right-hand sides become ``s_k = b_k - max_j <a_k, p_j>``; the point set is
    identical to :func:`hrep_minus_vrep_raw`.  Pass ``raw=True`` for that form.
    """
    if raw:
        return hrep_minus_vrep_raw(P, M, tol)
    _same_dim(P, M)
    _require_nonempty(P, tol)
    s = P.b - np.max(P.A @ M.vertices.T, axis=1)
    return HPolyhedron(P.A, s)


@dataclass(frozen=True, eq=False)
class LiftedDifference:
    """Block system ``D @ (x | w) <= rhs`` whose projection on ``x`` is a difference set.

    For two H-polyhedra ``D = [[A1, A1], [0, A2]]`` and ``rhs = (b1 | b2)``,
    with the witness ``w = y`` in the second operand.  When the second operand
    is a V-polytope (``generators`` is set), ``w`` holds all convex weights
    but the last, see :func:`hrep_minus_vrep_lifted`.
    """

    system: HPolyhedron
    n: int
    n_first: int  # rows coming from the first operand
    generators: Optional[np.ndarray] = None

    @property
    def dim(self) -> int:
        return self.n

    @property
    def aux_dim(self) -> int:
        return self.system.dim - self.n

    @property
    def diff_block(self) -> slice:
        return slice(0, self.n)

    @property
    def aux_block(self) -> slice:
        return slice(self.n, self.system.dim)

    @property
    def D(self) -> np.ndarray:
        return self.system.A

    @property
    def rhs(self) -> np.ndarray:
        return self.system.b

    def first(self) -> HPolyhedron:
        """The first operand ``A1 x <= b1``."""
        return HPolyhedron(self.D[: self.n_first, : self.n], self.rhs[: self.n_first])

    def second(self):
        """The second operand (H-polyhedron, or V-polytope for the mixed lift)."""
        if self.generators is not None:
            return VPolytope(self.generators)
        return HPolyhedron(self.D[self.n_first :, self.n :], self.rhs[self.n_first :])

    def witness_point(self, aux) -> np.ndarray:
        """Point of the second operand encoded by an aux-block value."""
        aux = np.asarray(aux, dtype=float)
        if self.generators is None:
            return aux
        V = self.generators
        return V[-1] + aux @ (V[:-1] - V[-1])

    def fixed_x(self, u):
        """Constraints on the aux block once ``x = u`` is substituted: ``(G, h)`` with ``G w <= h``."""
        u = as_vec(u, self.n)
        return self.D[:, self.n :], self.rhs - self.D[:, : self.n] @ u

    def support_inf(self, c, tol: Tolerances = DEFAULT_TOL) -> float:
        """``inf <c, x>`` over the difference set (``-inf`` if unbounded)."""
        c = as_vec(c, self.n, name="direction")
        res = linprog(
            np.concatenate([c, np.zeros(self.aux_dim)]), A_ub=self.D, b_ub=self.rhs,
            feas_tol=tol.feas_tol, opt_tol=tol.opt_tol, max_iter=tol.max_iter,
        )
        if res.status is LPStatus.INFEASIBLE:
            raise EmptySetError("lifted difference system is infeasible")
        if res.status is LPStatus.UNBOUNDED:
            return -np.inf
        return float(res.objective)

    def __repr__(self):
        return f"LiftedDifference(n={self.n}, aux={self.aux_dim}, rows={self.system.n_rows})"


def hrep_minus_hrep_lifted(P: HPolyhedron, Q: HPolyhedron, tol: Tolerances = DEFAULT_TOL) -> LiftedDifference:
    """Lift ``P - Q`` to dimension ``2n`` without eliminating the witness block."""
    _same_dim(P, Q)
    _require_nonempty(P, tol)
    _require_nonempty(Q, tol)
    n = P.dim
    top = np.hstack([P.A, P.A])
    bottom = np.hstack([np.zeros((Q.n_rows, n)), Q.A])
    system = HPolyhedron(np.vstack([top, bottom]), np.concatenate([P.b, Q.b]))
    return LiftedDifference(system, n, P.n_rows)


def hrep_minus_vrep_lifted(P: HPolyhedron, M: VPolytope, tol: Tolerances = DEFAULT_TOL) -> LiftedDifference:
    """Pairwise difference ``{x - p : x in P, p in conv(M)}`` as a lifted system.

    The last generator is the base point and the aux block holds the
    remaining ``m - 1`` convex weights ``beta``:
    ``A (x + p_m + E.T beta) <= b``, ``beta >= 0``, ``sum(beta) <= 1`` with
    ``E`` the rows ``p_j - p_m``.  Keeping the simplex as inequalities only
    avoids opposing row pairs, which would make active sets degenerate.
    """
    _same_dim(P, M)
    _require_nonempty(P, tol)
    if len(M) == 1:
        raise ValueError("single-point second operand: use hrep_minus_point")
    n, m = P.dim, len(M) - 1
    V = M.vertices
    E = V[:-1] - V[-1]
    D = np.vstack([
        np.hstack([P.A, P.A @ E.T]),
        np.hstack([np.zeros((m, n)), -np.eye(m)]),
        np.hstack([np.zeros((1, n)), np.ones((1, m))]),
    ])
    rhs = np.concatenate([P.b - P.A @ V[-1], np.zeros(m), [1.0]])
    return LiftedDifference(HPolyhedron(D, rhs), n, P.n_rows, generators=V)


def diff_membership(L: LiftedDifference, u, tol: Tolerances = DEFAULT_TOL) -> bool:
    """True iff some witness ``y`` makes ``(u, y)`` feasible for the lifted system."""
    G, h = L.fixed_x(u)
    res = linprog(
        np.zeros(L.aux_dim), A_ub=G, b_ub=h,
        feas_tol=tol.feas_tol, opt_tol=tol.opt_tol, max_iter=tol.max_iter,
    )
    return res.optimal
