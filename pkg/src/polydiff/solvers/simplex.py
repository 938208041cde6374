"""Dense two-phase simplex method with Bland's anti-cycling rule.

The solver works on plain arrays so that the set types can use it for
membership tests without importing anything heavier.  Problems have the form

    minimize    c @ x
    subject to  A_ub @ x <= b_ub
                A_eq @ x == b_eq
                x[j] >= 0 for j with nonneg[j], otherwise x[j] free.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..errors import DimensionMismatch, NumericalFailure

PIVOT_TOL = 1e-11


class LPStatus(enum.Enum):
    OPTIMAL = "Optimal"
    INFEASIBLE = "Infeasible"
    UNBOUNDED = "Unbounded"


@dataclass(frozen=True)
class LPResult:
    """Outcome of a linear program.

    ``x_opt`` and ``objective`` are set only for optimal problems.  The dual
    values follow the sign convention of a minimization with ``<=`` rows, so
    ``duals_ub <= 0`` and ``c == A_ub.T @ duals_ub + A_eq.T @ duals_eq`` on the
    free variables.
    """

    status: LPStatus
    x_opt: Optional[np.ndarray] = None
    objective: Optional[float] = None
    duals_ub: Optional[np.ndarray] = None
    duals_eq: Optional[np.ndarray] = None
    iterations: int = 0

    @property
    def optimal(self) -> bool:
        return self.status is LPStatus.OPTIMAL


def _as_block(A, b, n, name):
    if A is None:
        return np.zeros((0, n)), np.zeros(0)
    A = np.atleast_2d(np.asarray(A, dtype=float))
    b = np.atleast_1d(np.asarray(b, dtype=float))
    if A.size == 0:
        return np.zeros((0, n)), np.zeros(0)
    if A.shape[1] != n or A.shape[0] != b.shape[0]:
        raise DimensionMismatch(f"{name} has shape {A.shape}, rhs {b.shape}, expected {n} columns")
    return A, b


class _Tableau:
    """Dense tableau; the last row holds reduced costs, the last column the rhs."""

    def __init__(self, T, basis, n_structural, max_iter):
        self.T = T
        self.basis = basis
        self.n_structural = n_structural  # columns allowed to enter
        self.max_iter = max_iter
        self.iterations = 0

    def pivot(self, row, col):
        T = self.T
        T[row] /= T[row, col]
        colvals = T[:, col].copy()
        colvals[row] = 0.0
        nz = np.nonzero(np.abs(colvals) > 0.0)[0]
        if nz.size:
            T[nz] -= np.outer(colvals[nz], T[row])
        self.basis[row] = col

    def run(self, opt_tol):
        """Pivot until optimal; returns False if the problem is unbounded."""
        T = self.T
        m = T.shape[0] - 1
        while True:
            if self.iterations >= self.max_iter:
                raise NumericalFailure("simplex iteration cap exceeded")
            reduced = T[m, : self.n_structural]
            candidates = np.nonzero(reduced < -opt_tol)[0]
            if candidates.size == 0:
                return True
            col = int(candidates[0])
            column = T[:m, col]
            positive = np.nonzero(column > PIVOT_TOL)[0]
            if positive.size == 0:
                return False
            ratios = T[positive, -1] / column[positive]
            best = ratios.min()
            ties = positive[ratios <= best + 1e-12 * max(1.0, abs(best))]
            row = int(min(ties, key=lambda i: self.basis[i]))
            self.pivot(row, col)
            self.iterations += 1


def linprog(
    c,
    A_ub=None,
    b_ub=None,
    A_eq=None,
    b_eq=None,
    nonneg=None,
    feas_tol: float = 1e-9,
    opt_tol: float = 1e-10,
    max_iter: int = 200_000,
) -> LPResult:
    """Solve a dense LP with the two-phase simplex method.

    Raises
    ------
    DimensionMismatch
        If the blocks disagree on the number of variables.
    NumericalFailure
        If the pivot count exceeds ``max_iter``.
    """
    c = np.atleast_1d(np.asarray(c, dtype=float))
    n = c.shape[0]
    A_ub, b_ub = _as_block(A_ub, b_ub, n, "A_ub")
    A_eq, b_eq = _as_block(A_eq, b_eq, n, "A_eq")
    if nonneg is None:
        nonneg = np.zeros(n, dtype=bool)
    nonneg = np.asarray(nonneg, dtype=bool)
    if nonneg.shape != (n,):
        raise DimensionMismatch("nonneg mask must have one entry per variable")

    # structural columns: x+ for every variable, x- for free ones
    free_idx = np.nonzero(~nonneg)[0]
    n_split = n + free_idx.size
    r_ub, r_eq = A_ub.shape[0], A_eq.shape[0]
    m = r_ub + r_eq

    def split(A):
        return np.hstack([A, -A[:, free_idx]])

    c_std = np.concatenate([c, -c[free_idx]])
    rows = np.vstack([split(A_ub), split(A_eq)]) if m else np.zeros((0, n_split))
    rhs = np.concatenate([b_ub, b_eq])
    sign = np.where(rhs < 0, -1.0, 1.0)

    # columns: structural | slack (one per ub row) | artificial (one per row)
    n_cols = n_split + r_ub + m
    T = np.zeros((m + 1, n_cols + 1))
    T[:m, :n_split] = rows * sign[:, None]
    T[np.arange(r_ub), n_split + np.arange(r_ub)] = sign[:r_ub]
    T[np.arange(m), n_split + r_ub + np.arange(m)] = 1.0
    T[:m, -1] = rhs * sign

    basis = []
    needs_artificial = []
    for i in range(m):
        if i < r_ub and sign[i] > 0:
            basis.append(n_split + i)
        else:
            basis.append(n_split + r_ub + i)
            needs_artificial.append(i)
    art_start = n_split + r_ub

    # phase 1: minimize the sum of artificials
    tab = _Tableau(T, basis, art_start, max_iter)
    if needs_artificial:
        T[m, art_start:n_cols] = 0.0
        T[m, [art_start + i for i in needs_artificial]] = 1.0
        for i in needs_artificial:
            T[m] -= T[i]
        tab.run(opt_tol)
        if -T[m, -1] > feas_tol:
            return LPResult(LPStatus.INFEASIBLE, iterations=tab.iterations)
        # drive remaining artificials out of the basis
        drop = []
        for i in range(m):
            if tab.basis[i] >= art_start:
                cand = np.nonzero(np.abs(T[i, :art_start]) > PIVOT_TOL)[0]
                if cand.size:
                    tab.pivot(i, int(cand[0]))
                else:
                    drop.append(i)
        if drop:
            keep = [i for i in range(m) if i not in drop] + [m]
            tab.T = T = T[keep]
            tab.basis = [tab.basis[i] for i in keep[:-1]]
        m = T.shape[0] - 1
        T[:m, -1] = np.maximum(T[:m, -1], 0.0)

    # phase 2
    T[m, :] = 0.0
    T[m, :n_split] = c_std
    for i, bcol in enumerate(tab.basis):
        if bcol < n_split and c_std[bcol] != 0.0:
            T[m] -= c_std[bcol] * T[i]
    if not tab.run(opt_tol):
        return LPResult(LPStatus.UNBOUNDED, iterations=tab.iterations)

    x_std = np.zeros(n_cols)
    for i, bcol in enumerate(tab.basis):
        x_std[bcol] = T[i, -1]
    x = x_std[:n].copy()
    x[free_idx] -= x_std[n:n_split]

    # duals from the reduced costs of the slack/artificial identity columns
    reduced = T[m, :n_cols]
    y_ub = -reduced[n_split:art_start]
    y_eq = -reduced[art_start + r_ub : n_cols] * sign[r_ub:]
    return LPResult(
        LPStatus.OPTIMAL,
        x_opt=x,
        objective=float(c @ x),
        duals_ub=y_ub,
        duals_eq=y_eq,
        iterations=tab.iterations,
    )
