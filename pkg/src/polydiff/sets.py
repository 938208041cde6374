"""Value types for polytopes and polyhedra, plus membership predicates.

Points are plain float64 numpy arrays.  Every set type is an immutable
dataclass whose arrays are flagged read-only after validation.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DimensionMismatch, InvalidSet


@dataclass(frozen=True)
class Tolerances:
    """Numerical thresholds used throughout the library.

    feas_tol bounds constraint violation, opt_tol bounds optimality gaps and
    max_iter caps every iterative solver.
    """

    feas_tol: float = 1e-9
    opt_tol: float = 1e-10
    max_iter: int = 200_000

    def __post_init__(self):
        if not (self.feas_tol > 0 and self.opt_tol > 0):
            raise ValueError("tolerances must be positive")
        if int(self.max_iter) < 1:
            raise ValueError("max_iter must be at least 1")


DEFAULT_TOL = Tolerances()


def as_vec(x, dim: int | None = None, name: str = "point") -> np.ndarray:
    """Convert ``x`` to a finite 1-D float array, optionally checking its length."""
    v = np.array(x, dtype=float).reshape(-1)
    if v.size == 0:
        raise InvalidSet(f"{name} must have at least one coordinate")
    if not np.all(np.isfinite(v)):
        raise InvalidSet(f"{name} has non-finite coordinates")
    if dim is not None and v.shape[0] != dim:
        raise DimensionMismatch(f"{name} has dimension {v.shape[0]}, expected {dim}")
    return v


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=float)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class VPolytope:
    """Convex hull of a nonempty finite list of generators (one per row)."""

    vertices: np.ndarray

    def __post_init__(self):
        V = np.array(self.vertices, dtype=float)
        if V.ndim == 1:
            V = V.reshape(1, -1)
        if V.ndim != 2 or V.shape[0] == 0 or V.shape[1] == 0:
            raise InvalidSet("a VPolytope needs a nonempty (m, n) vertex array")
        if not np.all(np.isfinite(V)):
            raise InvalidSet("vertex coordinates must be finite")
        object.__setattr__(self, "vertices", _frozen(V))

    @property
    def dim(self) -> int:
        return self.vertices.shape[1]

    def __len__(self):
        return self.vertices.shape[0]

    def __repr__(self):
        return f"VPolytope({len(self)} generators, dim={self.dim})"


@dataclass(frozen=True, eq=False)
class HPolyhedron:
    """Intersection of half-spaces ``A @ x <= b``.

    Zero rows with ``b >= 0`` are vacuous and dropped; a zero row with
    ``b < 0`` is rejected as inconsistent.  The set itself may be empty or
    unbounded, use :func:`is_feasible` to find out.
    """

    A: np.ndarray
    b: np.ndarray

    def __post_init__(self):
        A = np.array(self.A, dtype=float)
        b = np.array(self.b, dtype=float).reshape(-1)
        if A.ndim == 1:
            A = A.reshape(1, -1)
        if A.ndim != 2 or A.shape[0] == 0 or A.shape[1] == 0:
            raise InvalidSet("an HPolyhedron needs a nonempty (r, n) constraint matrix")
        if A.shape[0] != b.shape[0]:
            raise DimensionMismatch(f"{A.shape[0]} constraint rows but {b.shape[0]} right-hand sides")
        if not (np.all(np.isfinite(A)) and np.all(np.isfinite(b))):
            raise InvalidSet("constraint data must be finite")
        zero = ~np.any(A != 0.0, axis=1)
        if np.any(zero & (b < 0)):
            raise InvalidSet("zero constraint row with negative right-hand side")
        if np.all(zero):
            raise InvalidSet("at least one constraint row must be nonzero")
        object.__setattr__(self, "A", _frozen(A[~zero]))
        object.__setattr__(self, "b", _frozen(b[~zero]))

    @property
    def dim(self) -> int:
        return self.A.shape[1]

    @property
    def n_rows(self) -> int:
        return self.A.shape[0]

    def __repr__(self):
        return f"HPolyhedron({self.n_rows} rows, dim={self.dim})"


@dataclass(frozen=True, eq=False)
class BoxSet:
    """Axis-aligned box ``lower <= x <= upper``."""

    lower: np.ndarray
    upper: np.ndarray

    def __post_init__(self):
        lo = as_vec(self.lower, name="lower")
        hi = as_vec(self.upper, dim=lo.shape[0], name="upper")
        if np.any(lo > hi):
            raise InvalidSet("box lower bound exceeds upper bound")
        object.__setattr__(self, "lower", _frozen(lo))
        object.__setattr__(self, "upper", _frozen(hi))

    @property
    def dim(self) -> int:
        return self.lower.shape[0]

    def contains(self, x, tol: Tolerances = DEFAULT_TOL) -> bool:
        x = as_vec(x, self.dim)
        return bool(np.all(x >= self.lower - tol.feas_tol) and np.all(x <= self.upper + tol.feas_tol))

    def to_hrep(self) -> HPolyhedron:
        """Rows ``x_i <= u_i`` for every axis, followed by ``-x_i <= -l_i``."""
        eye = np.eye(self.dim)
        return HPolyhedron(np.vstack([eye, -eye]), np.concatenate([self.upper, -self.lower]))

    def to_vrep(self) -> VPolytope:
        """All 2**n corners; corner k takes the upper bound on axis i iff bit i of k is set."""
        n = self.dim
        bits = (np.arange(2**n)[:, None] >> np.arange(n)) & 1
        return VPolytope(np.where(bits == 1, self.upper, self.lower))


@dataclass(frozen=True, eq=False)
class BallSet:
    """Closed Euclidean ball ``||x - center|| <= radius``."""

    center: np.ndarray
    radius: float

    def __post_init__(self):
        object.__setattr__(self, "center", _frozen(as_vec(self.center, name="center")))
        r = float(self.radius)
        if not (np.isfinite(r) and r >= 0):
            raise InvalidSet("ball radius must be finite and nonnegative")
        object.__setattr__(self, "radius", r)

    @property
    def dim(self) -> int:
        return self.center.shape[0]

    def contains(self, x, tol: Tolerances = DEFAULT_TOL) -> bool:
        x = as_vec(x, self.dim)
        return bool(np.linalg.norm(x - self.center) <= self.radius + tol.feas_tol)


def _check_dim(P, x) -> np.ndarray:
    return as_vec(x, P.dim)


def contains_h(P: HPolyhedron, x, tol: Tolerances = DEFAULT_TOL) -> bool:
    """True iff every row satisfies ``a_k @ x <= b_k + feas_tol``."""
    x = _check_dim(P, x)
    return bool(np.all(P.A @ x <= P.b + tol.feas_tol))


def contains_h_many(P: HPolyhedron, X, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """Vectorized :func:`contains_h` over the rows of ``X``."""
    X = np.atleast_2d(np.asarray(X, dtype=float))
    if X.shape[1] != P.dim:
        raise DimensionMismatch(f"points have dimension {X.shape[1]}, expected {P.dim}")
    return np.all(X @ P.A.T <= P.b + tol.feas_tol, axis=1)


def contains_v(P: VPolytope, x, tol: Tolerances = DEFAULT_TOL) -> bool:
    """Membership in ``conv(P.vertices)`` decided by a phase-1 simplex solve."""
    from .solvers.simplex import linprog

    x = _check_dim(P, x)
    V = P.vertices
    m = V.shape[0]
    if m == 1:
        return bool(np.max(np.abs(V[0] - x)) <= tol.feas_tol)
    A_eq = np.vstack([V.T, np.ones((1, m))])
    b_eq = np.concatenate([x, [1.0]])
    res = linprog(
        np.zeros(m),
        A_eq=A_eq,
        b_eq=b_eq,
        nonneg=np.ones(m, dtype=bool),
        feas_tol=tol.feas_tol,
        opt_tol=tol.opt_tol,
        max_iter=tol.max_iter,
    )
    return res.optimal


def active_rows(P: HPolyhedron, x, tol: Tolerances = DEFAULT_TOL) -> list[int]:
    """Indices of rows that hold with equality (within feas_tol) at ``x``.

    Raises ValueError if ``x`` is not in ``P``.
    """
    x = _check_dim(P, x)
    slack = P.A @ x - P.b
    if np.any(slack > tol.feas_tol):
        raise ValueError("point violates the constraint system")
    return [int(k) for k in np.nonzero(np.abs(slack) <= tol.feas_tol)[0]]


def is_feasible(P: HPolyhedron, tol: Tolerances = DEFAULT_TOL) -> bool:
    """Phase-1 feasibility of ``A @ x <= b``."""
    return feasible_point(P, tol) is not None


def feasible_point(P: HPolyhedron, tol: Tolerances = DEFAULT_TOL):
    """Some point of ``P`` or None if the system is infeasible."""
    from .solvers.simplex import linprog

    res = linprog(
        np.zeros(P.dim), A_ub=P.A, b_ub=P.b,
        feas_tol=tol.feas_tol, opt_tol=tol.opt_tol, max_iter=tol.max_iter,
    )
    return res.x_opt if res.optimal else None


def orthant(n: int) -> HPolyhedron:
    """Nonnegative orthant as ``-x_j <= 0``."""
    if n < 1:
        raise InvalidSet("orthant dimension must be positive")
    return HPolyhedron(-np.eye(n), np.zeros(n))


def hpoly(A: Sequence, b: Sequence) -> HPolyhedron:
    return HPolyhedron(np.asarray(A, dtype=float), np.asarray(b, dtype=float))


def vpoly(vertices: Sequence) -> VPolytope:
    return VPolytope(np.asarray(vertices, dtype=float))
