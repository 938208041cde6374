"""Origin location, maximin directions, separation, distance and nearest points.

Every two-set question is reduced to the position of the origin relative to
the difference set ``A - B``:

* origin outside  -> strongly separable, positive margin ``||P(0)||``;
* origin on the boundary -> separable but not strongly, margin 0;
* origin interior -> inseparable, negative margin.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from .errors import DimensionMismatch, EmptySetError, NumericalFailure
from .minkdiff import (
    LiftedDifference,
    diff_membership,
    hrep_minus_hrep_lifted,
    hrep_minus_point,
    hrep_minus_vrep_lifted,
    vrep_minus_vrep,
)
from .sets import (
    DEFAULT_TOL,
    BoxSet,
    HPolyhedron,
    Tolerances,
    VPolytope,
    active_rows,
    contains_h,
    is_feasible,
)
from .solvers import (
    ProjectionResult,
    min_norm_point_vrep,
    project_origin_hrep,
    project_origin_masked,
    support_inf,
)
from .solvers.simplex import linprog

SetLike = Union[VPolytope, HPolyhedron, LiftedDifference]


class Category(enum.Enum):
    EXTERIOR = "Exterior"
    BOUNDARY = "Boundary"
    INTERIOR = "Interior"


class Exactness(enum.Enum):
    EXACT = "Exact"
    LOWER_BOUND = "LowerBound"


class Verdict(enum.Enum):
    STRONGLY_SEPARABLE = "StronglySeparable"
    NON_STRONGLY_SEPARABLE = "NonStronglySeparable"
    INSEPARABLE = "Inseparable"


_VERDICT = {
    Category.EXTERIOR: Verdict.STRONGLY_SEPARABLE,
    Category.BOUNDARY: Verdict.NON_STRONGLY_SEPARABLE,
    Category.INTERIOR: Verdict.INSEPARABLE,
}


@dataclass(frozen=True)
class OriginLocation:
    """Where the origin sits relative to a convex set.

    ``margin`` is the maximin value over unit directions: positive outside,
    zero on the boundary, negative inside.  For V-polytopes with the origin
    inside only a sampled lower bound is available (``exactness``).
    """

    category: Category
    margin: float
    direction: Optional[np.ndarray]
    exactness: Exactness = Exactness.EXACT
    band: float = 0.0
    projection: Optional[ProjectionResult] = None

    def negated(self) -> "OriginLocation":
        """Location of the origin relative to the reflected set ``-S``."""
        proj = self.projection
        if proj is not None:
            proj = ProjectionResult(-proj.point, proj.distance, proj.witness, proj.iterations,
                                    proj.certified, proj.aux)
        d = None if self.direction is None else -self.direction
        return OriginLocation(self.category, self.margin, d, self.exactness, self.band, proj)


@dataclass(frozen=True)
class SeparationReport:
    """Result of separating ``A`` from ``B`` by ``<c, x> = offset``.

    On separable verdicts ``<c, a> >= offset >= <c, b>`` for all ``a`` in A
    and ``b`` in B, and ``thickness`` is the gap between the two supporting
    hyperplanes.  For inseparable pairs ``direction`` is the best sampled or
    exact maximin direction and ``offset`` is None.
    """

    verdict: Verdict
    direction: Optional[np.ndarray]
    offset: Optional[float]
    thickness: float
    origin_result: OriginLocation


def _as_operand(S):
    if isinstance(S, BoxSet):
        return S.to_hrep()
    if isinstance(S, (VPolytope, HPolyhedron, LiftedDifference)):
        return S
    raise TypeError(f"unsupported operand type {type(S).__name__}")


def _unit(v):
    return v / np.linalg.norm(v)


def project_origin(S: SetLike, tol: Tolerances = DEFAULT_TOL) -> ProjectionResult:
    """Projection of the origin onto any supported set representation."""
    S = _as_operand(S)
    if isinstance(S, VPolytope):
        return min_norm_point_vrep(S, tol)
    if isinstance(S, HPolyhedron):
        return project_origin_hrep(S, tol)
    mask = np.zeros(S.system.dim, dtype=bool)
    mask[: S.n] = True
    z, lam, it = project_origin_masked(S.D, S.rhs, mask, tol)
    x = z[: S.n]
    return ProjectionResult(x, float(np.linalg.norm(x)), lam, it, True, aux=z[S.n :])


def _weak_support_lp(S, d, tol):
    """Maximize ``<d, c>`` over weak support directions ``c`` with ``|c|_inf <= 1``."""
    if isinstance(S, VPolytope):
        n = S.dim
        eye = np.eye(n)
        A_ub = np.vstack([-S.vertices, eye, -eye])
        b_ub = np.concatenate([np.zeros(len(S)), np.ones(2 * n)])
        res = linprog(-d, A_ub=A_ub, b_ub=b_ub, feas_tol=tol.feas_tol, opt_tol=tol.opt_tol,
                      max_iter=tol.max_iter)
        return res.x_opt if res.optimal else None
    # inf over {D z <= rhs} of <(c, 0), z> >= 0  iff  c = -Dx^T w, Dy^T w = 0, rhs @ w <= 0, w >= 0
    if isinstance(S, LiftedDifference):
        n, D, rhs = S.n, S.D, S.rhs
        Dx, Dy = D[:, :n], D[:, n:]
    else:
        n, Dx, rhs, Dy = S.dim, S.A, S.b, None
    r = Dx.shape[0]
    A_ub = np.vstack([rhs[None, :], -Dx.T, Dx.T])
    b_ub = np.concatenate([[0.0], np.ones(2 * n)])
    A_eq = Dy.T if Dy is not None else None
    b_eq = np.zeros(Dy.shape[1]) if Dy is not None else None
    res = linprog(Dx @ d, A_ub=A_ub, b_ub=b_ub, A_eq=A_eq, b_eq=b_eq,
                  nonneg=np.ones(r, dtype=bool), feas_tol=tol.feas_tol, opt_tol=tol.opt_tol,
                  max_iter=tol.max_iter)
    return -Dx.T @ res.x_opt if res.optimal else None


def weak_support_direction(S: SetLike, tol: Tolerances = DEFAULT_TOL) -> Optional[np.ndarray]:
    """A unit ``c`` with ``inf_S <c, x> >= 0`` or None if only ``c = 0`` qualifies.

    Tries the coordinate directions ``+-e_j`` in turn as LP objectives; the
    first one with a nonzero optimum wins.
    """
    S = _as_operand(S)
    n = S.dim
    threshold = 1e3 * tol.opt_tol
    for j in range(n):
        for sgn in (1.0, -1.0):
            d = np.zeros(n)
            d[j] = sgn
            c = _weak_support_lp(S, d, tol)
            if c is not None and d @ c > threshold:
                return _unit(c)
    return None


def _sample_directions(n, count, seed):
    rng = np.random.default_rng(seed)
    dirs = rng.standard_normal((count, n))
    dirs /= np.linalg.norm(dirs, axis=1, keepdims=True)
    eye = np.eye(n)
    return np.vstack([eye, -eye, dirs])


def _interior_lower_bound(S, tol, seed, count):
    best_t, best_c = -np.inf, None
    if isinstance(S, VPolytope):
        dirs = _sample_directions(S.dim, count, seed)
        vals = np.min(dirs @ S.vertices.T, axis=1)
        k = int(np.argmax(vals))
        return float(vals[k]), dirs[k]
    for c in _sample_directions(S.dim, count, seed):
        t = support_inf(S, c, tol)
        if t > best_t:
            best_t, best_c = t, c
    return float(best_t), best_c


def classify_origin(S: SetLike, tol: Tolerances = DEFAULT_TOL, seed: int = 0,
                    samples: Optional[int] = None) -> OriginLocation:
    """Exterior / Boundary / Interior status of the origin with its maximin margin.

    ``seed`` and ``samples`` control the direction sampling used for the
    interior margin of V-polytopes and lifted systems.

    Raises EmptySetError for an empty H-polyhedron or lifted system.
    """
    S = _as_operand(S)
    band = tol.feas_tol
    if isinstance(S, HPolyhedron):
        if not is_feasible(S, tol):
            raise EmptySetError("set is empty")
        origin = np.zeros(S.dim)
        if not contains_h(S, origin, tol):
            proj = project_origin_hrep(S, tol)
            return OriginLocation(Category.EXTERIOR, proj.distance, _unit(proj.point),
                                  band=band, projection=proj)
        norms = np.linalg.norm(S.A, axis=1)
        tight = active_rows(S, origin, tol)
        if tight:
            k = tight[0]
            return OriginLocation(Category.BOUNDARY, 0.0, -S.A[k] / norms[k], band=band)
        ratios = S.b / norms
        k = int(np.argmin(ratios))
        return OriginLocation(Category.INTERIOR, -float(ratios[k]), -S.A[k] / norms[k], band=band)

    if isinstance(S, VPolytope):
        proj = min_norm_point_vrep(S, tol)
        outside = proj.distance > tol.feas_tol
        count = 512 if samples is None else samples
    else:
        if not is_feasible(S.system, tol):
            raise EmptySetError("set is empty")
        outside = not diff_membership(S, np.zeros(S.n), tol)
        proj = project_origin(S, tol) if outside else None
        count = 64 if samples is None else samples
    if outside:
        return OriginLocation(Category.EXTERIOR, proj.distance, _unit(proj.point),
                              band=band, projection=proj)
    c = weak_support_direction(S, tol)
    if c is not None:
        return OriginLocation(Category.BOUNDARY, 0.0, c, band=band, projection=proj)
    t, c = _interior_lower_bound(S, tol, seed, count)
    return OriginLocation(Category.INTERIOR, t, c, Exactness.LOWER_BOUND, band=band, projection=proj)


def maximin_direction(S: SetLike, tol: Tolerances = DEFAULT_TOL, seed: int = 0):
    """``(c_star, t_star)`` for the problem ``max over unit c of inf_S <c, x>``.

    Outside the set the projection direction is Euclidean-optimal; on the
    boundary ``t_star = 0`` with a weak support direction; inside, the value
    reported by :func:`classify_origin`.
    """
    loc = classify_origin(S, tol, seed=seed)
    return loc.direction, loc.margin


def difference(A, B, tol: Tolerances = DEFAULT_TOL):
    """Build a representation of ``A - B``.

    Returns ``(S, flipped)``; when ``flipped`` is True, ``S`` represents
    ``B - A`` (the V/H pairing is handled through its H/V mirror).
    """
    A, B = _as_operand(A), _as_operand(B)
    if A.dim != B.dim:
        raise DimensionMismatch(f"operands have dimensions {A.dim} and {B.dim}")
    if isinstance(A, LiftedDifference) or isinstance(B, LiftedDifference):
        raise TypeError("lifted systems cannot be used as operands")
    if isinstance(A, VPolytope) and isinstance(B, VPolytope):
        return vrep_minus_vrep(A, B), False
    if isinstance(A, HPolyhedron) and isinstance(B, VPolytope):
        if len(B) == 1:
            return hrep_minus_point(A, B.vertices[0], tol), False
        return hrep_minus_vrep_lifted(A, B, tol), False
    if isinstance(A, VPolytope) and isinstance(B, HPolyhedron):
        S, _ = difference(B, A, tol)
        return S, True
    return hrep_minus_hrep_lifted(A, B, tol), False


def locate_difference(A, B, tol: Tolerances = DEFAULT_TOL, seed: int = 0) -> OriginLocation:
    """Origin location relative to ``A - B``."""
    S, flipped = difference(A, B, tol)
    loc = classify_origin(S, tol, seed=seed)
    return loc.negated() if flipped else loc


def _sup(S, c, tol):
    return -support_inf(S, -c, tol)


def separate(A, B, tol: Tolerances = DEFAULT_TOL, seed: int = 0) -> SeparationReport:
    """Separate two convex sets through the origin test on ``A - B``.

    The offset is the midpoint of ``[sup_B <c, b>, inf_A <c, a>]``.
    """
    A, B = _as_operand(A), _as_operand(B)
    loc = locate_difference(A, B, tol, seed)
    verdict = _VERDICT[loc.category]
    if verdict is Verdict.INSEPARABLE:
        return SeparationReport(verdict, loc.direction, None, 0.0, loc)
    c = loc.direction
    lo = support_inf(A, c, tol)
    hi = _sup(B, c, tol)
    thickness = lo - hi
    if verdict is Verdict.NON_STRONGLY_SEPARABLE:
        thickness = max(0.0, thickness)
    return SeparationReport(verdict, c, 0.5 * (lo + hi), float(thickness), loc)


def project_difference(A, B, tol: Tolerances = DEFAULT_TOL) -> ProjectionResult:
    """Projection of the origin onto ``A - B`` (the point realizing the distance)."""
    S, flipped = difference(A, B, tol)
    proj = project_origin(S, tol)
    if flipped:
        proj = ProjectionResult(-proj.point, proj.distance, proj.witness, proj.iterations,
                                proj.certified, proj.aux)
    return proj


def distance(A, B, tol: Tolerances = DEFAULT_TOL) -> float:
    """Euclidean distance between two convex sets, ``||P_{A-B}(0)||``."""
    return project_difference(A, B, tol).distance


def _feasible_weights(G, h, m, tol):
    """Convex weights ``beta`` with ``G @ beta <= h``."""
    res = linprog(np.zeros(m), A_ub=G, b_ub=h, A_eq=np.ones((1, m)), b_eq=[1.0],
                  nonneg=np.ones(m, dtype=bool), feas_tol=tol.feas_tol, opt_tol=tol.opt_tol,
                  max_iter=tol.max_iter)
    if not res.optimal:
        # relax by the feasibility band once; the projection is only accurate to it
        res = linprog(np.zeros(m), A_ub=G, b_ub=h + 10 * tol.feas_tol, A_eq=np.ones((1, m)),
                      b_eq=[1.0], nonneg=np.ones(m, dtype=bool), feas_tol=tol.feas_tol,
                      opt_tol=tol.opt_tol, max_iter=tol.max_iter)
    if not res.optimal:
        raise NumericalFailure("could not recover a witness in the V-polytope operand")
    return res.x_opt


def nearest_points(A, B, tol: Tolerances = DEFAULT_TOL):
    """A pair ``(x_bar, y_bar)`` in ``A x B`` with ``x_bar - y_bar = P_{A-B}(0)``.

    When the sets intersect the pair collapses to a common point.  Raises
    NumericalFailure if the recovered pair fails the supporting-hyperplane
    certificate.
    """
    A, B = _as_operand(A), _as_operand(B)
    S, flipped = difference(A, B, tol)
    if flipped:
        y_bar, x_bar = nearest_points(B, A, tol)
        return x_bar, y_bar
    if isinstance(S, VPolytope):
        proj = min_norm_point_vrep(S, tol)
        gamma = proj.witness.reshape(len(A), len(B))
        x_bar = gamma.sum(axis=1) @ A.vertices
        y_bar = gamma.sum(axis=0) @ B.vertices
    elif isinstance(S, LiftedDifference):
        proj = project_origin(S, tol)
        y_bar = S.witness_point(proj.aux)
        if S.generators is not None:
            # re-solve the weights so the witness is feasible for the exact point
            beta = _feasible_weights(A.A @ S.generators.T, A.b - A.A @ proj.point, len(B), tol)
            y_bar = beta @ S.generators
        x_bar = proj.point + y_bar
    else:
        # single-generator second operand: plain translate
        proj = project_origin_hrep(S, tol)
        y_bar = B.vertices[0].copy()
        x_bar = proj.point + y_bar
    if proj.distance <= tol.feas_tol:
        return x_bar, x_bar.copy()
    c = x_bar - y_bar
    slack = 1e-7 * max(1.0, float(c @ c), abs(float(c @ x_bar)), abs(float(c @ y_bar)))
    if support_inf(A, c, tol) < c @ x_bar - slack or _sup(B, c, tol) > c @ y_bar + slack:
        raise NumericalFailure("nearest points failed the supporting-hyperplane certificate",
                               best=(x_bar, y_bar))
    return x_bar, y_bar
