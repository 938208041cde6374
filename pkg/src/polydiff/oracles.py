"""Brute-force and closed-form reference answers used to check the solvers."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, InvalidSet
from .sets import VPolytope


@dataclass(frozen=True, eq=False)
class IntervalBox:
    """Product of closed intervals; either end of an axis may be infinite."""

    lower: np.ndarray
    upper: np.ndarray

    def __post_init__(self):
        lo = np.array(self.lower, dtype=float).reshape(-1)
        hi = np.array(self.upper, dtype=float).reshape(-1)
        if lo.shape != hi.shape or lo.size == 0:
            raise DimensionMismatch("lower and upper must have the same positive length")
        if np.any(np.isnan(lo)) or np.any(np.isnan(hi)) or np.any(lo > hi):
            raise InvalidSet("interval bounds must satisfy lower <= upper")
        object.__setattr__(self, "lower", lo)
        object.__setattr__(self, "upper", hi)

    @property
    def dim(self) -> int:
        return self.lower.shape[0]

    def contains(self, x, tol=0.0) -> bool:
        x = np.asarray(x, dtype=float)
        return bool(np.all(x >= self.lower - tol) and np.all(x <= self.upper + tol))


def box_diff_oracle(A: IntervalBox, B: IntervalBox) -> IntervalBox:
    """Per axis ``[a_lo - b_hi, a_hi - b_lo]``."""
    if A.dim != B.dim:
        raise DimensionMismatch("boxes differ in dimension")
    return IntervalBox(A.lower - B.upper, A.upper - B.lower)


def box_distance_oracle(A: IntervalBox, B: IntervalBox) -> float:
    """Euclidean norm of the per-axis gaps between two boxes."""
    if A.dim != B.dim:
        raise DimensionMismatch("boxes differ in dimension")
    gap = np.maximum(0.0, np.maximum(A.lower - B.upper, B.lower - A.upper))
    return float(np.sqrt(np.sum(gap**2)))


def sample_vrep(P: VPolytope, count: int, seed: int) -> np.ndarray:
    """``count`` seeded random convex combinations of the generators (rows of the result)."""
    if count < 1:
        raise ValueError("count must be at least 1")
    rng = np.random.default_rng(seed)
    w = rng.exponential(size=(count, len(P)))
    w /= w.sum(axis=1, keepdims=True)
    return w @ P.vertices


def grid_min_norm_oracle(P: VPolytope, step: float) -> float:
    """Minimum of ``||sum alpha_i v_i||`` over the simplex grid with mesh ``step``.

    The grid contains every ``alpha`` whose entries are multiples of
    ``1/round(1/step)``, so the result overestimates the true minimum by at
    most ``diameter * step``.
    """
    m = len(P)
    if m > 4:
        raise ValueError("grid oracle supports at most 4 generators")
    if not (0 < step <= 1e-2):
        raise ValueError("step must lie in (0, 1e-2]")
    V = P.vertices
    if m == 1:
        return float(np.linalg.norm(V[0]))
    N = int(round(1.0 / step))
    ticks = np.arange(N + 1)
    best = math.inf
    if m == 2:
        a = ticks / N
        pts = np.outer(a, V[0]) + np.outer(1 - a, V[1])
        return float(np.min(np.linalg.norm(pts, axis=1)))
    # m in (3, 4): loop over the leading weight(s), vectorize the last two
    lead = [()] if m == 3 else [(i,) for i in ticks]
    for head in lead:
        used = sum(head)
        rest = N - used
        i = np.arange(rest + 1)
        base = sum(h * V[3] for h in head) if head else 0.0
        # weights: i for V[0], j for V[1], rest - i - j for V[2]
        I, J = np.meshgrid(i, i, indexing="ij")
        ok = I + J <= rest
        I, J = I[ok], J[ok]
        K = rest - I - J
        pts = (np.outer(I, V[0]) + np.outer(J, V[1]) + np.outer(K, V[2]) + base) / N
        best = min(best, float(np.min(np.einsum("ij,ij->i", pts, pts))))
    return math.sqrt(best)

IntervalBoxOracle = IntervalBox
