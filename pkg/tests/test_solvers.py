import math

import numpy as np
import pytest
import scipy.optimize
from hypothesis import given, settings, strategies as st

from _gen import box_samples, random_hrep, random_vrep, unit_directions
from polydiff import (
    BoxSet,
    EmptySetError,
    HPolyhedron,
    LPStatus,
    NumericalFailure,
    Tolerances,
    VPolytope,
    min_norm_point_vrep,
    project_origin_hrep,
    simplex_solve,
    support_inf,
)
from polydiff.oracles import grid_min_norm_oracle, sample_vrep
from polydiff.sets import contains_h_many
from polydiff.solvers import linprog, min_norm_point


# -- simplex ---------------------------------------------------------------------

def test_simplex_box_minimum():
    res = simplex_solve([1.0], HPolyhedron([[1.0], [-1.0]], [1.0, 0.0]))
    assert res.status is LPStatus.OPTIMAL
    assert res.x_opt[0] == pytest.approx(0.0, abs=1e-12)
    assert res.objective == pytest.approx(0.0, abs=1e-12)


def test_simplex_unbounded():
    res = simplex_solve([-1.0], HPolyhedron([[-1.0]], [0.0]))
    assert res.status is LPStatus.UNBOUNDED


def test_simplex_extra_equalities():
    res = simplex_solve([1.0, 1.0], HPolyhedron(-np.eye(2), np.zeros(2)), extra_equalities=[([1, 1], 1.0)])
    assert res.status is LPStatus.OPTIMAL
    assert res.objective == pytest.approx(1.0, abs=1e-12)


def test_simplex_infeasible():
    res = simplex_solve([1.0], HPolyhedron([[1.0], [-1.0]], [0.0, -1.0]))
    assert res.status is LPStatus.INFEASIBLE


def test_simplex_iteration_cap_raises():
    P = HPolyhedron(np.vstack([np.eye(3), -np.eye(3)]), np.ones(6))
    with pytest.raises(NumericalFailure):
        simplex_solve([1, 1, 1], P, tol=Tolerances(max_iter=1))


def test_simplex_degenerate_instance_terminates():
    # a classic cycling example for the largest-coefficient rule
    c = np.array([-0.75, 150, -0.02, 6])
    A = np.array([[0.25, -60, -0.04, 9], [0.5, -90, -0.02, 3], [0, 0, 1, 0]])
    b = np.array([0, 0, 1.0])
    res = linprog(c, A_ub=A, b_ub=b, nonneg=np.ones(4, dtype=bool))
    ref = scipy.optimize.linprog(c, A_ub=A, b_ub=b, method="highs")
    assert res.optimal
    assert res.objective == pytest.approx(ref.fun, abs=1e-9)


def test_lp_duality_and_scipy_agreement(rng):
    for _ in range(30):
        n = int(rng.integers(1, 6))
        P = random_hrep(rng, n, int(rng.integers(1, 8)), center=rng.normal(size=n))
        c = rng.normal(size=n)
        res = simplex_solve(c, P)
        assert res.optimal
        ref = scipy.optimize.linprog(c, A_ub=P.A, b_ub=P.b, bounds=[(None, None)] * n, method="highs")
        assert res.objective == pytest.approx(ref.fun, abs=1e-8)
        # dual: y <= 0 with A^T y = c and b^T y = objective
        y = res.duals_ub
        assert np.all(y <= 1e-10)
        np.testing.assert_allclose(P.A.T @ y, c, atol=1e-8)
        assert float(P.b @ y) == pytest.approx(res.objective, abs=1e-8)


def test_lp_equality_duals(rng):
    for _ in range(10):
        m, n = 2, 5
        A = rng.uniform(0.1, 1.0, size=(m, n))
        b = A @ rng.uniform(0.1, 1.0, size=n)
        c = rng.uniform(0.1, 2.0, size=n)
        res = linprog(c, A_eq=A, b_eq=b, nonneg=np.ones(n, dtype=bool))
        assert res.optimal
        assert float(b @ res.duals_eq) == pytest.approx(res.objective, abs=1e-8)


# -- support function ----------------------------------------------------------------

@pytest.mark.parametrize(
    "S, c, expected",
    [
        (VPolytope([[1, 0], [0, 1]]), [1, 1], 1.0),
        (HPolyhedron([[-1.0]], [0.0]), [1.0], 0.0),
        (HPolyhedron([[-1.0]], [0.0]), [-1.0], -math.inf),
        (VPolytope([[2, 1], [1, 2]]), [1, 0], 1.0),
    ],
)
def test_support_inf_examples(S, c, expected):
    assert support_inf(S, c) == pytest.approx(expected, abs=1e-12)


def test_support_inf_empty_raises():
    with pytest.raises(EmptySetError):
        support_inf(HPolyhedron([[1.0], [-1.0]], [0.0, -1.0]), [1.0])


def test_support_inf_positive_homogeneity(rng):
    for _ in range(20):
        n = int(rng.integers(1, 5))
        V = random_vrep(rng, n, 5)
        H = random_hrep(rng, n, 4)
        c = rng.normal(size=n)
        lam = float(rng.uniform(0.1, 10))
        for S in (V, H):
            assert support_inf(S, lam * c) == pytest.approx(lam * support_inf(S, c), rel=1e-9, abs=1e-9)


# -- H-rep projection ----------------------------------------------------------------

def test_project_halfline():
    r = project_origin_hrep(HPolyhedron([[-1.0]], [-1.0]))
    assert r.certified
    assert r.point[0] == pytest.approx(1.0, abs=1e-10)
    assert r.distance == pytest.approx(1.0, abs=1e-10)


def test_project_diagonal_halfplane():
    r = project_origin_hrep(HPolyhedron([[-1.0, -1.0]], [-2.0]))
    np.testing.assert_allclose(r.point, [1, 1], atol=1e-10)
    assert r.distance == pytest.approx(math.sqrt(2), abs=1e-10)


def test_project_origin_feasible(rng):
    for a in rng.uniform(-5, -0.1, size=5):
        r = project_origin_hrep(HPolyhedron([[-1.0]], [-a]))
        assert r.distance == 0.0 and r.point[0] == 0.0


def test_project_empty_raises():
    with pytest.raises(EmptySetError):
        project_origin_hrep(HPolyhedron([[1.0], [-1.0]], [0.0, -1.0]))


def test_hrep_projection_kkt_and_scipy(rng):
    for _ in range(30):
        n = int(rng.integers(1, 5))
        P = random_hrep(rng, n, int(rng.integers(1, 6)), center=rng.uniform(-4, 4, size=n), radius=1.0)
        r = project_origin_hrep(P)
        assert r.certified
        assert r.distance == pytest.approx(np.linalg.norm(r.point), abs=1e-10)
        if r.distance > 0:
            lam = r.witness
            assert np.all(lam >= -1e-12)
            np.testing.assert_allclose(r.point, -P.A.T @ lam, atol=1e-8)
            assert np.all(np.abs(lam * (P.A @ r.point - P.b)) <= 1e-8)
        ref = scipy.optimize.minimize(
            lambda x: x @ x, np.clip(np.zeros(n), -1, 1) + 0.0,
            constraints=[{"type": "ineq", "fun": lambda x: P.b - P.A @ x}], method="SLSQP",
            options={"ftol": 1e-14, "maxiter": 500},
        )
        assert r.distance == pytest.approx(np.linalg.norm(ref.x), abs=1e-5)


# -- V-rep min-norm ------------------------------------------------------------------

def test_min_norm_singleton():
    r = min_norm_point_vrep(VPolytope([[3, 0]]))
    np.testing.assert_allclose(r.point, [3, 0])
    assert r.distance == 3.0


def test_min_norm_segment():
    r = min_norm_point_vrep(VPolytope([[1, -1], [1, 1]]))
    np.testing.assert_allclose(r.point, [1, 0], atol=1e-12)
    assert r.distance == pytest.approx(1.0, abs=1e-12)


def test_min_norm_triangle_matches_grid_oracle():
    P = VPolytope([[2, 1], [1, 2], [3, 3]])
    r = min_norm_point_vrep(P)
    assert r.distance == pytest.approx(3 / math.sqrt(2), abs=1e-12)
    assert r.distance == pytest.approx(grid_min_norm_oracle(P, 1e-3), abs=5e-3)


def test_min_norm_matches_grid_oracle_randomly(rng):
    for _ in range(20):
        P = random_vrep(rng, 2, int(rng.integers(1, 5)), shift=rng.uniform(-3, 3, size=2))
        r = min_norm_point_vrep(P)
        g = grid_min_norm_oracle(P, 1e-2)
        diam = float(np.max(np.linalg.norm(P.vertices[:, None] - P.vertices[None], axis=2)))
        assert r.distance <= g + 1e-9
        assert g - r.distance <= diam * 1e-2 + 1e-9


def test_min_norm_iteration_cap():
    with pytest.raises(NumericalFailure):
        pts = np.random.default_rng(3).normal(size=(12, 4)) + 2.0
        min_norm_point(pts, Tolerances(max_iter=1))


def test_min_norm_weights_are_convex(rng):
    for _ in range(20):
        P = random_vrep(rng, 3, 6, shift=rng.normal(size=3) * 3)
        r = min_norm_point_vrep(P)
        w = r.witness
        assert np.all(w >= -1e-12) and w.sum() == pytest.approx(1.0, abs=1e-12)
        np.testing.assert_allclose(w @ P.vertices, r.point, atol=1e-10)


# -- projection characterization and cross-representation agreement ----------------

def test_vrep_projection_variational_inequality(rng):
    for k in range(20):
        P = random_vrep(rng, 3, 6, shift=rng.normal(size=3) * 2)
        r = min_norm_point_vrep(P)
        assert r.certified
        X = sample_vrep(P, 1000, seed=k)
        assert np.min((X - r.point) @ r.point) >= -1e-9
        assert np.min((P.vertices - r.point) @ r.point) >= -1e-9


def test_hrep_projection_variational_inequality(rng):
    for _ in range(20):
        n = int(rng.integers(1, 5))
        B = BoxSet(rng.uniform(-3, 1, size=n), rng.uniform(1.5, 4, size=n))
        r = project_origin_hrep(B.to_hrep())
        X = box_samples(B, rng, 1000)
        assert np.all(contains_h_many(B.to_hrep(), X))
        assert np.min((X - r.point) @ r.point) >= -1e-9


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6])
def test_box_projection_agrees_across_representations(rng, n):
    for _ in range(5):
        lo = rng.uniform(-3, 3, size=n)
        B = BoxSet(lo, lo + rng.uniform(0.1, 2, size=n))
        h = project_origin_hrep(B.to_hrep())
        v = min_norm_point_vrep(B.to_vrep())
        exact = np.clip(0.0, B.lower, B.upper)
        assert h.distance == pytest.approx(v.distance, abs=1e-6)
        np.testing.assert_allclose(h.point, exact, atol=1e-6)


@settings(max_examples=40, deadline=None)
@given(
    pts=st.lists(
        st.lists(st.floats(-10, 10, allow_nan=False), min_size=2, max_size=2),
        min_size=1, max_size=6,
    )
)
def test_min_norm_is_no_worse_than_any_generator(pts):
    P = VPolytope(pts)
    r = min_norm_point_vrep(P)
    assert r.distance <= np.min(np.linalg.norm(P.vertices, axis=1)) + 1e-9
    assert np.min(P.vertices @ r.point) >= r.distance**2 - 1e-7 * max(1.0, r.distance**2)


def test_unit_directions_helper(rng):
    C = unit_directions(rng, 3, 4)
    np.testing.assert_allclose(np.linalg.norm(C, axis=1), 1.0)
