"""Exact transportation solver and the entropic approximation."""

import numpy as np
import pytest

from intent_eval import sinkhorn_solve, transport_solve
from intent_eval.errors import DomainError, NonFiniteCost, UnbalancedMass

from oracles import greedy_transport_cost, lp_transport_cost, transport_bruteforce


class TestExactSolver:
    def test_identical_points_zero_cost(self):
        # supply equals demand at the same locations: diagonal is free
        c = np.array([[0.0, 2.0, 3.0], [2.0, 0.0, 1.5], [3.0, 1.5, 0.0]])
        mass = np.array([0.2, 0.5, 0.3])
        plan = transport_solve(c, mass, mass)
        assert plan.cost == 0.0
        assert np.array_equal(plan.flow, np.diag(mass))

    def test_one_by_one(self):
        plan = transport_solve([[7.0]], [1.0], [1.0])
        assert plan.cost == 7.0
        assert plan.flow[0, 0] == 1.0

    def test_three_by_three_vs_vertex_enumeration(self):
        rng = np.random.default_rng(5)
        for _ in range(25):
            c = rng.uniform(0, 5, size=(3, 3))
            s = rng.uniform(0.1, 2, size=3)
            d = rng.uniform(0.1, 2, size=3)
            d *= s.sum() / d.sum()
            got = transport_solve(c, s, d).cost
            want = transport_bruteforce(c, s, d)
            assert got == pytest.approx(want, rel=1e-9, abs=1e-9)

    def test_marginals(self):
        rng = np.random.default_rng(6)
        for _ in range(40):
            m, n = rng.integers(1, 9, size=2)
            c = rng.uniform(0, 10, size=(m, n))
            s = rng.uniform(0.1, 2, size=m)
            d = rng.uniform(0.1, 2, size=n)
            d *= s.sum() / d.sum()
            plan = transport_solve(c, s, d)
            np.testing.assert_allclose(plan.flow.sum(axis=1), s, rtol=1e-6)
            np.testing.assert_allclose(plan.flow.sum(axis=0), d, rtol=1e-6)
            assert np.all(plan.flow >= 0)
            assert plan.cost == pytest.approx(float((plan.flow * c).sum()), abs=1e-12)

    def test_transpose_symmetry(self):
        rng = np.random.default_rng(7)
        for _ in range(20):
            m, n = rng.integers(1, 7, size=2)
            c = rng.uniform(0, 3, size=(m, n))
            s = rng.uniform(0.1, 1, size=m)
            d = rng.uniform(0.1, 1, size=n)
            d *= s.sum() / d.sum()
            a = transport_solve(c, s, d).cost
            b = transport_solve(c.T, d, s).cost
            assert a == pytest.approx(b, rel=1e-9, abs=1e-12)

    def test_cost_scaling(self):
        rng = np.random.default_rng(8)
        c = rng.uniform(0, 4, size=(5, 4))
        s = rng.uniform(0.1, 1, size=5)
        d = rng.uniform(0.1, 1, size=4)
        d *= s.sum() / d.sum()
        base = transport_solve(c, s, d).cost
        for lam in (0.5, 2.0, 7.25):
            assert transport_solve(lam * c, s, d).cost == pytest.approx(
                lam * base, rel=1e-9)

    def test_dominates_greedy(self):
        rng = np.random.default_rng(9)
        for _ in range(50):
            m, n = rng.integers(1, 9, size=2)
            c = rng.uniform(0, 10, size=(m, n))
            s = rng.uniform(0.1, 2, size=m)
            d = rng.uniform(0.1, 2, size=n)
            d *= s.sum() / d.sum()
            exact = transport_solve(c, s, d).cost
            for order in ("cheapest", "rowmajor"):
                assert exact <= greedy_transport_cost(c, s, d, order) + 1e-9

    def test_zero_mass_points_passed_through(self):
        c = np.array([[1.0, 2.0], [3.0, 4.0]])
        plan = transport_solve(c, [1.0, 0.0], [0.0, 1.0])
        assert plan.cost == 2.0
        assert plan.flow[1].sum() == 0.0

    def test_deterministic(self):
        rng = np.random.default_rng(10)
        c = rng.uniform(0, 5, size=(6, 6))
        s = rng.uniform(0.1, 1, size=6)
        d = rng.uniform(0.1, 1, size=6)
        d *= s.sum() / d.sum()
        p1 = transport_solve(c, s, d)
        p2 = transport_solve(c, s, d)
        assert np.array_equal(p1.flow, p2.flow)

    def test_degenerate_masses(self):
        # many zero supplies/demands plus ties force degenerate pivots
        c = np.array([[1.0, 1.0, 5.0], [1.0, 1.0, 5.0], [5.0, 5.0, 1.0]])
        s = np.array([1.0, 1.0, 2.0])
        d = np.array([1.0, 1.0, 2.0])
        plan = transport_solve(c, s, d)
        assert plan.cost == pytest.approx(lp_transport_cost(c, s, d), rel=1e-9)


class TestValidation:
    def test_unbalanced(self):
        with pytest.raises(UnbalancedMass):
            transport_solve([[1.0]], [1.0], [2.0])

    def test_nonfinite_cost(self):
        with pytest.raises(NonFiniteCost):
            transport_solve([[float("nan")]], [1.0], [1.0])
        with pytest.raises(NonFiniteCost):
            transport_solve([[-1.0]], [1.0], [1.0])

    def test_negative_mass(self):
        with pytest.raises(DomainError):
            transport_solve([[1.0, 1.0]], [-1.0], [0.5, -1.5])

    def test_shape_mismatch(self):
        with pytest.raises(DomainError):
            transport_solve([[1.0, 2.0]], [1.0, 1.0], [2.0])


class TestSinkhorn:
    def test_close_to_exact(self):
        rng = np.random.default_rng(11)
        for _ in range(5):
            c = rng.uniform(0.0, 1.0, size=(5, 5))
            s = rng.uniform(0.1, 1, size=5)
            d = rng.uniform(0.1, 1, size=5)
            s /= s.sum()
            d /= d.sum()
            exact = transport_solve(c, s, d).cost
            approx = sinkhorn_solve(c, s, d, epsilon=0.01).cost
            # entropic bias is O(epsilon * log terms)
            assert approx == pytest.approx(exact, abs=0.15)
            assert approx >= exact - 1e-3

    def test_marginals_approximately_satisfied(self):
        rng = np.random.default_rng(12)
        c = rng.uniform(0.0, 1.0, size=(4, 6))
        s = rng.uniform(0.1, 1, size=4)
        d = rng.uniform(0.1, 1, size=6)
        s /= s.sum()
        d /= d.sum()
        plan = sinkhorn_solve(c, s, d, epsilon=0.05)
        np.testing.assert_allclose(plan.flow.sum(axis=1), s, rtol=1e-3)
        np.testing.assert_allclose(plan.flow.sum(axis=0), d, rtol=1e-3)

    def test_validation_shared(self):
        with pytest.raises(UnbalancedMass):
            sinkhorn_solve([[1.0]], [1.0], [2.0])
        with pytest.raises(DomainError):
            sinkhorn_solve([[1.0]], [1.0], [1.0], epsilon=0.0)
