import numpy as np
import pytest
from numpy.polynomial import polynomial as npoly

from copos3 import elimination as el
from copos3.general import (
    vertex_condition,
    edge_condition_m,
    interior_condition_m,
    is_copositive_general,
    sylvester_matrix,
    sylvester_resultant,
)
from copos3.oracle import simplex_min
from copos3.order3 import InteriorSystem, edge_condition, interior_condition, resultant_quartic
from copos3.tensor import SymmetricTensor
from copos3.verdict import COPOSITIVE, NOT_COPOSITIVE, STRICTLY_COPOSITIVE
from copos3.z3 import Z3Params, build_tensor

from conftest import biased_tensor, random_tensor


def planted_planes(rng, degree, a, b):
    """Two random bivariate polynomials of total degree ``degree`` vanishing at ``(a, b)``."""
    out = []
    for _ in range(2):
        C = np.zeros((degree + 1, degree + 1))
        for p in range(degree + 1):
            C[p, : degree + 1 - p] = rng.uniform(-1, 1, degree + 1 - p)
        C[0, 0] -= npoly.polyval2d(a, b, C)
        out.append(C)
    return out


class TestResultant:
    def test_planted_common_roots(self, rng):
        for k in range(300):
            m = 3 + k % 3
            a, b = rng.uniform(0.001, 2, 2)
            P, Q = planted_planes(rng, m - 1, a, b)
            G = el.resultant_of_planes(P, Q, (m - 1) ** 2).poly
            assert abs(G(a)) <= 1e-6 * G.scale

    def test_generic_degree(self, rng):
        for m in (2, 3, 4, 5):
            for _ in range(20):
                res = sylvester_resultant(random_tensor(rng, m))
                assert res.poly.degree == (m - 1) ** 2

    def test_order3_matches_closed_form(self, rng):
        for _ in range(200):
            t = random_tensor(rng, 3)
            G = np.array(resultant_quartic(InteriorSystem.from_tensor(t)).coeffs_low())
            H = np.zeros(5)
            c = sylvester_resultant(t).poly.coeffs
            H[: len(c)] = c
            assert np.max(np.abs(G - H)) <= 1e-9 * np.max(np.abs(G))

    def test_shared_factor_vanishes(self):
        # both polynomials divisible by (y2 - y1)
        f = np.array([[0.0, 1.0], [-1.0, 0.0]])
        P = np.zeros((3, 3))
        Q = np.zeros((3, 3))
        g1 = np.array([[1.0, 2.0], [0.5, 0.0]])
        g2 = np.array([[-3.0, 1.0], [1.0, 0.0]])
        for C, g in ((P, g1), (Q, g2)):
            for (i, j), u in np.ndenumerate(f):
                for (k, l), v in np.ndenumerate(g):
                    C[i + k, j + l] += u * v
        assert el.resultant_of_planes(P, Q, 4).vanishes

    def test_linear_case_is_2x2_determinant(self, rng):
        t = random_tensor(rng, 2)
        P, Q = el.plane_pair(t)
        S = sylvester_matrix(t)
        assert S.size == 2
        y1 = 0.7
        e = [P[0, 1], P[0, 0] + P[1, 0] * y1]
        f = [Q[0, 1], Q[0, 0] + Q[1, 0] * y1]
        assert sylvester_resultant(t).poly(y1) == pytest.approx(e[0] * f[1] - e[1] * f[0], abs=1e-12)


class TestEdges:
    def test_order4_diagonal(self):
        r = edge_condition_m(SymmetricTensor.diagonal(4), (1, 2))
        assert r.passed
        assert r.detail["stationary"] == pytest.approx([0.5])
        assert r.detail["phi1"] == pytest.approx([0.125])

    def test_order3_agrees_with_closed_form(self, rng):
        # vertices belong to the vertex condition in the general engine
        for _ in range(1000):
            t = random_tensor(rng, 3)
            if not vertex_condition(t).passed:
                continue
            for ax in ((1, 2), (1, 3), (2, 3)):
                a, b = edge_condition_m(t, ax), edge_condition(t, ax)
                if not (a.marginal or b.marginal):
                    assert a.passed == b.passed

    def test_matrix_edge(self):
        # x1^2 - 4 x1 x2 + x2^2 is negative at the edge midpoint
        t = SymmetricTensor.from_entries(2, {"11": 1, "22": 1, "12": -2, "33": 1})
        r = edge_condition_m(t, (1, 2))
        assert not r.passed and r.witness == pytest.approx((0.5, 0.5, 0.0))


class TestInterior:
    def test_order3_agrees_with_closed_form(self, rng):
        for _ in range(1000):
            t = biased_tensor(rng, 3)
            a, b = interior_condition_m(t), interior_condition(t)
            if not (a.marginal or b.marginal):
                assert a.passed == b.passed

    def test_positive_z3_embedding(self):
        p = Z3Params(1, 1, 1, 1, 1, 1, 1, 0, 0)
        assert interior_condition_m(build_tensor(p)).passed

    def test_large_cross_coupling(self):
        p = Z3Params(1, 1, 1, 1, 1, 1, 1, 10, 1)
        t = build_tensor(p)
        v = is_copositive_general(t)
        assert v.status == NOT_COPOSITIVE
        assert t.evaluate(v.witness) < 0


class TestVerdict:
    @pytest.mark.parametrize("m", [2, 3, 4, 5])
    def test_zero_tensor(self, m):
        assert is_copositive_general(SymmetricTensor.zeros(m)).status == COPOSITIVE

    def test_order4_diagonal_strict(self):
        assert is_copositive_general(SymmetricTensor.diagonal(4)).status == STRICTLY_COPOSITIVE

    def test_order3_cross_check(self, rng):
        for _ in range(300):
            is_copositive_general(biased_tensor(rng, 3), cross_check=True)

    @pytest.mark.parametrize("m", [2, 4, 5])
    def test_oracle_agreement(self, rng, m):
        for _ in range(150):
            t = biased_tensor(rng, m)
            v = is_copositive_general(t)
            if v.status == NOT_COPOSITIVE:
                assert t.evaluate(v.witness) < 0
            if v.marginal:
                continue
            ov = simplex_min(t, 100).verdict()
            if ov is not None:
                assert v.positive == ov, t.values
