import math

import numpy as np
import pytest

from copos3.general import is_copositive_general
from copos3.oracle import ray_min_quartic, simplex_min
from copos3.quartic_ray import nonneg_on_ray
from copos3.verdict import BFB, NOT_BFB
from copos3.z3 import (
    AlphaBeta,
    Z3Params,
    build_tensor,
    case_tag,
    condition1,
    condition2,
    g_quartic,
    is_bfb,
    negative_alpha_pieces,
    potential,
    transformed_pieces,
)

from conftest import random_params


def params(**kw):
    base = dict(lambda1=0, lambda2=0, lambda3=0, lambda4=0, lambdaS=0, lambdaS1=0, lambdaS2=0, lambdaS12=0, rho=0)
    base.update(kw)
    return Z3Params(**base)


DIAG = params(lambda1=1, lambda2=1, lambdaS=1)
CROSS10 = params(lambda1=1, lambda2=1, lambdaS=1, lambdaS12=10, rho=1)


class TestParams:
    def test_rho_range(self):
        with pytest.raises(ValueError):
            params(rho=1.5)

    def test_non_finite(self):
        with pytest.raises(ValueError):
            params(lambda1=math.inf)

    def test_cross_uses_absolute_value(self):
        assert params(lambdaS12=-3, rho=0.5).cross == 1.5

    def test_dict_round_trip(self, rng):
        p = random_params(rng)
        assert Z3Params.from_dict(p.to_dict()) == p
        with pytest.raises(ValueError):
            Z3Params.from_dict({"lambda1": 1})


class TestTensor:
    def test_diagonal(self):
        t = build_tensor(DIAG)
        assert t.evaluate((1, 2, 3)) == pytest.approx(1 + 16 + 81)

    def test_mixed_multiplicity(self):
        p = params(lambda1=1, lambda2=1, lambda3=6)
        assert build_tensor(p).evaluate((1, 1, 0)) == pytest.approx(8)

    def test_cross_multiplicity(self):
        p = params(lambdaS12=12, rho=1)
        assert build_tensor(p).evaluate((1, 1, 1)) == pytest.approx(-12)

    def test_matches_potential(self, rng):
        for _ in range(100):
            p = random_params(rng)
            x = rng.uniform(0, 2, 3)
            assert build_tensor(p).evaluate(x) == pytest.approx(potential(p, *x), rel=1e-12, abs=1e-12)

    def test_split_in_s(self, rng):
        for _ in range(50):
            p = random_params(rng)
            ab = AlphaBeta.from_params(p)
            h1, h2, s = rng.uniform(0, 2, 3)
            f = p.lambdaS * s**4 + ab.alpha_at(h1, h2) * s**2 + ab.beta_at(h1, h2)
            assert f == pytest.approx(potential(p, h1, h2, s), rel=1e-12, abs=1e-12)


class TestGQuartic:
    def test_diagonal(self):
        assert g_quartic(DIAG).coeffs_high() == (4, 0, 0, 0, 4)

    def test_unit_cross(self):
        p = DIAG.replace(lambdaS12=1, rho=1)
        assert g_quartic(p).coeffs_high() == (4, 0, -1, 0, 4)

    def test_zero_lambda_s_is_negated_square(self, rng):
        p = random_params(rng).replace(lambdaS=0)
        ab = AlphaBeta.from_params(p)
        for t in (0.0, 0.4, 3.0):
            assert g_quartic(p)(t) == pytest.approx(-ab.alpha_at(1, t) ** 2)

    def test_definition(self, rng):
        for _ in range(50):
            p = random_params(rng)
            ab = AlphaBeta.from_params(p)
            t = rng.uniform(0, 3)
            ref = 4 * p.lambdaS * ab.beta_at(1, t) - ab.alpha_at(1, t) ** 2
            assert g_quartic(p)(t) == pytest.approx(ref, rel=1e-12, abs=1e-12)


class TestCondition1:
    def test_perfect_square_boundary(self):
        assert condition1(DIAG.replace(lambda3=-2)).passed

    def test_negative_lambda1(self):
        r = condition1(DIAG.replace(lambda1=-0.1))
        assert not r.passed and r.branch == "lambda1"

    def test_negative_s2(self):
        r = condition1(DIAG.replace(lambdaS2=-3))
        assert not r.passed and r.branch == "lambdaS2"
        assert r.value < 0


class TestCondition2:
    def test_case_a(self):
        r = condition2(DIAG.replace(lambdaS1=1, lambdaS2=1, lambdaS12=1, rho=1))
        assert r.passed and r.branch == "a"

    def test_large_cross_coupling(self):
        g = g_quartic(CROSS10)
        assert g.coeffs_high() == (4, 0, -100, 0, 4)
        assert g(1.0) == -92
        r = condition2(CROSS10)
        assert not r.passed and r.branch == "b"
        assert potential(CROSS10, 1, 1, 1) == -7

    def test_case_b_matches_ray_decision(self):
        p = params(lambda1=25, lambda2=25, lambdaS=1, lambdaS1=-1, lambdaS2=-1)
        r = condition2(p)
        assert r.branch == "b"
        assert r.passed == nonneg_on_ray(g_quartic(p)).nonneg

    def test_case_c(self):
        # alpha(1, t) = 1 - 3 t is negative beyond t = 1/3
        p = DIAG.replace(lambdaS1=1, lambdaS2=0, lambdaS12=3, rho=1)
        assert negative_alpha_pieces(p) == [(pytest.approx(1 / 3), math.inf)]
        r = condition2(p)
        assert r.branch == "c"
        assert r.passed == (ray_min_quartic(g_quartic(p).shifted(1 / 3)).min_value >= 0)

    def test_transformed_pieces_cover_negative_alpha(self, rng):
        for _ in range(200):
            p = random_params(rng, positive_diagonal=True)
            spans = negative_alpha_pieces(p)
            g = g_quartic(p)
            ab = AlphaBeta.from_params(p)
            for pc in transformed_pieces(p, spans):
                for u in rng.uniform(0, 5, 20):
                    t = pc.to_t(u)
                    assert pc.lo <= t <= pc.hi
                    if math.isinf(pc.hi):
                        ref = g(t)
                    else:
                        ref = (u + 1 / (pc.hi - pc.lo)) ** 4 * g(t)
                    assert pc.quartic(u) == pytest.approx(ref, rel=1e-8, abs=1e-8 * g.scale * max(1, t) ** 4)
                    if pc.lo < t < pc.hi:
                        assert ab.alpha_at(1, t) <= 1e-12 * p.scale * max(1, t) ** 2

    def test_case_coverage(self, rng):
        seen = set()
        for _ in range(2000):
            p = random_params(rng)
            tag = case_tag(p, negative_alpha_pieces(p))
            assert tag in {"a", "b", "c", "d", "f"}
            seen.add(tag)
        assert {"a", "b", "d", "f"} <= seen


class TestVerdict:
    def test_diagonal(self):
        assert is_bfb(DIAG).status == BFB

    def test_large_cross_coupling_witness(self):
        v = is_bfb(CROSS10)
        assert v.status == NOT_BFB
        assert potential(CROSS10, *v.witness) < 0
        assert min(v.witness) >= 0 and sum(v.witness) == pytest.approx(1)

    def test_rho_zero_removes_cross_coupling(self, rng):
        for _ in range(100):
            p = random_params(rng).replace(rho=0)
            q = p.replace(lambdaS12=0, lambda4=rng.uniform(-2, 2))
            assert is_bfb(p).status == is_bfb(q).status

    def test_agrees_with_tensor_engine_and_oracle(self, rng):
        for _ in range(400):
            p = random_params(rng, positive_diagonal=True)
            v = is_bfb(p)
            t = build_tensor(p)
            if v.status == NOT_BFB:
                assert potential(p, *v.witness) < 0
            if v.marginal:
                continue
            w = is_copositive_general(t, strict=False)
            if not w.marginal:
                assert v.positive == w.positive
            ov = simplex_min(t, 100).verdict()
            if ov is not None:
                assert v.positive == ov
