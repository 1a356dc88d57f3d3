import math

import numpy as np
import pytest

from copos3.oracle import lattice, ray_min_quartic, simplex_min
from copos3.quartic_ray import Quartic, nonneg_on_ray
from copos3.tensor import SymmetricTensor

from conftest import random_tensor, tensor_a123


def test_lattice_size_and_sum():
    pts = lattice(10)
    assert len(pts) == 66
    assert np.allclose(pts.sum(axis=1), 1)


class TestSimplexMin:
    def test_all_ones_is_constant(self):
        assert simplex_min(SymmetricTensor.ones(3)).min_value == pytest.approx(1)

    def test_a123(self):
        r = simplex_min(tensor_a123())
        assert r.min_value == pytest.approx(-1 / 9, abs=1e-9)
        assert r.argmin == pytest.approx((1 / 3, 1 / 3, 1 / 3), abs=1e-6)
        assert r.verdict() is False

    def test_diagonal(self):
        r = simplex_min(SymmetricTensor.diagonal(3))
        assert r.min_value == pytest.approx(1 / 9, abs=1e-9)
        assert r.verdict() is True

    def test_margin_band(self):
        assert simplex_min(SymmetricTensor.zeros(3)).verdict() is None

    def test_refinement_never_worse(self, rng):
        for _ in range(50):
            r = simplex_min(random_tensor(rng, 4), 50)
            assert r.min_value <= r.grid_min + 1e-15

    def test_resolution_convergence(self, rng):
        for m in (3, 4):
            for _ in range(20):
                t = random_tensor(rng, m)
                a = simplex_min(t, 100).min_value
                b = simplex_min(t, 200).min_value
                assert abs(a - b) < 1e-3 * t.scale

    def test_bad_resolution(self):
        with pytest.raises(ValueError):
            simplex_min(SymmetricTensor.ones(3), 0)


class TestRayMin:
    def test_examples(self):
        r = ray_min_quartic(Quartic(1, 0, 0, 0, 1))
        assert (r.min_value, r.argmin) == (1, 0)
        r = ray_min_quartic(Quartic(1, 0, -10, 0, 1))
        assert r.min_value == pytest.approx(-24) and r.argmin == pytest.approx(math.sqrt(5))
        assert ray_min_quartic(Quartic(-1, 0, 0, 0, 0)).unbounded

    def test_window(self):
        r = ray_min_quartic(Quartic(-1, 0, 0, 0, 0), window=2.0)
        assert not r.unbounded and r.min_value == -16

    def test_agrees_with_ray_decision(self, rng):
        for _ in range(2000):
            q = Quartic(*rng.uniform(-1, 1, 5))
            r = ray_min_quartic(q)
            if abs(r.min_value) < 1e-4:
                continue
            assert nonneg_on_ray(q).nonneg == (r.min_value > 0)
