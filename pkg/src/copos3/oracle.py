"""Brute-force ground truth.

``simplex_min`` scans the barycentric lattice of the standard simplex and
polishes the best lattice point by a pairwise pattern search that keeps
the iterate on the simplex.  ``ray_min_quartic`` minimises a quartic on
``t >= 0`` from the eigenvalue roots of its derivative.  Neither routine
uses the closed-form solvers or the decision procedures they check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

import numpy as np

from .tensor import SymmetricTensor, _layout

DEFAULT_RESOLUTION = 200
MARGIN = 1e-4


@dataclass(frozen=True)
class OracleResult:
    min_value: float
    argmin: tuple[float, float, float]
    resolution: int
    refined: bool
    grid_min: float

    def verdict(self, margin: float = MARGIN) -> Optional[bool]:
        """True/False for copositive/not, ``None`` inside the margin band."""
        if abs(self.min_value) < margin:
            return None
        return self.min_value > 0


@lru_cache(maxsize=8)
def lattice(resolution: int) -> np.ndarray:
    """All points ``(i, j, k) / N`` with ``i + j + k = N``."""
    n = resolution
    i, j = np.meshgrid(np.arange(n + 1), np.arange(n + 1), indexing="ij")
    keep = i + j <= n
    i, j = i[keep], j[keep]
    pts = np.stack([i, j, n - i - j], axis=1).astype(float) / n
    pts.setflags(write=False)
    return pts


@lru_cache(maxsize=16)
def _monomial_table(order: int, resolution: int) -> np.ndarray:
    pts = lattice(resolution)
    exps, mult = _layout(order)
    table = np.ones((len(pts), len(exps)))
    for k, e in enumerate(exps):
        for ax in range(3):
            if e[ax]:
                table[:, k] *= pts[:, ax] ** e[ax]
    table *= mult[None, :]
    table.setflags(write=False)
    return table


def _refine(t: SymmetricTensor, x: np.ndarray, h: float, stop: float) -> tuple[np.ndarray, float]:
    exps, coef = t.monomials()

    def f(y):
        return float(coef @ np.prod(y[None, :] ** exps, axis=1))

    fx = f(x)
    pairs = ((0, 1), (0, 2), (1, 2))
    while h >= stop:
        moved = False
        for i, j in pairs:
            for sgn in (1.0, -1.0):
                step = sgn * h
                # keep both coordinates nonnegative
                step = min(step, x[j]) if step > 0 else max(step, -x[i])
                if step == 0.0:
                    continue
                y = x.copy()
                y[i] += step
                y[j] -= step
                fy = f(y)
                if fy < fx:
                    x, fx, moved = y, fy, True
        if not moved:
            h *= 0.5
    return x, fx


def simplex_min(
    t: SymmetricTensor, resolution: int = DEFAULT_RESOLUTION, refine: bool = True
) -> OracleResult:
    """Minimum of ``A x^m`` over the standard simplex."""
    if resolution < 1:
        raise ValueError("resolution must be positive")
    pts = lattice(resolution)
    vals = _monomial_table(t.order, resolution) @ t.values
    k = int(np.argmin(vals))
    grid_min = float(vals[k])
    x, fx = pts[k].copy(), grid_min
    if refine:
        x, fx = _refine(t, x, 1.0 / resolution, 1e-10)
        x = x / x.sum()
        fx = t.evaluate(x)
    return OracleResult(fx, (float(x[0]), float(x[1]), float(x[2])), resolution, refine, grid_min)


@dataclass(frozen=True)
class RayMin:
    min_value: float
    argmin: float
    unbounded: bool


def ray_min_quartic(q, window: Optional[float] = None) -> RayMin:
    """Minimum of ``g`` over ``t >= 0`` (or over ``[0, window]``).

    ``q`` is anything exposing ``coeffs_high()`` (``a, b, c, d, e``).
    A negative effective leading coefficient without a window reports
    ``unbounded=True`` and ``min_value=-inf``.
    """
    hi = np.array(q.coeffs_high(), dtype=float)
    scale = float(np.max(np.abs(hi)))
    if scale == 0.0:
        return RayMin(0.0, 0.0, False)
    nz = np.flatnonzero(np.abs(hi) > 1e-12 * scale)
    hi = hi[nz[0]:]
    if window is None and len(hi) > 1 and hi[0] < 0:
        return RayMin(-math.inf, math.inf, True)
    cands = [0.0]
    if window is not None:
        cands.append(float(window))
    if len(hi) > 2:
        der = np.polyder(hi)
        for r in np.roots(der):
            if abs(r.imag) <= 1e-7 * max(1.0, abs(r)) and r.real > 0:
                x = float(r.real)
                if window is None or x <= window:
                    cands.append(x)
    vals = [float(np.polyval(hi, x)) for x in cands]
    k = int(np.argmin(vals))
    return RayMin(vals[k], cands[k], False)
