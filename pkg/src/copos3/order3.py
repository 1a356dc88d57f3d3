"""Closed-form copositivity test for order-3 tensors in three variables.

The form is copositive on the simplex iff it is nonnegative at the
vertices, on the three edges (binary cubics, decided by the Liu-Song
criterion) and at every interior stationary point.  Interior stationary
points are common roots of two quadratics in ``y2`` whose resultant is
a quartic ``G(y1)``; its positive roots are found in closed form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from numpy.polynomial import polynomial as npoly

from . import elimination as el
from .dim2 import EdgeTensor3, edge_minimum, liu_song_copositive
from .polysolve import Polynomial, real_roots, restrict_positive
from .quartic_ray import Quartic
from .tensor import SymmetricTensor, edge_restriction
from .verdict import BAND, ConditionRecord, Verdict, run_checks, value_record

EDGES = ((1, 2), (1, 3), (2, 3))
CROSSCHECK_POINTS = (0.3711, -1.2917)
CROSSCHECK_TOL = 1e-9


def _require_order3(t: SymmetricTensor) -> None:
    if t.order != 3:
        raise ValueError(f"expected an order-3 tensor, got order {t.order}")


@dataclass(frozen=True)
class InteriorSystem:
    """``psi1 - psi2 = eta0 y2^2 + eta1 y2 + eta2`` and likewise with ``tau``.

    The coefficients are polynomials in ``y1`` of degree 0, 1 and 2.
    """

    eta0: float
    tau0: float
    eta1: Polynomial
    tau1: Polynomial
    eta2: Polynomial
    tau2: Polynomial

    @classmethod
    def from_tensor(cls, t: SymmetricTensor) -> "InteriorSystem":
        _require_order3(t)
        a = t.__getitem__
        return cls(
            eta0=a("122") - a("222"),
            tau0=a("122") - a("223"),
            eta1=Polynomial([2 * (a("123") - a("223")), 2 * (a("112") - a("122"))]),
            tau1=Polynomial([2 * (a("123") - a("233")), 2 * (a("112") - a("123"))]),
            eta2=Polynomial(
                [a("133") - a("233"), 2 * (a("113") - a("123")), a("111") - a("112")]
            ),
            tau2=Polynomial(
                [a("133") - a("333"), 2 * (a("113") - a("133")), a("111") - a("113")]
            ),
        )

    def planes(self) -> tuple[np.ndarray, np.ndarray]:
        """Both polynomials as coefficient arrays ``C[p, q]`` of ``y1^p y2^q``."""
        out = []
        for b0, b1, b2 in ((self.eta0, self.eta1, self.eta2), (self.tau0, self.tau1, self.tau2)):
            C = np.zeros((3, 3))
            C[0, 2] = b0
            C[: len(b1.coeffs), 1] = b1.coeffs
            C[: len(b2.coeffs), 0] = b2.coeffs
            out.append(C)
        return out[0], out[1]

    def terms(self, y1: float) -> tuple[float, ...]:
        """The seven signed terms of the expanded resultant at ``y1``."""
        e0, t0 = self.eta0, self.tau0
        e1, t1 = npoly.polyval(y1, self.eta1.coeffs), npoly.polyval(y1, self.tau1.coeffs)
        e2, t2 = npoly.polyval(y1, self.eta2.coeffs), npoly.polyval(y1, self.tau2.coeffs)
        return (
            e0 * e0 * t2 * t2,
            e0 * e2 * t1 * t1,
            -2 * e0 * e2 * t0 * t2,
            -e0 * e1 * t1 * t2,
            e1 * e1 * t0 * t2,
            e2 * e2 * t0 * t0,
            -e1 * e2 * t0 * t1,
        )

    def resultant_at(self, y1):
        return sum(self.terms(y1))

    def determinant_at(self, y1: float) -> float:
        """The 4x4 Sylvester determinant evaluated numerically."""
        e = (self.eta0, float(self.eta1(y1)), float(self.eta2(y1)))
        t = (self.tau0, float(self.tau1(y1)), float(self.tau2(y1)))
        M = np.array(
            [
                [e[0], e[1], e[2], 0.0],
                [0.0, e[0], e[1], e[2]],
                [t[0], t[1], t[2], 0.0],
                [0.0, t[0], t[1], t[2]],
            ]
        )
        return float(np.linalg.det(M))

    def band_scale(self) -> float:
        es = max(abs(self.eta0), self.eta1.scale, self.eta2.scale)
        ts = max(abs(self.tau0), self.tau1.scale, self.tau2.scale)
        return es * es * ts * ts


def resultant_quartic(sys: InteriorSystem) -> Quartic:
    """Coefficients of the resultant ``G(y1)`` as a quartic.

    Interpolated from five samples of the expanded expression; see
    :func:`crosscheck_error` for the comparison with the 4x4 determinant.
    """
    G = el.interpolate(sys.resultant_at, 4)
    return Quartic.from_low(G.coeffs)


def crosscheck_error(sys: InteriorSystem, G: Quartic) -> float:
    """Largest relative gap between ``G`` and the determinant at the check points."""
    worst = 0.0
    for y in CROSSCHECK_POINTS:
        ref = math.fsum(abs(v) for v in sys.terms(y))
        gap = abs(G(y) - sys.determinant_at(y))
        if ref > 0:
            worst = max(worst, gap / ref)
        elif gap > 0:
            worst = math.inf
    return worst


# -- the five conditions -------------------------------------------------------


def vertex_condition(t: SymmetricTensor, tol: float = BAND) -> ConditionRecord:
    """Nonnegativity (positivity for the strict test) at the three vertices."""
    pts = [(1.0, 0.0, 0.0), (0.0, 1.0, 0.0), (0.0, 0.0, 1.0)]
    vals = [t[(i,) * t.order] for i in (1, 2, 3)]
    return value_record("vertex", pts, vals, tol, t.scale)


def _embed(s: float, axes: tuple[int, int]) -> tuple[float, float, float]:
    x = [0.0, 0.0, 0.0]
    x[axes[0] - 1] = s
    x[axes[1] - 1] = 1.0 - s
    return (x[0], x[1], x[2])


def edge_tensor(t: SymmetricTensor, axes: tuple[int, int]) -> EdgeTensor3:
    i, j = axes
    return EdgeTensor3(t[(i, i, i)], t[(i, i, j)], t[(i, j, j)], t[(j, j, j)])


def edge_condition(t: SymmetricTensor, axes: tuple[int, int], tol: float = BAND) -> ConditionRecord:
    """Liu-Song test on one edge, with a minimising witness on failure.

    The strict outcome is the sign of the form at the stationary points
    inside the edge.
    """
    _require_order3(t)
    name = f"edge{axes[0]}{axes[1]}"
    b = edge_tensor(t, axes)
    ls = liu_song_copositive(b, tol)
    f = edge_restriction(t, axes)
    stat = [s for s in restrict_positive(real_roots(f.derivative())).values if s < 1.0]
    pts = [_embed(s, axes) for s in stat]
    rec = value_record(name, pts, [t.evaluate(p) for p in pts], tol, t.scale, ls.branch)
    rec.detail["liu_song_expression"] = ls.expression
    rec.detail["discriminant_invariant"] = ls.invariant
    rec.marginal = rec.marginal or ls.marginal
    s, _ = edge_minimum(b)
    w = _embed(s, axes)
    v = t.evaluate(w)
    rec.detail["edge_minimum"] = v
    cut = tol * t.scale
    if ls.copositive and v >= -cut:
        return ConditionRecord(name, True, rec.marginal, ls.branch, None, None, rec.detail)
    if v < -cut:
        if ls.copositive:
            rec.detail["closed_form_disagrees"] = True
        return ConditionRecord(name, False, rec.marginal, None, w, v, rec.detail)
    # closed form rejects but the minimum sits inside the band
    return ConditionRecord(name, True, True, None, None, None, rec.detail)


def edge_conditions(t: SymmetricTensor, tol: float = BAND) -> list[ConditionRecord]:
    return [edge_condition(t, ax, tol) for ax in EDGES]


def interior_condition(t: SymmetricTensor, tol: float = BAND) -> ConditionRecord:
    """No interior common root of ``psi1 = psi2 = psi3`` with a negative value."""
    _require_order3(t)
    sys = InteriorSystem.from_tensor(t)
    P, Q = sys.planes()
    G = resultant_quartic(sys)
    err = crosscheck_error(sys, G)
    detail: dict = {"resultant": list(G.coeffs_low()), "crosscheck": err}
    poly = G.polynomial()
    path = "quartic"
    if err > CROSSCHECK_TOL or G.scale <= 1e-10 * sys.band_scale() or sys.band_scale() == 0.0:
        # fall back on the band-stripped resultant of the actual degrees
        res = el.resultant_of_planes(P, Q, 4)
        poly = res.poly
        path = "reduced" if not res.vanishes else "curve"
    detail["path"] = path
    if path == "curve":
        cands = el.trace_curves(t, P, Q)
    else:
        cands = _candidates_from(t, P, Q, poly)
    return el.interior_record(t, cands, tol, "interior", detail)


def _candidates_from(t, P, Q, G: Polynomial) -> list:
    alphas = el.abscissae(G)
    out: list = []
    for a in alphas:
        for c in el.candidates_at(t, P, Q, a):
            if not any(el._same(c, o) for o in out):
                out.append(c)
    return out


def is_copositive_order3(t: SymmetricTensor, strict: bool = True, tol: float = BAND) -> Verdict:
    """Copositivity verdict for an order-3 tensor.

    With ``strict`` a passing tensor is further classified as strictly
    copositive or merely copositive; without it the positive status is
    always ``"copositive"``.
    """
    _require_order3(t)
    checks = [lambda: vertex_condition(t, tol)]
    checks += [lambda ax=ax: edge_condition(t, ax, tol) for ax in EDGES]
    checks.append(lambda: interior_condition(t, tol))
    return run_checks(checks, strict, tol)
