"""Copositivity of order-``m`` symmetric tensors in three variables.

Same five conditions as the order-3 engine, without closed forms:

* vertices: the diagonal entries;
* edges: stationary points of the form along each edge are the roots of
  ``phi = psi_i - psi_j`` restricted to the edge;
* interior: common roots of ``psi1 - psi2`` and ``psi1 - psi3`` at
  ``(y1, y2, 1)``, located through the Sylvester resultant in ``y2``
  (a polynomial in ``y1`` of degree at most ``(m - 1)**2``).
"""

from __future__ import annotations

from typing import Optional

from . import elimination as el
from . import order3
from .polysolve import real_roots
from .tensor import SymmetricTensor, edge_psi
from .verdict import BAND, ConditionRecord, Verdict, run_checks, value_record

EDGES = order3.EDGES
ENDPOINT_SLACK = 1e-9


class EngineMismatchError(AssertionError):
    """The general engine and the order-3 closed form disagree."""


def vertex_condition(t: SymmetricTensor, tol: float = BAND) -> ConditionRecord:
    return order3.vertex_condition(t, tol)


def edge_condition_m(t: SymmetricTensor, axes: tuple[int, int], tol: float = BAND) -> ConditionRecord:
    """Sign of the form at the stationary points inside one edge.

    On the edge ``x_i = s, x_j = 1 - s`` the stationary points are the
    roots of ``phi = psi_i - psi_j`` in (0, 1), where the form equals
    ``psi_i``.  When ``phi`` vanishes identically the form is constant
    along the edge and its midpoint decides.
    """
    i, j = axes
    name = f"edge{i}{j}"
    phi1 = edge_psi(t, i, axes)
    phi = phi1 - edge_psi(t, j, axes)
    if phi.is_zero or phi.scale <= 1e-12 * t.scale:
        stat = [0.5]
        branch = "flat"
    else:
        stat = []
        for r in real_roots(phi).values:
            if -ENDPOINT_SLACK < r < 1.0 + ENDPOINT_SLACK:
                stat.append(min(max(r, 0.0), 1.0))
        branch = "roots"
    pts = [order3._embed(s, axes) for s in stat]
    vals = [t.evaluate(p) for p in pts]
    detail = {"stationary": stat, "phi1": [float(phi1(s)) for s in stat]}
    return value_record(name, pts, vals, tol, t.scale, branch, detail)


def sylvester_matrix(t: SymmetricTensor) -> Optional[el.SylvesterMatrix]:
    """Banded Sylvester matrix of ``psi1 - psi2`` and ``psi1 - psi3`` in ``y2``.

    ``None`` when one of the two polynomials vanishes identically.
    """
    P, Q = el.plane_pair(t)
    return el.sylvester_from_planes(P, Q, t.order - 1)


def sylvester_resultant(t: SymmetricTensor) -> el.Resultant:
    """Resultant of the interior system as a polynomial in ``y1``.

    ``reduced`` is set when vanishing leading bands were stripped and
    ``vanishes`` when the two polynomials share a factor.
    """
    P, Q = el.plane_pair(t)
    return el.resultant_of_planes(P, Q, (t.order - 1) ** 2)


def interior_condition_m(t: SymmetricTensor, tol: float = BAND) -> ConditionRecord:
    """No interior common root of ``psi1 = psi2 = psi3`` with a negative value."""
    P, Q = el.plane_pair(t)
    res = el.resultant_of_planes(P, Q, (t.order - 1) ** 2)
    detail: dict = {"resultant": list(res.poly.coeffs), "reduced": res.reduced}
    if res.vanishes:
        detail["path"] = "curve"
        cands = el.trace_curves(t, P, Q)
    else:
        detail["path"] = "reduced" if res.reduced else "resultant"
        cands = []
        for a in el.abscissae(res.poly):
            for c in el.candidates_at(t, P, Q, a):
                if not any(el._same(c, o) for o in cands):
                    cands.append(c)
    return el.interior_record(t, cands, tol, "interior", detail)


def is_copositive_general(
    t: SymmetricTensor, strict: bool = True, tol: float = BAND, cross_check: bool = False
) -> Verdict:
    """Copositivity verdict for a tensor of any order ``m >= 2``.

    Order-3 tensors go through the closed-form engine.  With
    ``cross_check`` the resultant engine is run as well and a different
    status raises :class:`EngineMismatchError`.
    """
    if t.order == 3:
        v = order3.is_copositive_order3(t, strict, tol)
        if cross_check:
            w = _run_general(t, strict, tol)
            if w.status != v.status and not (v.marginal or w.marginal):
                raise EngineMismatchError(f"closed form says {v.status}, resultant engine says {w.status}")
        return v
    return _run_general(t, strict, tol)


def _run_general(t: SymmetricTensor, strict: bool, tol: float) -> Verdict:
    checks = [lambda: vertex_condition(t, tol)]
    checks += [lambda ax=ax: edge_condition_m(t, ax, tol) for ax in EDGES]
    checks.append(lambda: interior_condition_m(t, tol))
    return run_checks(checks, strict, tol)
