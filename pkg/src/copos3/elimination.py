"""Common interior stationary points of two bivariate polynomials.

Interior minimisers of ``A x^m`` on the simplex satisfy
``psi_1 = psi_2 = psi_3`` at ``x = (y1, y2, 1)``.  The two differences
``P = psi_1 - psi_2`` and ``Q = psi_1 - psi_3`` are held as coefficient
arrays ``C[p, q]`` of ``y1**p * y2**q``.  Viewing them as polynomials in
``y2`` with coefficients in ``y1`` ("bands"), the Sylvester resultant in
``y2`` is a univariate polynomial in ``y1`` whose real roots are the
candidate abscissae.  Candidates are confirmed by a damped 2-D Newton
polish on ``(P, Q)``, so a pair is only accepted if it really is a
common root.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np
from numpy.polynomial import polynomial as npoly

from .polysolve import ZERO_THRESHOLD, Polynomial, real_roots, restrict_positive
from .quartic_ray import min_on_ray
from .tensor import SymmetricTensor
from .verdict import BAND, ConditionRecord, normalize, value_record

ACCEPT_RESIDUAL = 1e-7
BOUNDARY_EPS = 1e-8
SWEEP_SAMPLES = 2001


def plane_pair(t: SymmetricTensor) -> tuple[np.ndarray, np.ndarray]:
    """``(psi1 - psi2, psi1 - psi3)`` at ``(y1, y2, 1)`` as coefficient arrays."""
    p1 = t.psi_plane(1)
    return p1 - t.psi_plane(2), p1 - t.psi_plane(3)


def y2_bands(C: np.ndarray, scale: Optional[float] = None) -> list[Polynomial]:
    """Bands of ``C`` viewed as a polynomial in ``y2``, leading band first.

    Bands that vanish identically at the top are stripped, so the list
    length is the effective ``y2`` degree plus one.  An all-zero ``C``
    gives an empty list.
    """
    s = float(np.max(np.abs(C))) if scale is None else scale
    if s == 0.0:
        return []
    cut = ZERO_THRESHOLD * s
    d = C.shape[1] - 1
    while d >= 0 and np.all(np.abs(C[:, d]) <= cut):
        d -= 1
    return [Polynomial(C[:, q]) for q in range(d, -1, -1)]


@dataclass
class SylvesterMatrix:
    """Banded Sylvester matrix with polynomial entries.

    ``eta`` and ``tau`` hold the bands of the two polynomials (leading
    band first).  Row ``r < len(tau) - 1`` carries the ``eta`` bands
    shifted by ``r``; the following rows carry the shifted ``tau`` bands.
    """

    eta: list[Polynomial]
    tau: list[Polynomial]
    reduced: bool = False

    @property
    def size(self) -> int:
        return (len(self.eta) - 1) + (len(self.tau) - 1)

    def at(self, y1) -> np.ndarray:
        """The matrix at ``y1`` (real or complex)."""
        de, dt = len(self.eta) - 1, len(self.tau) - 1
        n = de + dt
        ev = [npoly.polyval(y1, b.coeffs) for b in self.eta]
        tv = [npoly.polyval(y1, b.coeffs) for b in self.tau]
        M = np.zeros((n, n), dtype=np.result_type(*ev, *tv, float))
        for r in range(dt):
            M[r, r : r + de + 1] = ev
        for r in range(de):
            M[dt + r, r : r + dt + 1] = tv
        return M

    def determinant(self, y1):
        if self.size == 0:
            return 1.0
        d = np.linalg.det(self.at(y1))
        return complex(d) if np.iscomplexobj(d) else float(d)


def sylvester_from_planes(P: np.ndarray, Q: np.ndarray, full_degree: Optional[int] = None) -> Optional[SylvesterMatrix]:
    """Build the Sylvester matrix of ``P`` and ``Q`` in ``y2``.

    Returns ``None`` when either polynomial vanishes identically.
    ``reduced`` records that a vanishing leading band was stripped
    relative to ``full_degree``.
    """
    s = max(float(np.max(np.abs(P))), float(np.max(np.abs(Q))))
    eta = y2_bands(P, s)
    tau = y2_bands(Q, s)
    if not eta or not tau:
        return None
    full = P.shape[1] - 1 if full_degree is None else full_degree
    reduced = (len(eta) - 1) < full or (len(tau) - 1) < full
    return SylvesterMatrix(eta, tau, reduced)


@dataclass
class Resultant:
    poly: Polynomial
    matrix: Optional[SylvesterMatrix]
    reduced: bool = False
    vanishes: bool = False  # identically zero: P and Q share a factor

    def __call__(self, y1):
        return self.poly(y1)


def interpolate(fn: Callable[[complex], complex], degree: int, radius: float = 1.0) -> Polynomial:
    """Polynomial of degree ``<= degree`` through samples of ``fn``.

    ``fn`` is sampled at ``degree + 1`` equally spaced points of the
    circle ``|z| = radius`` and the coefficients are recovered with a
    discrete Fourier transform, which is perfectly conditioned in the
    monomial basis.  ``fn`` must accept complex arguments.
    """
    n = degree + 1
    z = radius * np.exp(2j * np.pi * np.arange(n) / n)
    vals = np.array([complex(fn(zk)) for zk in z])
    coeffs = np.fft.fft(vals).real / n
    return Polynomial(coeffs / radius ** np.arange(n))


def interpolate_resultant(S: SylvesterMatrix, degree_bound: int, radius: float = 1.0) -> Polynomial:
    """Determinant of ``S`` as a polynomial in ``y1`` by evaluation and interpolation."""
    return interpolate(S.determinant, degree_bound, radius)


def resultant_of_planes(P: np.ndarray, Q: np.ndarray, degree_bound: Optional[int] = None) -> Resultant:
    """Sylvester resultant of two bivariate polynomials with respect to ``y2``."""
    S = sylvester_from_planes(P, Q)
    if S is None:
        return Resultant(Polynomial([0.0]), None, False, True)
    if degree_bound is None:
        degree_bound = (P.shape[0] - 1) * (Q.shape[0] - 1) if P.shape[0] > 1 else 1
        degree_bound = max(degree_bound, 1)
    G = interpolate_resultant(S, degree_bound)
    vanishes = _vanishes(G, S)
    return Resultant(G, S, S.reduced, vanishes)


def _vanishes(G: Polynomial, S: SylvesterMatrix) -> bool:
    """Is ``G`` zero relative to the size of the matrix entries?"""
    if G.is_zero:
        return True
    # Hadamard-type scale: product of the band norms over the rows
    ne = max(b.scale for b in S.eta)
    nt = max(b.scale for b in S.tau)
    ref = ne ** (len(S.tau) - 1) * nt ** (len(S.eta) - 1)
    return G.scale <= 1e-10 * ref


# -- candidate confirmation ---------------------------------------------------


def _eval2(C: np.ndarray, y1: float, y2: float) -> float:
    return float(npoly.polyval2d(y1, y2, C))


def _grad2(C: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    return npoly.polyder(C, axis=0), npoly.polyder(C, axis=1)


def newton_polish(P: np.ndarray, Q: np.ndarray, y1: float, y2: float, steps: int = 40) -> tuple[float, float]:
    """Damped Newton on ``P = Q = 0`` from ``(y1, y2)``."""
    P1, P2 = _grad2(P)
    Q1, Q2 = _grad2(Q)
    y = np.array([y1, y2], dtype=float)

    def F(v):
        return np.array([_eval2(P, v[0], v[1]), _eval2(Q, v[0], v[1])])

    f = F(y)
    nf = float(np.linalg.norm(f))
    for _ in range(steps):
        if nf == 0.0:
            break
        J = np.array(
            [
                [_eval2(P1, y[0], y[1]), _eval2(P2, y[0], y[1])],
                [_eval2(Q1, y[0], y[1]), _eval2(Q2, y[0], y[1])],
            ]
        )
        step = np.linalg.lstsq(J, -f, rcond=None)[0]
        if not np.all(np.isfinite(step)):
            break
        lam = 1.0
        improved = False
        for _ in range(12):
            yn = y + lam * step
            fn = F(yn)
            nfn = float(np.linalg.norm(fn))
            if nfn < nf:
                improved = True
                break
            lam *= 0.5
        if not improved:
            break
        small = float(np.linalg.norm(yn - y)) <= 1e-15 * (1.0 + float(np.linalg.norm(y)))
        y, f, nf = yn, fn, nfn
        if small:
            break
    return float(y[0]), float(y[1])


@dataclass
class Candidate:
    """A confirmed interior common root ``(alpha, beta)``."""

    alpha: float
    beta: float
    residual4: float  # |P| at the simplex-normalised point, over the tensor scale
    residual5: float
    point: tuple[float, float, float]
    value: float

    def to_dict(self) -> dict:
        return {
            "alpha": self.alpha,
            "beta": self.beta,
            "residual4": self.residual4,
            "residual5": self.residual5,
            "point": list(self.point),
            "value": self.value,
        }


def normalized_residuals(t: SymmetricTensor, P, Q, y1: float, y2: float) -> tuple[float, float]:
    s = (y1 + y2 + 1.0) ** (t.order - 1) * t.scale
    return abs(_eval2(P, y1, y2)) / s, abs(_eval2(Q, y1, y2)) / s


def _section(C: np.ndarray, y1: float) -> Polynomial:
    """``C(y1, .)`` as a polynomial in ``y2``."""
    return Polynomial(npoly.polyval(y1, C))


def confirm(t: SymmetricTensor, P, Q, y1: float, y2: float, polish: bool = True) -> Optional[Candidate]:
    if polish:
        y1, y2 = newton_polish(P, Q, y1, y2)
    if not (y1 > 0 and y2 > 0 and math.isfinite(y1) and math.isfinite(y2)):
        return None
    r4, r5 = normalized_residuals(t, P, Q, y1, y2)
    if max(r4, r5) > ACCEPT_RESIDUAL:
        return None
    pt = normalize((y1, y2, 1.0))
    return Candidate(y1, y2, r4, r5, pt, t.evaluate(pt))


def candidates_at(t: SymmetricTensor, P, Q, alpha: float) -> list[Candidate]:
    """Confirmed common roots above the abscissa ``alpha``.

    Second coordinates are taken from the positive roots of both
    sections ``P(alpha, .)`` and ``Q(alpha, .)``; each is polished and
    must satisfy both equations.
    """
    out: list[Candidate] = []
    seeds: list[float] = []
    for C in (P, Q):
        sec = _section(C, alpha)
        if sec.is_zero or sec.scale <= ZERO_THRESHOLD * t.scale * (1 + alpha) ** (t.order - 1):
            continue
        seeds += restrict_positive(real_roots(sec)).values
    for b in seeds:
        c = confirm(t, P, Q, alpha, b)
        if c is not None and not any(_same(c, o) for o in out):
            out.append(c)
    out += _line_candidates(t, P, Q, alpha)
    return out


def _same(a: Candidate, b: Candidate) -> bool:
    return max(abs(a.point[i] - b.point[i]) for i in range(3)) <= 1e-9


def _line_candidates(t: SymmetricTensor, P, Q, alpha: float) -> list[Candidate]:
    """Handle an abscissa where both sections vanish identically.

    Then every ``y2`` is a common root and the line ``y1 = alpha`` is a
    stationary set; the sign of ``psi_1(alpha, ., 1)`` decides.
    """
    lim = 1e-9 * t.scale * (1 + alpha) ** (t.order - 1)
    if _section(P, alpha).scale > lim or _section(Q, alpha).scale > lim:
        return []
    psi1 = _section(t.psi_plane(1), alpha)
    mval, arg = min_on_ray(psi1)
    if mval >= 0:
        return []
    y2 = arg if math.isfinite(arg) else _descend_to_negative(psi1)
    y2 = max(y2, 1e-12)
    pt = normalize((alpha, y2, 1.0))
    r4, r5 = normalized_residuals(t, P, Q, alpha, y2)
    return [Candidate(alpha, y2, r4, r5, pt, t.evaluate(pt))]


def _descend_to_negative(p: Polynomial) -> float:
    x = 1.0
    while p(x) >= 0 and x < 1e12:
        x *= 2.0
    return x


# -- degenerate resultant: trace the curve P = 0 ------------------------------


def trace_curves(t: SymmetricTensor, P, Q, samples: int = SWEEP_SAMPLES) -> list[Candidate]:
    """Fallback used when the resultant vanishes identically.

    Sweeps ``y1 = u / (1 - u)`` over ``u`` in (0, 1), follows the
    positive branches of ``P(y1, .) = 0`` (or of ``Q`` when ``P`` is
    zero), and collects points where the other polynomial vanishes:
    either along a shared component (small residual) or at a sign change
    located by bisection.
    """
    zP = not np.any(P)
    zQ = not np.any(Q)
    if zP and zQ:
        # all three psi agree, so the form is constant on the simplex
        pt = (1 / 3, 1 / 3, 1 / 3)
        return [Candidate(1.0, 1.0, 0.0, 0.0, pt, t.evaluate(pt))]
    A, B = (Q, P) if zP else (P, Q)
    u = (np.arange(1, samples + 1)) / (samples + 1)
    ys = u / (1 - u)
    out: list[Candidate] = []
    prev: Optional[tuple[float, list[float], list[float]]] = None
    for y1 in ys:
        sec = _section(A, float(y1))
        if sec.is_zero:
            prev = None
            continue
        roots = restrict_positive(real_roots(sec)).values
        svals = []
        for b in roots:
            r4, r5 = normalized_residuals(t, A, B, float(y1), b)
            svals.append(_eval2(B, float(y1), b))
            if max(r4, r5) <= ACCEPT_RESIDUAL:
                pt = normalize((float(y1), b, 1.0))
                out.append(Candidate(float(y1), b, r4, r5, pt, t.evaluate(pt)))
        if prev is not None and len(prev[1]) == len(roots):
            for k in range(len(roots)):
                if prev[2][k] * svals[k] < 0:
                    c = _bisect_branch(t, A, B, prev[0], float(y1), prev[1][k])
                    if c is not None:
                        out.append(c)
        prev = (float(y1), roots, svals)
    return out


def _bisect_branch(t, A, B, lo: float, hi: float, b0: float) -> Optional[Candidate]:
    def branch_root(y1, guess):
        rs = restrict_positive(real_roots(_section(A, y1))).values
        return min(rs, key=lambda r: abs(r - guess)) if rs else None

    b_lo = branch_root(lo, b0)
    if b_lo is None:
        return None
    s_lo = _eval2(B, lo, b_lo)
    b = b_lo
    for _ in range(50):
        mid = 0.5 * (lo + hi)
        bm = branch_root(mid, b)
        if bm is None:
            return None
        sm = _eval2(B, mid, bm)
        if sm * s_lo <= 0:
            hi = mid
        else:
            lo, s_lo = mid, sm
        b = bm
    return confirm(t, A, B, 0.5 * (lo + hi), b)


# -- turning candidates into a condition record --------------------------------


def interior_record(
    t: SymmetricTensor,
    cands: list[Candidate],
    tol: float = BAND,
    name: str = "interior",
    detail: Optional[dict] = None,
) -> ConditionRecord:
    """Sign test of the form at confirmed interior common roots."""
    detail = dict(detail or {})
    detail["candidates"] = [c.to_dict() for c in cands]
    rec = value_record(name, [c.point for c in cands], [c.value for c in cands], tol, t.scale, "common-root", detail)
    if not rec.passed:
        w = min(cands, key=lambda c: c.value)
        if min(w.alpha, w.beta) < BOUNDARY_EPS or max(w.alpha, w.beta) > 1 / BOUNDARY_EPS:
            rec.marginal = True
    return rec


def abscissae(G: Polynomial) -> list[float]:
    """Positive real roots of ``G`` plus near-double roots.

    A tangential intersection gives ``G`` a double root that rounding
    may split into a complex pair; positive stationary points of ``G``
    where ``|G|`` is tiny relative to its terms are kept as well.
    """
    if G.is_zero or G.degree < 1:
        return []
    roots = restrict_positive(real_roots(G)).values
    dG = G.derivative()
    extra = []
    if dG.degree >= 1:
        for r in restrict_positive(real_roots(dG)).values:
            size = sum(abs(c) * r**k for k, c in enumerate(G.coeffs))
            if abs(G(r)) <= 1e-6 * size:
                extra.append(r)
    return roots + [r for r in extra if all(abs(r - q) > 1e-9 * max(1.0, r) for q in roots)]
