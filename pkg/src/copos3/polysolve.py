"""Real roots of univariate polynomials.

Closed forms up to degree four (quadratic formula, Cardano with the
trigonometric branch, Descartes' factorisation of the depressed quartic)
and a companion-matrix path for higher degrees.  Every root is polished
by a few guarded Newton steps on the original polynomial and nearby
roots are clustered into a single root with summed multiplicity.

Coefficients are always stored lowest degree first.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np
from numpy.polynomial import polynomial as npoly

ZERO_THRESHOLD = 1e-12
CLUSTER_TOL = 1e-7
# relative slack used when a discriminant sits at zero up to rounding
_DISC_TOL = 1e-10
_NEWTON_STEPS = 8


@dataclass(frozen=True)
class Polynomial:
    """Real polynomial, ``coeffs[k]`` multiplies ``x**k``."""

    coeffs: tuple[float, ...]
    zero_threshold: float = ZERO_THRESHOLD

    def __init__(self, coeffs: Iterable[float], zero_threshold: float = ZERO_THRESHOLD):
        c = tuple(float(v) for v in coeffs)
        if not c:
            c = (0.0,)
        object.__setattr__(self, "coeffs", c)
        object.__setattr__(self, "zero_threshold", zero_threshold)

    @property
    def scale(self) -> float:
        return max(abs(v) for v in self.coeffs)

    @property
    def degree(self) -> int:
        s = self.scale
        if s == 0.0:
            return 0
        cut = self.zero_threshold * s
        for k in range(len(self.coeffs) - 1, -1, -1):
            if abs(self.coeffs[k]) > cut:
                return k
        return 0

    @property
    def is_zero(self) -> bool:
        return self.scale == 0.0

    def trimmed(self) -> np.ndarray:
        """Coefficients up to ``degree`` as an array."""
        return np.asarray(self.coeffs[: self.degree + 1], dtype=float)

    def __call__(self, x):
        return npoly.polyval(x, np.asarray(self.coeffs))

    def derivative(self) -> "Polynomial":
        if len(self.coeffs) == 1:
            return Polynomial([0.0], self.zero_threshold)
        return Polynomial(npoly.polyder(np.asarray(self.coeffs)), self.zero_threshold)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return Polynomial(npoly.polysub(self.coeffs, other.coeffs), self.zero_threshold)

    def __add__(self, other: "Polynomial") -> "Polynomial":
        return Polynomial(npoly.polyadd(self.coeffs, other.coeffs), self.zero_threshold)

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        return Polynomial(npoly.polymul(self.coeffs, other.coeffs), self.zero_threshold)

    @classmethod
    def from_roots(cls, roots: Sequence[float], lead: float = 1.0) -> "Polynomial":
        return cls(lead * npoly.polyfromroots(roots))


@dataclass(frozen=True)
class RootSet:
    """Sorted real roots with multiplicities.

    ``all_reals`` marks the identically-zero polynomial, for which every
    real number is a root and ``roots`` is empty.
    """

    roots: tuple[tuple[float, int], ...] = ()
    residual_bound: float = 0.0
    all_reals: bool = False

    @property
    def values(self) -> list[float]:
        return [r for r, _ in self.roots]

    def expanded(self) -> list[float]:
        """Roots repeated according to multiplicity."""
        out: list[float] = []
        for r, k in self.roots:
            out.extend([r] * k)
        return out

    def __len__(self) -> int:
        return len(self.roots)


def _as_poly(p) -> Polynomial:
    return p if isinstance(p, Polynomial) else Polynomial(p)


def _unit_scaled(p: Polynomial) -> Polynomial:
    """``p`` divided by the power of two nearest its scale (exact, same roots).

    Keeps intermediate quantities such as discriminants away from
    overflow and underflow.
    """
    s = p.scale
    if s == 0.0:
        return p
    e = math.frexp(s)[1]
    if e == 1:
        return p
    return Polynomial([math.ldexp(c, -e) for c in p.coeffs], p.zero_threshold)


def _zero_roots(p: Polynomial) -> tuple[int, Polynomial]:
    """Split off the root at 0: ``p = x**k * q`` with ``q(0) != 0``."""
    cut = p.zero_threshold * p.scale
    k = 0
    while k < p.degree and abs(p.coeffs[k]) <= cut:
        k += 1
    if k == 0:
        return 0, p
    return k, Polynomial(p.coeffs[k:], p.zero_threshold)


def _with_zero_roots(p: Polynomial, k: int, rest: RootSet) -> RootSet:
    """Merge ``k`` roots at 0 into the roots of the deflated polynomial."""
    return _finish(p, [0.0] * k + rest.expanded())


RESIDUAL_TOL = 1e-9


def _residual_ok(p: Polynomial, r: float) -> bool:
    """``|p(r)| <= RESIDUAL_TOL * scale * max(1, |r|)**degree``."""
    with np.errstate(over="ignore", invalid="ignore"):
        return abs(float(p(r))) <= RESIDUAL_TOL * p.scale * max(1.0, abs(r)) ** p.degree


def _checked(p: Polynomial, rs: RootSet) -> RootSet:
    """Replace closed-form roots that miss the residual bound.

    Such roots come from cancellation in the closed form (widely spread
    root magnitudes); the companion-matrix roots are used instead.
    """
    if all(_residual_ok(p, r) for r in rs.values):
        return rs
    good = [r for r, m in rs.roots if _residual_ok(p, r) for _ in range(m)]
    for r in companion_roots(p).expanded():
        if all(abs(r - g) > CLUSTER_TOL * max(1.0, abs(r)) for g in good):
            good.append(r)
    return _finish(p, good)


def _polish(c: np.ndarray, x: float) -> float:
    """Newton steps on ``c``; a step is kept only if it lowers ``|p|``."""
    with np.errstate(over="ignore", invalid="ignore"):
        return _newton(c, x)


def _newton(c: np.ndarray, x: float) -> float:
    dc = npoly.polyder(c)
    fx = abs(npoly.polyval(x, c))
    for _ in range(_NEWTON_STEPS):
        if fx == 0.0:
            break
        d = npoly.polyval(x, dc)
        if d == 0.0 or not math.isfinite(d):
            break
        xn = x - npoly.polyval(x, c) / d
        fn = abs(npoly.polyval(xn, c))
        if not fn < fx:
            break
        x, fx = xn, fn
    return float(x)


def _finish(p: Polynomial, raw: Iterable[float]) -> RootSet:
    c = np.asarray(p.coeffs, dtype=float)
    pts = sorted(_polish(c, float(r)) for r in raw if math.isfinite(r))
    clusters: list[list[float]] = []
    for r in pts:
        if clusters and abs(r - clusters[-1][-1]) <= CLUSTER_TOL * max(1.0, abs(r)):
            clusters[-1].append(r)
        else:
            clusters.append([r])
    roots = []
    worst = 0.0
    scale = p.scale or 1.0
    for grp in clusters:
        if len(grp) == 1:
            r = grp[0]
        else:
            # keep the member with the smallest residual; averaging can
            # land off a multiple root that Newton only reaches linearly
            r = min(grp, key=lambda v: abs(npoly.polyval(v, c)))
        roots.append((r, len(grp)))
        worst = max(worst, float(abs(npoly.polyval(r, c))) / scale)
    return RootSet(tuple(roots), worst)


def _quadratic_raw(c0: float, c1: float, c2: float) -> list[float]:
    if c2 == 0.0:
        return [] if c1 == 0.0 else [-c0 / c1]
    disc = c1 * c1 - 4.0 * c2 * c0
    if disc < 0.0:
        if disc >= -_DISC_TOL * (c1 * c1 + abs(4.0 * c2 * c0)):
            disc = 0.0
        else:
            return []
    if disc == 0.0:
        r = -c1 / (2.0 * c2)
        return [r, r]
    q = -0.5 * (c1 + math.copysign(math.sqrt(disc), c1))
    if q == 0.0:
        return [0.0, 0.0]
    return [q / c2, c0 / q]


def solve_quadratic(p) -> RootSet:
    """Real roots of a polynomial of degree at most two."""
    p = _unit_scaled(_as_poly(p))
    if p.is_zero:
        return RootSet(all_reals=True)
    deg = p.degree
    if deg > 2:
        raise ValueError(f"solve_quadratic needs degree <= 2, got {deg}")
    c = list(p.coeffs[: deg + 1]) + [0.0] * (3 - deg - 1)
    if deg == 0:
        return RootSet()
    if deg == 1:
        return _finish(p, [-c[0] / c[1]])
    return _finish(p, _quadratic_raw(c[0], c[1], c[2]))


def _depressed_cubic_raw(pc: float, qc: float, size: float) -> list[float]:
    """Real roots of ``z**3 + pc*z + qc``; ``size`` is the root scale."""
    eps = ZERO_THRESHOLD
    if abs(pc) <= eps * size**2 and abs(qc) <= eps * size**3:
        return [0.0, 0.0, 0.0]
    disc = -4.0 * pc**3 - 27.0 * qc**2
    if abs(disc) <= _DISC_TOL * (4.0 * abs(pc) ** 3 + 27.0 * qc**2):
        disc = 0.0
    if disc >= 0.0 and pc < 0.0:
        m = 2.0 * math.sqrt(-pc / 3.0)
        arg = 3.0 * qc / (pc * m)
        theta = math.acos(min(1.0, max(-1.0, arg))) / 3.0
        return [m * math.cos(theta - 2.0 * math.pi * k / 3.0) for k in range(3)]
    # Cardano, one real root; pick the sign that avoids cancellation
    s = math.sqrt(max(qc * qc / 4.0 + pc**3 / 27.0, 0.0))
    u = np.cbrt(-qc / 2.0 - math.copysign(s, qc) if qc != 0.0 else s)
    u = float(u)
    v = -pc / (3.0 * u) if u != 0.0 else 0.0
    return [u + v]


def _root_size(monic: Sequence[float]) -> float:
    """Magnitude estimate of the roots of a monic polynomial (low first)."""
    n = len(monic) - 1
    vals = [abs(monic[k]) ** (1.0 / (n - k)) for k in range(n)]
    return max(vals + [1e-300])


def solve_cubic(p) -> RootSet:
    """Real roots of a cubic by Cardano's formula.

    The depressed discriminant ``-4p^3 - 27q^2`` selects the branch: when
    it is nonnegative the three real roots come from the trigonometric
    form, otherwise the single real root from the cube-root form.
    Lower effective degree falls through to :func:`solve_quadratic`.
    """
    p = _unit_scaled(_as_poly(p))
    if p.is_zero or p.degree < 3:
        return solve_quadratic(Polynomial(p.coeffs[:3], p.zero_threshold))
    if p.degree > 3:
        raise ValueError(f"solve_cubic needs degree <= 3, got {p.degree}")
    k, q = _zero_roots(p)
    if k:
        return _with_zero_roots(p, k, solve_quadratic(q))
    c = p.coeffs
    a3 = c[3]
    A, B, C = c[2] / a3, c[1] / a3, c[0] / a3
    pc = B - A * A / 3.0
    qc = 2.0 * A**3 / 27.0 - A * B / 3.0 + C
    size = _root_size([C, B, A, 1.0])
    zs = _depressed_cubic_raw(pc, qc, size)
    return _checked(p, _finish(p, [z - A / 3.0 for z in zs]))


def depressed_cubic_discriminant(p) -> float:
    """``-4p^3 - 27q^2`` of the depressed form of a cubic."""
    c = _as_poly(p).coeffs
    a3 = c[3]
    A, B, C = c[2] / a3, c[1] / a3, c[0] / a3
    pc = B - A * A / 3.0
    qc = 2.0 * A**3 / 27.0 - A * B / 3.0 + C
    return -4.0 * pc**3 - 27.0 * qc**2


def depress_quartic(p) -> tuple[float, float, float, float]:
    """Return ``(shift, p, q, r)`` with ``x = z + shift`` and the
    monic depressed quartic ``z**4 + p*z**2 + q*z + r``."""
    c = _as_poly(p).coeffs
    a4 = c[4]
    A, B, C, D = c[3] / a4, c[2] / a4, c[1] / a4, c[0] / a4
    pq = B - 3.0 * A * A / 8.0
    qq = C - A * B / 2.0 + A**3 / 8.0
    rq = D - A * C / 4.0 + A * A * B / 16.0 - 3.0 * A**4 / 256.0
    return -A / 4.0, pq, qq, rq


def solve_quartic(p) -> RootSet:
    """Real roots of a quartic by Descartes' factorisation.

    The monic depressed quartic ``z^4 + p z^2 + q z + r`` is split as
    ``(z^2 - u z + t)(z^2 + u z + v)`` where ``u^2`` is the largest
    positive root of the resolvent cubic
    ``U^3 + 2p U^2 + (p^2 - 4r) U - q^2``.
    """
    p = _unit_scaled(_as_poly(p))
    if p.is_zero or p.degree < 4:
        return solve_cubic(Polynomial(p.coeffs[:4], p.zero_threshold))
    if p.degree > 4:
        raise ValueError(f"solve_quartic needs degree <= 4, got {p.degree}")
    k, q = _zero_roots(p)
    if k:
        return _with_zero_roots(p, k, solve_cubic(q))
    c = p.coeffs
    a4 = c[4]
    size = _root_size([c[0] / a4, c[1] / a4, c[2] / a4, c[3] / a4, 1.0])
    shift, pq, qq, rq = depress_quartic(p)
    eps = ZERO_THRESHOLD
    if abs(pq) <= eps * size**2 and abs(qq) <= eps * size**3 and abs(rq) <= eps * size**4:
        return _checked(p, _finish(p, [shift] * 4))
    zs: list[float] = []
    if abs(qq) <= eps * size**3:
        # biquadratic: solve for w = z^2
        for w in _quadratic_raw(rq, pq, 1.0):
            if w > 0.0:
                s = math.sqrt(w)
                zs += [s, -s]
            elif w >= -_DISC_TOL * size**2:
                zs += [0.0, 0.0]
    else:
        resolvent = Polynomial([-qq * qq, pq * pq - 4.0 * rq, 2.0 * pq, 1.0])
        cands = [U for U in _resolvent_roots(resolvent) if U > 0.0]
        if not cands:
            return _checked(p, _finish(p, []))
        U = max(cands)
        u = math.sqrt(U)
        t = 0.5 * (pq + U + qq / u)
        v = 0.5 * (pq + U - qq / u)
        zs = _quadratic_raw(t, -u, 1.0) + _quadratic_raw(v, u, 1.0)
    return _checked(p, _finish(p, [z + shift for z in zs]))


def _resolvent_roots(res: Polynomial) -> list[float]:
    c = res.coeffs
    size = _root_size(list(c))
    A, B, C = c[2], c[1], c[0]
    pc = B - A * A / 3.0
    qc = 2.0 * A**3 / 27.0 - A * B / 3.0 + C
    return [_polish(np.asarray(c), z - A / 3.0) for z in _depressed_cubic_raw(pc, qc, size)]


def _companion_raw(p: Polynomial) -> list[float]:
    c = p.trimmed()
    # factor out exact zeros at the low end
    k = 0
    while k < len(c) - 1 and abs(c[k]) <= p.zero_threshold * p.scale:
        k += 1
    out = [0.0] * k
    c = c[k:]
    if len(c) > 1:
        z = npoly.polyroots(c)
        for r in z:
            if abs(r.imag) <= 1e-6 * max(1.0, abs(r)):
                out.append(float(r.real))
    return out


def companion_roots(p) -> RootSet:
    """Real roots from companion-matrix eigenvalues, any degree.

    Eigenvalues whose imaginary part is small relative to their modulus
    are treated as perturbed real (typically multiple) roots and are kept
    only if the polished point meets the residual bound.
    """
    p = _unit_scaled(_as_poly(p))
    if p.is_zero:
        return RootSet(all_reals=True)
    deg = p.degree
    rs = _finish(p, _companion_raw(p))
    c = np.asarray(p.coeffs)
    scale = p.scale
    kept = [
        (r, m)
        for r, m in rs.roots
        if abs(npoly.polyval(r, c)) <= 1e-9 * scale * max(1.0, abs(r)) ** deg
    ]
    worst = max((float(abs(npoly.polyval(r, c))) / scale for r, _ in kept), default=0.0)
    return RootSet(tuple(kept), worst)


def real_roots(p) -> RootSet:
    """All real roots of ``p``; closed forms for degree <= 4."""
    p = _as_poly(p)
    if p.is_zero:
        return RootSet(all_reals=True)
    deg = p.degree
    if deg <= 2:
        return solve_quadratic(Polynomial(p.coeffs[:3], p.zero_threshold))
    if deg == 3:
        return solve_cubic(Polynomial(p.coeffs[:4], p.zero_threshold))
    if deg == 4:
        return solve_quartic(Polynomial(p.coeffs[:5], p.zero_threshold))
    return companion_roots(p)


def restrict_positive(rs: RootSet, lower: float = 0.0, tol: float = 0.0) -> RootSet:
    """Roots strictly greater than ``lower + tol * max(1, |lower|)``."""
    cut = lower + tol * max(1.0, abs(lower))
    kept = tuple((r, m) for r, m in rs.roots if r > cut)
    return RootSet(kept, rs.residual_bound, rs.all_reals)
