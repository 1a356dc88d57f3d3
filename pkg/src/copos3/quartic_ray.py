"""Nonnegativity of a quartic on the positive half-line.

For ``g(t) = a t^4 + b t^3 + c t^2 + d t + e`` with ``a > 0`` and
``e > 0`` the Ulrich-Watson criterion decides ``g >= 0`` on ``t > 0``
from the scale-free quantities ``alpha, beta, gamma`` and three
discriminant-like combinations.  Quartics outside those hypotheses (a
vanishing end coefficient, a negative leading term) are handled by an
explicit stationary-point analysis.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .polysolve import ZERO_THRESHOLD, Polynomial, real_roots
from .verdict import BAND, Cmp, all_of, any_of, ge, gt, le, lt


class DegenerateQuarticError(ValueError):
    """Raised when the Ulrich-Watson hypotheses ``a > 0, e > 0`` fail.

    Use :func:`nonneg_on_ray`, which routes such quartics through the
    stationary-point analysis.
    """


@dataclass(frozen=True)
class Quartic:
    a: float
    b: float
    c: float
    d: float
    e: float

    def __post_init__(self):
        if not all(math.isfinite(v) for v in self.coeffs_high()):
            raise ValueError(f"quartic coefficients must be finite: {self.coeffs_high()}")

    @classmethod
    def from_low(cls, coeffs) -> "Quartic":
        c = list(coeffs) + [0.0] * (5 - len(coeffs))
        if len(c) > 5:
            raise ValueError("more than five coefficients")
        return cls(float(c[4]), float(c[3]), float(c[2]), float(c[1]), float(c[0]))

    def coeffs_high(self) -> tuple[float, ...]:
        return (self.a, self.b, self.c, self.d, self.e)

    def coeffs_low(self) -> tuple[float, ...]:
        return (self.e, self.d, self.c, self.b, self.a)

    def polynomial(self) -> Polynomial:
        return Polynomial(self.coeffs_low())

    @property
    def scale(self) -> float:
        return max(abs(v) for v in self.coeffs_high())

    def __call__(self, t):
        return (((self.a * t + self.b) * t + self.c) * t + self.d) * t + self.e

    def shifted(self, h: float) -> "Quartic":
        """``u -> g(u + h)``."""
        a, b, c, d, e = self.coeffs_high()
        return Quartic(
            a,
            4 * a * h + b,
            6 * a * h**2 + 3 * b * h + c,
            4 * a * h**3 + 3 * b * h**2 + 2 * c * h + d,
            self(h),
        )

    def reversed(self) -> "Quartic":
        """``u -> u^4 g(1/u)``."""
        return Quartic(self.e, self.d, self.c, self.b, self.a)

    def rescaled(self, k: float) -> "Quartic":
        """``t -> g(k t)``."""
        return Quartic(self.a * k**4, self.b * k**3, self.c * k**2, self.d * k, self.e)


@dataclass(frozen=True)
class UWInvariants:
    alpha: float
    beta: float
    gamma: float
    delta: float
    mu: float
    eta: Optional[float]  # None when beta <= 2


def _endpoints_positive(q: Quartic) -> bool:
    cut = ZERO_THRESHOLD * q.scale
    return q.a > cut and q.e > cut


def uw_invariants(q: Quartic) -> UWInvariants:
    if not _endpoints_positive(q):
        raise DegenerateQuarticError(
            f"Ulrich-Watson needs a > 0 and e > 0, got a={q.a!r}, e={q.e!r}; use nonneg_on_ray"
        )
    la, le_ = math.log(q.a), math.log(q.e)
    alpha = q.b * math.exp(-0.75 * la - 0.25 * le_)
    beta = q.c * math.exp(-0.5 * la - 0.5 * le_)
    gamma = q.d * math.exp(-0.25 * la - 0.75 * le_)
    delta = 4 * (beta**2 - 3 * alpha * gamma + 12) ** 3 - (
        72 * beta + 9 * alpha * beta * gamma - 2 * beta**3 - 27 * alpha**2 - 27 * gamma**2
    ) ** 2
    mu = (alpha - gamma) ** 2 - 16 * (alpha + beta + gamma + 2)
    eta = None
    if beta > 2:
        r = math.sqrt(beta - 2)
        eta = (alpha - gamma) ** 2 - 4 * (beta + 2) / r * (alpha + gamma + 4 * r)
    return UWInvariants(alpha, beta, gamma, delta, mu, eta)


@dataclass(frozen=True)
class RayDecision:
    nonneg: bool
    marginal: bool
    method: str  # "uw" or "roots"
    branch: Optional[str] = None
    minimum: Optional[float] = None

    def __bool__(self) -> bool:
        return self.nonneg


def _delta_scale(v: UWInvariants) -> float:
    a, b, c = v.alpha, v.beta, v.gamma
    return 4 * abs(b**2 - 3 * a * c + 12) ** 3 + (
        72 * abs(b) + 9 * abs(a * b * c) + 2 * abs(b) ** 3 + 27 * a * a + 27 * c * c
    ) ** 2


def uw_decide(q: Quartic, band: float = BAND) -> RayDecision:
    """Ulrich-Watson part (i), returning the fired branch and marginality."""
    v = uw_invariants(q)
    al, be, ga = v.alpha, v.beta, v.gamma
    s = max(1.0, abs(al), abs(be), abs(ga))
    ds = _delta_scale(v)
    d_le = le(v.delta, 0, band, ds)
    d_ge = ge(v.delta, 0, band, ds)
    sum_pos = gt(al + ga, 0, band, s)
    mu_le = le(v.mu, 0, band, s * s)

    br1 = lt(be, -2, band, s) & d_le & sum_pos
    mid = ge(be, -2, band, s) & le(be, 6, band, s)
    br2 = mid & any_of(d_le & sum_pos, d_ge & mu_le)
    high = gt(be, 6, band, s)
    # eta is defined whenever beta > 2; outside that region the branch is dead
    if v.eta is not None:
        eta_le = le(v.eta, 0, band, s * s)
    else:
        eta_le = Cmp(False, False)
    br3 = high & any_of(d_le & sum_pos, gt(al, 0, band, s) & gt(ga, 0, band, s), d_ge & eta_le)
    res = any_of(br1, br2, br3)
    branch = None
    if res.exact:
        branch = "1" if br1.exact else ("2" if br2.exact else "3")
    return RayDecision(res.exact, res.marginal, "uw", branch)


def uw_nonneg(q: Quartic) -> bool:
    """True iff ``g(t) >= 0`` for all ``t > 0`` (requires ``a > 0, e > 0``)."""
    return uw_decide(q).nonneg


def uw_sufficient(q: Quartic) -> bool:
    """Ulrich-Watson part (ii): a cheaper sufficient condition."""
    v = uw_invariants(q)
    if v.beta <= 6:
        lim = -(v.beta + 2) / 2
    else:
        lim = -2 * math.sqrt(v.beta - 2)
    return v.alpha > lim and v.gamma > lim


def min_on_ray(p: Polynomial, lower: float = 0.0) -> tuple[float, float]:
    """Minimum and minimiser of ``p`` on ``[lower, inf)``.

    Returns ``(-inf, inf)`` when the effective leading coefficient is
    negative.
    """
    deg = p.degree
    lead = p.coeffs[deg]
    if deg > 0 and lead < 0:
        return -math.inf, math.inf
    cands = [lower]
    if deg >= 2:
        rs = real_roots(Polynomial(p.derivative().coeffs[:deg]))
        cands += [r for r in rs.values if r > lower]
    best = min(cands, key=lambda t: p(t))
    return float(p(best)), float(best)


def nonneg_on_ray(q: Quartic, tol: float = BAND) -> RayDecision:
    """Decide ``g(t) >= 0`` on ``t > 0`` for any quartic.

    With ``a > 0`` and ``e > 0`` this is the Ulrich-Watson criterion;
    otherwise the minimum over the closed half-line is located from the
    stationary points and compared against ``-tol * scale``.
    """
    if _endpoints_positive(q):
        return uw_decide(q, tol)
    scale = q.scale
    if scale == 0.0:
        return RayDecision(True, True, "roots", None, 0.0)
    p = q.polynomial()
    # sub-threshold coefficients count as zero for the degree
    mval, _ = min_on_ray(p)
    cut = tol * scale
    return RayDecision(mval >= -cut, abs(mval) <= cut, "roots", None, mval)
