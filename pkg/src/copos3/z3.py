"""Bounded-from-below test for the Z3 scalar dark-matter quartic potential.

With ``h1, h2, s >= 0`` the potential is

    f = lambda1 h1^4 + lambda2 h2^4 + (lambda3 + lambda4 rho^2) h1^2 h2^2
        + lambdaS s^4 + lambdaS1 h1^2 s^2 + lambdaS2 h2^2 s^2
        - |lambdaS12| rho h1 h2 s^2
      = lambdaS s^4 + alpha(h1, h2) s^2 + beta(h1, h2).

It is bounded from below iff six explicit inequalities hold
(:func:`condition1`) and ``g(t) = 4 lambdaS beta(1, t) - alpha(1, t)^2``
is nonnegative wherever ``alpha(1, t) < 0`` on ``t >= 0``
(:func:`condition2`).  The second test maps each piece of that set onto
the half-line and decides the resulting quartic with
:func:`~copos3.quartic_ray.nonneg_on_ray`.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Optional

from .oracle import ray_min_quartic
from .polysolve import Polynomial, solve_quadratic
from .quartic_ray import Quartic, nonneg_on_ray
from .tensor import SymmetricTensor
from .verdict import BAND, BFB, NOT_BFB, Cmp, ConditionRecord, Verdict, all_of, ge, normalize

PARAM_NAMES = (
    "lambda1",
    "lambda2",
    "lambda3",
    "lambda4",
    "lambdaS",
    "lambdaS1",
    "lambdaS2",
    "lambdaS12",
    "rho",
)


@dataclass(frozen=True)
class Z3Params:
    lambda1: float
    lambda2: float
    lambda3: float
    lambda4: float
    lambdaS: float
    lambdaS1: float
    lambdaS2: float
    lambdaS12: float
    rho: float

    def __post_init__(self):
        for name in PARAM_NAMES:
            v = getattr(self, name)
            if not isinstance(v, (int, float)) or not math.isfinite(v):
                raise ValueError(f"{name} must be a finite number, got {v!r}")
            object.__setattr__(self, name, float(v))
        if not 0.0 <= self.rho <= 1.0:
            raise ValueError(f"rho must lie in [0, 1], got {self.rho}")

    @classmethod
    def from_dict(cls, d: dict) -> "Z3Params":
        missing = [k for k in PARAM_NAMES if k not in d]
        extra = [k for k in d if k not in PARAM_NAMES]
        if missing or extra:
            raise ValueError(f"parameter keys: missing {missing}, unknown {extra}")
        return cls(**{k: d[k] for k in PARAM_NAMES})

    def to_dict(self) -> dict:
        return asdict(self)

    def replace(self, **kw) -> "Z3Params":
        d = self.to_dict()
        d.update(kw)
        return Z3Params(**d)

    @property
    def cross(self) -> float:
        """``|lambdaS12| * rho``, the only way the cross coupling enters."""
        return abs(self.lambdaS12) * self.rho

    @property
    def mixed(self) -> float:
        """``lambda3 + lambda4 * rho**2``."""
        return self.lambda3 + self.lambda4 * self.rho**2

    @property
    def scale(self) -> float:
        return max(
            abs(self.lambda1),
            abs(self.lambda2),
            abs(self.mixed),
            abs(self.lambdaS),
            abs(self.lambdaS1),
            abs(self.lambdaS2),
            self.cross,
            1e-300,
        )


def build_tensor(p: Z3Params) -> SymmetricTensor:
    """Order-4 tensor whose form at ``(h1, h2, s)`` is the potential."""
    return SymmetricTensor.from_entries(
        4,
        {
            "1111": p.lambda1,
            "2222": p.lambda2,
            "3333": p.lambdaS,
            "1122": p.mixed / 6,
            "1133": p.lambdaS1 / 6,
            "2233": p.lambdaS2 / 6,
            "1233": -p.cross / 12,
        },
    )


def potential(p: Z3Params, h1: float, h2: float, s: float) -> float:
    s2 = s * s
    return (
        p.lambda1 * h1**4
        + p.lambda2 * h2**4
        + p.mixed * h1 * h1 * h2 * h2
        + p.lambdaS * s2 * s2
        + p.lambdaS1 * h1 * h1 * s2
        + p.lambdaS2 * h2 * h2 * s2
        - p.cross * h1 * h2 * s2
    )


@dataclass(frozen=True)
class AlphaBeta:
    """``alpha(x1, x2)`` and ``beta(x1, x2)`` by coefficient triples.

    ``alpha = a[0] x1^2 + a[1] x1 x2 + a[2] x2^2`` and
    ``beta = b[0] x1^4 + b[1] x1^2 x2^2 + b[2] x2^4``.
    """

    alpha: tuple[float, float, float]
    beta: tuple[float, float, float]

    @classmethod
    def from_params(cls, p: Z3Params) -> "AlphaBeta":
        return cls((p.lambdaS1, -p.cross, p.lambdaS2), (p.lambda1, p.mixed, p.lambda2))

    def alpha_at(self, x1: float, x2: float) -> float:
        a = self.alpha
        return a[0] * x1 * x1 + a[1] * x1 * x2 + a[2] * x2 * x2

    def beta_at(self, x1: float, x2: float) -> float:
        b = self.beta
        return b[0] * x1**4 + b[1] * x1 * x1 * x2 * x2 + b[2] * x2**4

    def alpha_ray(self) -> Polynomial:
        """``alpha(1, t)`` as a polynomial in ``t``."""
        return Polynomial(self.alpha)


def g_quartic(p: Z3Params) -> Quartic:
    """``g(t) = 4 lambdaS beta(1, t) - alpha(1, t)^2``."""
    k, S, S1, S2 = p.cross, p.lambdaS, p.lambdaS1, p.lambdaS2
    return Quartic(
        4 * S * p.lambda2 - S2 * S2,
        2 * k * S2,
        4 * S * p.mixed - 2 * S1 * S2 - k * k,
        2 * k * S1,
        4 * S * p.lambda1 - S1 * S1,
    )


def _sigma_negative(a2: float, a1: float, a0: float) -> float:
    """A ``sigma >= 0`` where ``a2 sigma^2 + a1 sigma + a0 < 0``, if one exists."""
    if a0 < 0:
        return 0.0
    if a2 > 0:
        return max(-a1 / (2 * a2), 0.0)
    if a2 < 0:
        return max(-a1 / (2 * a2), 0.0) + (abs(a1) + abs(a0)) / abs(a2) + 1.0
    if a1 < 0:
        return 2 * a0 / abs(a1) + 1.0
    return 0.0


def condition1(p: Z3Params, band: float = BAND) -> ConditionRecord:
    """The six inequalities on the boundary of the orthant.

    Each is reported under ``detail["checks"]``.  A failing record carries
    a witness on the face where the inequality fails.
    """
    sc = p.scale
    l1, l2, S = p.lambda1, p.lambda2, p.lambdaS
    checks: list[tuple[str, Cmp, Optional[tuple[float, float, float]]]] = [
        ("lambdaS", ge(S, 0, band, sc), (0.0, 0.0, 1.0)),
        ("lambda1", ge(l1, 0, band, sc), (1.0, 0.0, 0.0)),
        ("lambda2", ge(l2, 0, band, sc), (0.0, 1.0, 0.0)),
    ]
    if l1 >= 0 and l2 >= 0 and S >= 0:
        sig = _sigma_negative(l2, p.mixed, l1)
        t = math.sqrt(sig)
        checks.append(("beta", ge(p.mixed, -2 * math.sqrt(l1 * l2), band, sc), (1.0, t, 0.0)))
        sig = _sigma_negative(S, p.lambdaS1, l1)
        checks.append(("lambdaS1", ge(p.lambdaS1, -2 * math.sqrt(S * l1), band, sc), (1.0, 0.0, math.sqrt(sig))))
        sig = _sigma_negative(S, p.lambdaS2, l2)
        checks.append(("lambdaS2", ge(p.lambdaS2, -2 * math.sqrt(S * l2), band, sc), (0.0, 1.0, math.sqrt(sig))))
    total = all_of(*(c for _, c, _ in checks))
    detail = {"checks": {n: {"passed": c.exact, "marginal": c.marginal} for n, c, _ in checks}}
    if total.exact:
        return ConditionRecord("condition1", True, total.robust is None, None, None, None, detail)
    name, _, w = next((n, c, w) for n, c, w in checks if not c.exact)
    wn = normalize(w)
    return ConditionRecord("condition1", False, total.robust is None, name, wn, potential(p, *wn), detail)


# -- condition (2) -------------------------------------------------------------


@dataclass(frozen=True)
class Piece:
    """One maximal interval of ``{t >= 0 : alpha(1, t) < 0}`` and its ray quartic.

    ``hi`` is ``inf`` for an unbounded piece.  ``quartic`` is
    ``g(u + lo)`` for unbounded pieces and, for bounded ones,
    ``u^4 g(lo + 1/u)`` shifted by ``1 / (hi - lo)``, so that ``u >= 0``
    covers the piece exactly.
    """

    lo: float
    hi: float
    quartic: Quartic

    def to_t(self, u: float) -> float:
        if math.isinf(self.hi):
            return self.lo + u
        return self.lo + 1.0 / (u + 1.0 / (self.hi - self.lo))

    def to_dict(self) -> dict:
        return {"lo": self.lo, "hi": self.hi, "quartic": list(self.quartic.coeffs_high())}


def negative_alpha_pieces(p: Z3Params) -> list[tuple[float, float]]:
    """Maximal intervals of ``t >= 0`` on which ``alpha(1, t) < 0``."""
    S1, k, S2 = p.lambdaS1, p.cross, p.lambdaS2
    a = Polynomial([S1, -k, S2])
    if a.is_zero:
        return []
    roots = sorted(r for r in solve_quadratic(a).expanded())
    # breakpoints where alpha may change sign, then test midpoints
    cuts = [0.0] + [r for r in roots if r > 0] + [math.inf]
    out: list[tuple[float, float]] = []
    for lo, hi in zip(cuts[:-1], cuts[1:]):
        if hi <= lo:
            continue
        mid = lo + 1.0 if math.isinf(hi) else 0.5 * (lo + hi)
        if a(mid) < 0:
            if out and out[-1][1] == lo:
                out[-1] = (out[-1][0], hi)
            else:
                out.append((lo, hi))
    return out


def case_tag(p: Z3Params, pieces: list[tuple[float, float]]) -> str:
    """Which sign pattern of ``alpha`` on ``t >= 0`` applies."""
    S1, k, S2 = p.lambdaS1, p.cross, p.lambdaS2
    if not pieces:
        return "a"
    if S1 <= 0 and S2 <= 0:
        return "b"
    if S2 == 0:
        return "c"
    if S2 > 0:
        return "d"
    # S2 < 0 and S1 > 0: alpha has exactly one positive root
    return "f"


def transformed_pieces(p: Z3Params, pieces: list[tuple[float, float]]) -> list[Piece]:
    g = g_quartic(p)
    out = []
    for lo, hi in pieces:
        if math.isinf(hi):
            q = g.shifted(lo) if lo != 0.0 else g
        else:
            q = g.shifted(lo).reversed().shifted(1.0 / (hi - lo))
        out.append(Piece(lo, hi, q))
    return out


def condition2(p: Z3Params, band: float = BAND) -> ConditionRecord:
    """``g >= 0`` wherever ``alpha(1, t) < 0`` for ``t >= 0``."""
    spans = negative_alpha_pieces(p)
    tag = case_tag(p, spans)
    pieces = transformed_pieces(p, spans)
    detail: dict = {"case": tag, "pieces": [pc.to_dict() for pc in pieces]}
    marginal = False
    for pc in pieces:
        dec = nonneg_on_ray(pc.quartic, band)
        marginal = marginal or dec.marginal
        if not dec.nonneg:
            w = _condition2_witness(p, pc)
            detail["failing_piece"] = pc.to_dict()
            return ConditionRecord("condition2", False, marginal, tag, w, potential(p, *w), detail)
    return ConditionRecord("condition2", True, marginal, tag, None, None, detail)


def _condition2_witness(p: Z3Params, pc: Piece) -> tuple[float, float, float]:
    """A point ``(h1, h2, s)`` on the simplex inside the failing piece."""
    ab = AlphaBeta.from_params(p)
    g = g_quartic(p)
    rm = ray_min_quartic(pc.quartic)
    if rm.unbounded:
        u = 1.0
        while pc.quartic(u) >= 0 and u < 1e12:
            u *= 2.0
    else:
        u = rm.argmin
    t = pc.to_t(u)
    if not ab.alpha_at(1.0, t) < 0 or g(t) >= 0:
        # fall back on the smallest sampled value of g inside the piece
        hi = pc.hi if math.isfinite(pc.hi) else pc.lo + 1e6
        grid = [pc.lo + (hi - pc.lo) * (j + 0.5) / 4096 for j in range(4096)]
        t = min(grid, key=g)
    a, b = ab.alpha_at(1.0, t), ab.beta_at(1.0, t)
    if p.lambdaS > 0:
        sig = max(-a / (2 * p.lambdaS), 0.0)
    else:
        sig = 2 * max(b, 0.0) / max(abs(a), 1e-300) + 1.0
    return normalize((1.0, t, math.sqrt(sig)))


def is_bfb(p: Z3Params, band: float = BAND) -> Verdict:
    """Bounded-from-below verdict with a witness ``(h1, h2, s)`` on failure.

    A failing condition whose witness does not make the potential
    negative (a tie within rounding) is reported as a marginal pass.
    """
    trace = []
    for check in (condition1, condition2):
        rec = check(p, band)
        if not rec.passed and not (rec.value is not None and rec.value < 0):
            rec.passed, rec.marginal = True, True
            rec.detail["witness_not_negative"] = rec.value
        trace.append(rec)
        if not rec.passed:
            return Verdict(NOT_BFB, rec.witness, rec.value, trace, band)
    return Verdict(BFB, None, None, trace, band)
