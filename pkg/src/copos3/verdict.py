"""Verdicts, per-condition records and banded comparisons.

Threshold comparisons use the exact floating point sign for the verdict
and a reporting band for fragility: a comparison whose two sides lie
within the band is *uncertain*, and a decision that depends on an
uncertain comparison is flagged marginal.  Uncertain comparisons are
combined with three-valued (Kleene) logic so that irrelevant near-ties
do not raise the flag.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Optional

BAND = 1e-9

COPOSITIVE = "copositive"
STRICTLY_COPOSITIVE = "strictly_copositive"
NOT_COPOSITIVE = "not_copositive"
BFB = "bfb"
NOT_BFB = "not_bfb"

POSITIVE_STATUSES = frozenset({COPOSITIVE, STRICTLY_COPOSITIVE, BFB})


class Cmp:
    """A comparison result: exact truth value plus a three-valued shadow.

    ``robust`` is ``None`` when the compared quantities are within the
    band, otherwise it equals ``exact``.
    """

    __slots__ = ("exact", "robust")

    def __init__(self, exact: bool, robust: Optional[bool]):
        self.exact = bool(exact)
        self.robust = robust

    def __bool__(self) -> bool:
        return self.exact

    def __and__(self, other: "Cmp") -> "Cmp":
        return Cmp(self.exact and other.exact, _k_and(self.robust, other.robust))

    def __or__(self, other: "Cmp") -> "Cmp":
        return Cmp(self.exact or other.exact, _k_or(self.robust, other.robust))

    @property
    def marginal(self) -> bool:
        return self.robust is None

    def __repr__(self) -> str:
        return f"Cmp({self.exact}, robust={self.robust})"


def _k_and(a, b):
    if a is False or b is False:
        return False
    if a is None or b is None:
        return None
    return True


def _k_or(a, b):
    if a is True or b is True:
        return True
    if a is None or b is None:
        return None
    return False


def ge(x: float, y: float, band: float = BAND, scale: float = 1.0) -> Cmp:
    """``x >= y`` with a band of ``band * max(1, scale)``."""
    d = x - y
    robust = None if abs(d) <= band * max(1.0, scale) else d > 0
    return Cmp(d >= 0, robust)


def gt(x: float, y: float, band: float = BAND, scale: float = 1.0) -> Cmp:
    d = x - y
    robust = None if abs(d) <= band * max(1.0, scale) else d > 0
    return Cmp(d > 0, robust)


def le(x: float, y: float, band: float = BAND, scale: float = 1.0) -> Cmp:
    return ge(y, x, band, scale)


def lt(x: float, y: float, band: float = BAND, scale: float = 1.0) -> Cmp:
    return gt(y, x, band, scale)


def all_of(*cs: Cmp) -> Cmp:
    out = Cmp(True, True)
    for c in cs:
        out = out & c
    return out


def any_of(*cs: Cmp) -> Cmp:
    out = Cmp(False, False)
    for c in cs:
        out = out | c
    return out


@dataclass
class ConditionRecord:
    """Outcome of one named condition of a decision procedure."""

    name: str
    passed: bool
    marginal: bool = False
    branch: Optional[str] = None
    witness: Optional[tuple[float, float, float]] = None
    value: Optional[float] = None
    detail: dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "passed": self.passed,
            "marginal": self.marginal,
            "branch": self.branch,
            "witness": list(self.witness) if self.witness is not None else None,
            "value": self.value,
            "detail": self.detail,
        }

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "ConditionRecord":
        w = d.get("witness")
        return cls(
            name=d["name"],
            passed=bool(d["passed"]),
            marginal=bool(d.get("marginal", False)),
            branch=d.get("branch"),
            witness=tuple(w) if w is not None else None,
            value=d.get("value"),
            detail=dict(d.get("detail") or {}),
        )


@dataclass
class Verdict:
    """Decision for one tensor or parameter point.

    A negative status always carries a ``witness`` on the unit simplex
    together with the form's ``value`` there.
    """

    status: str
    witness: Optional[tuple[float, float, float]] = None
    value: Optional[float] = None
    trace: list[ConditionRecord] = field(default_factory=list)
    tolerance: float = BAND

    @property
    def marginal(self) -> bool:
        return any(r.marginal for r in self.trace)

    @property
    def positive(self) -> bool:
        return self.status in POSITIVE_STATUSES

    @property
    def copositive(self) -> bool:
        return self.status in (COPOSITIVE, STRICTLY_COPOSITIVE)

    def record(self, name: str) -> Optional[ConditionRecord]:
        for r in self.trace:
            if r.name == name:
                return r
        return None


def normalize(x) -> tuple[float, float, float]:
    """Scale a nonnegative nonzero triple onto the unit simplex."""
    s = float(x[0]) + float(x[1]) + float(x[2])
    if not s > 0:
        raise ValueError(f"cannot normalise {tuple(x)} onto the simplex")
    return (float(x[0]) / s, float(x[1]) / s, float(x[2]) / s)


def run_checks(checks, strict: bool, tol: float = BAND) -> Verdict:
    """Conjunction of condition checks, stopping at the first failure.

    Each check is a zero-argument callable returning a
    :class:`ConditionRecord` whose ``passed`` field is the non-strict
    outcome and whose ``detail["strict_passed"]`` holds the strict one.
    With ``strict`` a tensor passing every check is labelled
    strictly copositive when every strict outcome holds as well.
    """
    trace: list[ConditionRecord] = []
    for check in checks:
        rec = check()
        trace.append(rec)
        if not rec.passed:
            return Verdict(NOT_COPOSITIVE, rec.witness, rec.value, trace, tol)
    if strict and all(r.detail.get("strict_passed", True) for r in trace):
        return Verdict(STRICTLY_COPOSITIVE, None, None, trace, tol)
    return Verdict(COPOSITIVE, None, None, trace, tol)


def value_record(name: str, points, values, tol: float, scale: float, branch=None, detail=None) -> ConditionRecord:
    """Record for a condition decided by the form's values at candidate points.

    Non-strict failure needs a value below ``-tol * scale``; the strict
    test fails at any value up to ``+tol * scale``.  Values inside the
    band mark the record marginal.
    """
    cut = tol * scale
    detail = dict(detail or {})
    pts = list(points)
    vals = [float(v) for v in values]
    marginal = any(abs(v) <= cut for v in vals)
    k = min(range(len(vals)), key=vals.__getitem__) if vals else None
    strict_ok = k is None or vals[k] > cut
    detail["strict_passed"] = strict_ok
    if not strict_ok:
        detail["strict_witness"] = list(pts[k])
        detail["strict_value"] = vals[k]
    if k is not None and vals[k] < -cut:
        return ConditionRecord(name, False, marginal, branch, tuple(pts[k]), vals[k], detail)
    return ConditionRecord(name, True, marginal, branch, None, None, detail)
