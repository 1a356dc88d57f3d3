"""JSON documents: tensors, Z3 parameters, polynomials and verdicts.

Tensor documents look like ``{"order": 3, "entries": {"123": -1, ...}}``
with digit-string multi-indices; missing entries are zero.  Parameter
documents carry the nine keys of :class:`~copos3.z3.Z3Params`.
Polynomial documents are ``{"coefficients": [c0, c1, ...]}`` listed from
the constant term upwards.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Optional, Union

import numpy as np

from .polysolve import Polynomial
from .tensor import SymmetricTensor, normalize_key
from .verdict import BAND, ConditionRecord, Verdict
from .z3 import PARAM_NAMES, Z3Params

PathLike = Union[str, Path]


class DocumentError(ValueError):
    """A document that parses as JSON but violates its schema."""


def read_json(path: PathLike) -> Any:
    """Parse a UTF-8 JSON file; syntax errors carry the line and column."""
    text = Path(path).read_text(encoding="utf-8")
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from None


def _number(value: Any, where: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise DocumentError(f"{where}: expected a number, got {value!r}")
    v = float(value)
    if not math.isfinite(v):
        raise DocumentError(f"{where}: value must be finite, got {value!r}")
    return v


# -- tensors -----------------------------------------------------------------


def tensor_from_document(doc: Any) -> SymmetricTensor:
    if not isinstance(doc, dict) or "order" not in doc or "entries" not in doc:
        raise DocumentError('tensor document needs "order" and "entries"')
    order = doc["order"]
    if isinstance(order, bool) or not isinstance(order, int) or order < 2:
        raise DocumentError(f'"order" must be an integer >= 2, got {order!r}')
    entries = doc["entries"]
    if not isinstance(entries, dict):
        raise DocumentError('"entries" must map multi-index strings to numbers')
    seen: dict[tuple[int, ...], str] = {}
    vals: dict[tuple[int, ...], float] = {}
    for key, value in entries.items():
        try:
            ix = normalize_key(key, order)
        except ValueError as exc:
            raise DocumentError(f"entry {key!r}: {exc}") from None
        if ix in seen:
            raise DocumentError(f"entry {key!r}: duplicates {seen[ix]!r} after sorting the index")
        seen[ix] = key
        vals[ix] = _number(value, f"entry {key!r}")
    return SymmetricTensor.from_entries(order, vals)


def tensor_to_document(t: SymmetricTensor) -> dict:
    return {
        "order": t.order,
        "entries": {"".join(map(str, ix)): v for ix, v in t.entries.items()},
    }


def load_tensor(path: PathLike) -> SymmetricTensor:
    return tensor_from_document(read_json(path))


def save_tensor(t: SymmetricTensor, path: PathLike) -> None:
    Path(path).write_text(json.dumps(tensor_to_document(t), indent=2) + "\n", encoding="utf-8")


# -- Z3 parameters -------------------------------------------------------------


def params_from_document(doc: Any) -> Z3Params:
    if not isinstance(doc, dict):
        raise DocumentError("parameter document must be a JSON object")
    missing = [k for k in PARAM_NAMES if k not in doc]
    if missing:
        raise DocumentError(f"missing parameter(s): {', '.join(missing)}")
    unknown = [k for k in doc if k not in PARAM_NAMES]
    if unknown:
        raise DocumentError(f"unknown parameter(s): {', '.join(unknown)}")
    vals = {k: _number(doc[k], k) for k in PARAM_NAMES}
    try:
        return Z3Params(**vals)
    except ValueError as exc:
        raise DocumentError(str(exc)) from None


def load_params(path: PathLike) -> Z3Params:
    return params_from_document(read_json(path))


def save_params(p: Z3Params, path: PathLike) -> None:
    Path(path).write_text(json.dumps(p.to_dict(), indent=2) + "\n", encoding="utf-8")


# -- polynomials ---------------------------------------------------------------


def polynomial_from_document(doc: Any) -> Polynomial:
    if not isinstance(doc, dict) or not isinstance(doc.get("coefficients"), list):
        raise DocumentError('polynomial document needs a "coefficients" list')
    cs = [_number(c, f"coefficient {k}") for k, c in enumerate(doc["coefficients"])]
    if not cs:
        raise DocumentError("coefficient list is empty")
    return Polynomial(cs)


def load_polynomial(path: PathLike) -> Polynomial:
    return polynomial_from_document(read_json(path))


# -- verdicts ------------------------------------------------------------------


def plain(obj: Any) -> Any:
    """Convert to JSON-native values; non-finite floats become strings."""
    if isinstance(obj, dict):
        return {str(k): plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [plain(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [plain(v) for v in obj.tolist()]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        v = float(obj)
        return v if math.isfinite(v) else repr(v)
    return obj


@dataclass
class VerdictDocument:
    """Machine-readable verdict: what was decided, where it fails, and why."""

    kind: str  # "copositivity" or "bfb"
    status: str
    witness: Optional[list[float]]
    value: Optional[float]
    marginal: bool
    trace: list[dict]
    tolerances: dict[str, float]
    oracle: Optional[dict] = None
    extra: dict = field(default_factory=dict)

    @classmethod
    def from_verdict(cls, kind: str, v: Verdict, oracle: Optional[dict] = None, **extra) -> "VerdictDocument":
        return cls(
            kind=kind,
            status=v.status,
            witness=plain(v.witness) if v.witness is not None else None,
            value=plain(v.value),
            marginal=v.marginal,
            trace=[plain(r.to_dict()) for r in v.trace],
            tolerances={"band": v.tolerance},
            oracle=plain(oracle) if oracle is not None else None,
            extra=plain(extra),
        )

    def to_verdict(self) -> Verdict:
        return Verdict(
            self.status,
            tuple(self.witness) if self.witness is not None else None,
            self.value,
            [ConditionRecord.from_dict(r) for r in self.trace],
            self.tolerances.get("band", BAND),
        )

    def to_dict(self) -> dict:
        d = {
            "kind": self.kind,
            "status": self.status,
            "witness": self.witness,
            "value": self.value,
            "marginal": self.marginal,
            "trace": self.trace,
            "tolerances": self.tolerances,
        }
        if self.oracle is not None:
            d["oracle"] = self.oracle
        d.update(self.extra)
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "VerdictDocument":
        core = {"kind", "status", "witness", "value", "marginal", "trace", "tolerances", "oracle"}
        return cls(
            kind=d["kind"],
            status=d["status"],
            witness=d.get("witness"),
            value=d.get("value"),
            marginal=bool(d.get("marginal", False)),
            trace=list(d.get("trace", [])),
            tolerances=dict(d.get("tolerances", {})),
            oracle=d.get("oracle"),
            extra={k: v for k, v in d.items() if k not in core},
        )

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, allow_nan=False)

    @classmethod
    def from_json(cls, text: str) -> "VerdictDocument":
        return cls.from_dict(json.loads(text))
