"""Symmetric tensors of dimension three stored by sorted multi-index."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping, Sequence, Union

import numpy as np
from numpy.polynomial import polynomial as npoly

from .polysolve import Polynomial

DIM = 3

IndexKey = Union[str, Sequence[int]]


@lru_cache(maxsize=None)
def sorted_indices(order: int) -> tuple[tuple[int, ...], ...]:
    """Independent multi-indices ``i1 <= ... <= im`` (1-based)."""
    return tuple(itertools.combinations_with_replacement(range(1, DIM + 1), order))


@lru_cache(maxsize=None)
def _layout(order: int) -> tuple[np.ndarray, np.ndarray]:
    """Exponent vectors and multinomial multiplicities per sorted index."""
    idx = sorted_indices(order)
    exps = np.zeros((len(idx), DIM), dtype=int)
    mult = np.zeros(len(idx))
    for k, ix in enumerate(idx):
        for i in ix:
            exps[k, i - 1] += 1
        n = exps[k]
        mult[k] = math.factorial(order) / (
            math.factorial(n[0]) * math.factorial(n[1]) * math.factorial(n[2])
        )
    exps.setflags(write=False)
    mult.setflags(write=False)
    return exps, mult


def normalize_key(key: IndexKey, order: int) -> tuple[int, ...]:
    if isinstance(key, str):
        if not key.isdigit():
            raise ValueError(f"multi-index {key!r} must be a digit string")
        ix = tuple(int(ch) for ch in key)
    else:
        ix = tuple(int(i) for i in key)
    if len(ix) != order:
        raise ValueError(f"multi-index {key!r} has length {len(ix)}, expected {order}")
    if any(i < 1 or i > DIM for i in ix):
        raise ValueError(f"multi-index {key!r} has a digit outside 1..{DIM}")
    return tuple(sorted(ix))


@dataclass(frozen=True, eq=False)
class SymmetricTensor:
    """Order-``m`` symmetric tensor in three variables.

    ``values[k]`` is the entry at ``sorted_indices(order)[k]``.  The form
    ``A x^m`` is evaluated as a sum over independent entries weighted by
    their multinomial multiplicity.
    """

    order: int
    values: np.ndarray

    def __post_init__(self):
        if self.order < 2:
            raise ValueError("order must be at least 2")
        v = np.array(self.values, dtype=float)
        if v.shape != (len(sorted_indices(self.order)),):
            raise ValueError(
                f"order {self.order} needs {len(sorted_indices(self.order))} values, got {v.shape}"
            )
        if not np.all(np.isfinite(v)):
            raise ValueError("tensor entries must be finite")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    @classmethod
    def from_entries(cls, order: int, entries: Mapping[IndexKey, float]) -> "SymmetricTensor":
        """Build from ``{multi-index: value}``; missing entries are zero.

        Keys may be digit strings (``"123"``) or integer sequences and are
        sorted before lookup.  Two keys that coincide after sorting raise
        ``ValueError``.
        """
        pos = {ix: k for k, ix in enumerate(sorted_indices(order))}
        vals = np.zeros(len(pos))
        seen: dict[tuple[int, ...], IndexKey] = {}
        for key, val in entries.items():
            ix = normalize_key(key, order)
            if ix in seen:
                raise ValueError(f"duplicate entry: {key!r} and {seen[ix]!r} both name {ix}")
            seen[ix] = key
            vals[pos[ix]] = float(val)
        return cls(order, vals)

    @classmethod
    def zeros(cls, order: int) -> "SymmetricTensor":
        return cls(order, np.zeros(len(sorted_indices(order))))

    @classmethod
    def ones(cls, order: int) -> "SymmetricTensor":
        return cls(order, np.ones(len(sorted_indices(order))))

    @classmethod
    def diagonal(cls, order: int, diag: Sequence[float] = (1.0, 1.0, 1.0)) -> "SymmetricTensor":
        ents = {(i + 1,) * order: diag[i] for i in range(DIM)}
        return cls.from_entries(order, ents)

    @classmethod
    def from_dense(cls, arr: np.ndarray, check: bool = True) -> "SymmetricTensor":
        arr = np.asarray(arr, dtype=float)
        order = arr.ndim
        if arr.shape != (DIM,) * order:
            raise ValueError(f"dense tensor must have shape {(DIM,) * order}")
        if check:
            for perm in itertools.permutations(range(order)):
                if not np.allclose(arr, arr.transpose(perm)):
                    raise ValueError("dense tensor is not symmetric")
        vals = [arr[tuple(i - 1 for i in ix)] for ix in sorted_indices(order)]
        return cls(order, np.array(vals))

    def to_dense(self) -> np.ndarray:
        out = np.zeros((DIM,) * self.order)
        for ix, v in zip(sorted_indices(self.order), self.values):
            for perm in set(itertools.permutations(ix)):
                out[tuple(i - 1 for i in perm)] = v
        return out

    @property
    def entries(self) -> dict[tuple[int, ...], float]:
        return dict(zip(sorted_indices(self.order), (float(v) for v in self.values)))

    def __getitem__(self, key: IndexKey) -> float:
        ix = normalize_key(key, self.order)
        return float(self.values[sorted_indices(self.order).index(ix)])

    @property
    def scale(self) -> float:
        """Largest entry magnitude, 1 for the zero tensor."""
        s = float(np.max(np.abs(self.values)))
        return s if s > 0 else 1.0

    def __add__(self, other: "SymmetricTensor") -> "SymmetricTensor":
        if other.order != self.order:
            raise ValueError("order mismatch")
        return SymmetricTensor(self.order, self.values + other.values)

    def __mul__(self, s: float) -> "SymmetricTensor":
        return SymmetricTensor(self.order, self.values * float(s))

    __rmul__ = __mul__

    def permuted(self, perm: Sequence[int]) -> "SymmetricTensor":
        """Tensor ``B`` with ``B (P x)^m == A x^m`` where ``(P x)[perm[i]] = x[i]``.

        ``perm`` is a 0-based permutation of ``(0, 1, 2)``.
        """
        ents = {}
        for ix, v in zip(sorted_indices(self.order), self.values):
            ents[tuple(sorted(perm[i - 1] + 1 for i in ix))] = v
        return SymmetricTensor.from_entries(self.order, ents)

    # -- the homogeneous form and its gradient ------------------------------

    def monomials(self) -> tuple[np.ndarray, np.ndarray]:
        """Exponent vectors and coefficients of ``A x^m`` as a polynomial."""
        exps, mult = _layout(self.order)
        return exps, mult * self.values

    def evaluate(self, x) -> float:
        exps, coef = self.monomials()
        x = np.asarray(x, dtype=float)
        return float(coef @ np.prod(x[None, :] ** exps, axis=1))

    def evaluate_many(self, pts: np.ndarray) -> np.ndarray:
        exps, coef = self.monomials()
        pts = np.asarray(pts, dtype=float)
        return np.prod(pts[:, None, :] ** exps[None, :, :], axis=2) @ coef

    def psi_monomials(self, i: int) -> tuple[np.ndarray, np.ndarray]:
        """Monomials of ``(A x^{m-1})_i`` for axis ``i`` in {1, 2, 3}."""
        if i not in (1, 2, 3):
            raise ValueError("axis must be 1, 2 or 3")
        exps, coef = self.monomials()
        n = exps[:, i - 1]
        keep = n > 0
        e = exps[keep].copy()
        e[:, i - 1] -= 1
        return e, coef[keep] * n[keep] / self.order

    def psi(self, i: int, x) -> float:
        e, c = self.psi_monomials(i)
        x = np.asarray(x, dtype=float)
        return float(c @ np.prod(x[None, :] ** e, axis=1))

    def gradient(self, x) -> np.ndarray:
        """``(A x^{m-1})_i`` for i = 1, 2, 3."""
        return np.array([self.psi(i, x) for i in (1, 2, 3)])

    def psi_plane(self, i: int) -> np.ndarray:
        """``psi_i(y1, y2, 1)`` as a 2-D coefficient array ``C[p, q]`` of
        ``y1**p * y2**q``."""
        e, c = self.psi_monomials(i)
        m = self.order - 1
        out = np.zeros((m + 1, m + 1))
        for (p, q, _), v in zip(e, c):
            out[p, q] += v
        return out


def edge_restriction(t: SymmetricTensor, axes: tuple[int, int]) -> Polynomial:
    """``A x^m`` on the simplex edge ``x_i = s, x_j = 1 - s`` as a polynomial in ``s``."""
    i, j = axes
    if i == j or {i, j} - {1, 2, 3}:
        raise ValueError("axes must be two distinct values in {1, 2, 3}")
    return _restrict(*t.monomials(), i, j)


def edge_psi(t: SymmetricTensor, axis: int, axes: tuple[int, int]) -> Polynomial:
    """``psi_axis`` restricted to the edge spanned by ``axes``."""
    i, j = axes
    return _restrict(*t.psi_monomials(axis), i, j)


def _restrict(exps: np.ndarray, coef: np.ndarray, i: int, j: int) -> Polynomial:
    k = ({1, 2, 3} - {i, j}).pop()
    out = np.zeros(1)
    one_minus = np.array([1.0, -1.0])
    for e, c in zip(exps, coef):
        if e[k - 1] != 0 or c == 0.0:
            continue
        term = npoly.polymul(
            np.eye(1, e[i - 1] + 1, e[i - 1]).ravel(), npoly.polypow(one_minus, e[j - 1])
        )
        out = npoly.polyadd(out, c * term)
    return Polynomial(out)


@dataclass(frozen=True)
class SimplexPoint:
    x1: float
    x2: float
    x3: float

    def __post_init__(self):
        xs = (self.x1, self.x2, self.x3)
        if min(xs) < 0:
            raise ValueError(f"simplex point has a negative coordinate: {xs}")
        if abs(sum(xs) - 1.0) > 1e-12:
            raise ValueError(f"simplex point coordinates sum to {sum(xs)}, not 1")

    @classmethod
    def from_ray(cls, x: Iterable[float]) -> "SimplexPoint":
        x = [float(v) for v in x]
        s = sum(x)
        if not s > 0:
            raise ValueError(f"cannot normalise {x} onto the simplex")
        return cls(x[0] / s, x[1] / s, x[2] / s)

    def as_array(self) -> np.ndarray:
        return np.array([self.x1, self.x2, self.x3])

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.x1, self.x2, self.x3)
