"""Copositivity of order-3, dimension-2 symmetric tensors (Liu-Song)."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .polysolve import Polynomial, solve_quadratic
from .verdict import BAND, Cmp, any_of, ge, gt


@dataclass(frozen=True)
class EdgeTensor3:
    """Entries of a binary cubic ``b111 x^3 + 3 b112 x^2 y + 3 b122 x y^2 + b222 y^3``."""

    b111: float
    b112: float
    b122: float
    b222: float

    def __post_init__(self):
        if not all(math.isfinite(v) for v in self.as_tuple()):
            raise ValueError("edge tensor entries must be finite")

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.b111, self.b112, self.b122, self.b222)

    @property
    def scale(self) -> float:
        return max(abs(v) for v in self.as_tuple()) or 1.0

    def form(self, x: float, y: float) -> float:
        return (
            self.b111 * x**3
            + 3 * self.b112 * x * x * y
            + 3 * self.b122 * x * y * y
            + self.b222 * y**3
        )

    def on_segment(self) -> Polynomial:
        """The cubic restricted to ``x = s, y = 1 - s``."""
        b1, b2, b3, b4 = self.as_tuple()
        # expand b1 s^3 + 3 b2 s^2 (1-s) + 3 b3 s (1-s)^2 + b4 (1-s)^3
        return Polynomial(
            [
                b4,
                3 * b3 - 3 * b4,
                3 * b2 - 6 * b3 + 3 * b4,
                b1 - 3 * b2 + 3 * b3 - b4,
            ]
        )


@dataclass(frozen=True)
class LiuSongResult:
    copositive: bool
    branch: Optional[str]
    expression: float  # the stated combination, see liu_song_expression
    marginal: bool
    invariant: float = math.nan  # the quantity the decision uses

    def __iter__(self):
        yield self.copositive
        yield self.branch


def discriminant_invariant(b: EdgeTensor3) -> float:
    """``-disc / 27`` where ``disc`` is the discriminant of ``f(x, 1)``.

    Nonnegative exactly when the cubic does not have three distinct real
    roots.  Symmetric under swapping the two variables.
    """
    b111, b112, b122, b222 = b.as_tuple()
    return (
        4 * b111 * b122**3
        + 4 * b112**3 * b222
        + b111**2 * b222**2
        - 6 * b111 * b112 * b122 * b222
        - 3 * b112**2 * b122**2
    )


def liu_song_expression(b: EdgeTensor3) -> float:
    """The Liu-Song combination with unit weight on ``b111 b122^3``.

    This is the criterion's expression in its commonly stated form.  It
    differs from :func:`discriminant_invariant` by ``3 b111 b122^3`` and is
    not symmetric under swapping the variables, so it can accept cubics
    that dip below zero; it is reported for reference only and
    :func:`liu_song_copositive` decides with the invariant.
    """
    b111, b112, b122, b222 = b.as_tuple()
    return (
        b111 * b122**3
        + 4 * b112**3 * b222
        + b111**2 * b222**2
        - 6 * b111 * b112 * b122 * b222
        - 3 * b112**2 * b122**2
    )


def liu_song_copositive(b: EdgeTensor3, band: float = BAND) -> LiuSongResult:
    """Necessary and sufficient copositivity test for a binary cubic.

    Copositive iff ``b111 >= 0``, ``b222 >= 0`` and either (a) both mixed
    entries are nonnegative, or (b) ``max(b111, b222) > 0``, the quartic
    invariant returned by :func:`discriminant_invariant` is nonnegative, and
    no end entry vanishes together with its adjacent mixed entry.
    ``branch`` is ``"a"`` or ``"b"`` for the disjunct that fired, else
    ``None``.
    """
    b111, b112, b122, b222 = b.as_tuple()
    s = b.scale
    inv = discriminant_invariant(b)
    ends = ge(b111, 0, band, s) & ge(b222, 0, band, s)
    case_a = ge(b112, 0, band, s) & ge(b122, 0, band, s)
    # a vanishing end entry together with its neighbour leaves a double root
    # at the vertex, where the discriminant test alone cannot see the sign change
    not_flat = (gt(b222, 0, band, s) | gt(abs(b122), 0, band, s)) & (
        gt(b111, 0, band, s) | gt(abs(b112), 0, band, s)
    )
    case_b = gt(max(b111, b222), 0, band, s) & ge(inv, 0, band, s**4) & not_flat
    verdict: Cmp = ends & any_of(case_a, case_b)
    branch = None
    if verdict.exact:
        branch = "a" if case_a.exact else "b"
    return LiuSongResult(verdict.exact, branch, liu_song_expression(b), verdict.marginal, inv)


def edge_minimum(b: EdgeTensor3) -> tuple[float, float]:
    """Minimiser ``s`` and minimum of the cubic over ``x = s, y = 1 - s``, ``s`` in [0, 1]."""
    f = b.on_segment()
    cands = [0.0, 1.0]
    rs = solve_quadratic(Polynomial(f.derivative().coeffs[:3]))
    cands += [r for r in rs.values if 0.0 < r < 1.0]
    best = min(cands, key=lambda s: f(s))
    return best, float(f(best))
