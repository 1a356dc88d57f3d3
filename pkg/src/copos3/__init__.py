"""Copositivity of symmetric tensors in three variables.

Order-3 tensors are decided in closed form (:func:`is_copositive_order3`),
tensors of any order through a Sylvester resultant
(:func:`is_copositive_general`), and the Z3 scalar potential's
boundedness from below through a quartic positivity test
(:func:`is_bfb`).  :func:`simplex_min` is a brute-force cross-check.
"""

from .dim2 import EdgeTensor3, discriminant_invariant, liu_song_copositive, liu_song_expression
from .general import (
    edge_condition_m,
    interior_condition_m,
    is_copositive_general,
    sylvester_matrix,
    sylvester_resultant,
)
from .oracle import OracleResult, ray_min_quartic, simplex_min
from .order3 import (
    InteriorSystem,
    edge_conditions,
    interior_condition,
    is_copositive_order3,
    resultant_quartic,
    vertex_condition,
)
from .polysolve import (
    Polynomial,
    RootSet,
    companion_roots,
    depress_quartic,
    real_roots,
    solve_cubic,
    solve_quadratic,
    solve_quartic,
)
from .quartic_ray import Quartic, nonneg_on_ray, uw_invariants, uw_nonneg, uw_sufficient
from .tensor import SimplexPoint, SymmetricTensor, edge_restriction
from .verdict import ConditionRecord, Verdict
from .z3 import AlphaBeta, Z3Params, build_tensor, condition1, condition2, g_quartic, is_bfb, potential

__version__ = "0.1.0"

__all__ = [
    "AlphaBeta",
    "ConditionRecord",
    "EdgeTensor3",
    "InteriorSystem",
    "OracleResult",
    "Polynomial",
    "Quartic",
    "RootSet",
    "SimplexPoint",
    "SymmetricTensor",
    "Verdict",
    "Z3Params",
    "build_tensor",
    "companion_roots",
    "condition1",
    "condition2",
    "depress_quartic",
    "discriminant_invariant",
    "edge_condition_m",
    "edge_conditions",
    "edge_restriction",
    "g_quartic",
    "interior_condition",
    "interior_condition_m",
    "is_bfb",
    "is_copositive_general",
    "is_copositive_order3",
    "liu_song_copositive",
    "liu_song_expression",
    "nonneg_on_ray",
    "potential",
    "ray_min_quartic",
    "real_roots",
    "resultant_quartic",
    "simplex_min",
    "solve_cubic",
    "solve_quadratic",
    "solve_quartic",
    "sylvester_matrix",
    "sylvester_resultant",
    "uw_invariants",
    "uw_nonneg",
    "uw_sufficient",
    "vertex_condition",
]
