"""Exact arithmetic kernel: polynomials, rational elimination, linear feasibility."""

from .linalg import nullspace_combination, primitive_integer_vector, rref, solve_consistent
from .lp import find_feasible_point, fme_feasible_point, simplex_feasible_point
from .poly import Poly, poly_divides, poly_divmod, poly_inflate, poly_mul, poly_product

__all__ = [
    "Poly",
    "find_feasible_point",
    "fme_feasible_point",
    "nullspace_combination",
    "poly_divides",
    "poly_divmod",
    "poly_inflate",
    "poly_mul",
    "poly_product",
    "primitive_integer_vector",
    "rref",
    "simplex_feasible_point",
    "solve_consistent",
]
