"""Exact arithmetic kernel: sparse polynomials over Q and the algorithms on them."""
from .gcd import coefficients_in, content_primitive, from_upoly, gcd_many, multivariate_gcd, to_upoly
from .interp import InterpolationError, interpolate_poly, reconstruct_rational
from .linalg import PolyMatrix, RankAnomalyError, det, kernel_fraction_free, normalize_vector, rref_rational
from .poly import (MultiPoly, NotDivisibleError, VarSet, VarSetError, compose, definite_integral_unit,
                   poly_derivative, poly_mul)
from .roots import NOT_PERFECT_POWER, nth_root, rational_roots, squarefree_decomposition
from .serialize import dumps, poly_dumps, poly_from_obj, poly_loads, poly_to_obj, to_text

__all__ = [
    "MultiPoly", "VarSet", "VarSetError", "NotDivisibleError", "PolyMatrix", "RankAnomalyError",
    "poly_mul", "poly_derivative", "definite_integral_unit", "compose", "content_primitive",
    "coefficients_in", "multivariate_gcd", "gcd_many", "to_upoly", "from_upoly", "nth_root",
    "NOT_PERFECT_POWER", "rational_roots", "squarefree_decomposition", "kernel_fraction_free", "normalize_vector", "det",
    "rref_rational", "interpolate_poly", "reconstruct_rational", "InterpolationError",
    "dumps", "poly_dumps", "poly_loads", "poly_to_obj", "poly_from_obj", "to_text",
]
