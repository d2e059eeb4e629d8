"""Exact arithmetic: rationals, simple number fields, polynomials, rational functions."""
from fractions import Fraction as Rational

from .factor import irreducible_factor, is_irreducible, rational_roots, squarefree_factor
from .numfield import NFElement, NumberField, field_from_text, nf_invert
from .parse import ParseError, evaluate, parse_poly, parse_ratfunc
from .poly import ZERO_DEGREE, RatFunc, UniPoly, poly_arith

__all__ = [
    "Rational", "NumberField", "NFElement", "UniPoly", "RatFunc", "ZERO_DEGREE",
    "poly_arith", "squarefree_factor", "irreducible_factor", "is_irreducible",
    "rational_roots", "nf_invert", "field_from_text", "ParseError", "evaluate",
    "parse_poly", "parse_ratfunc",
]
