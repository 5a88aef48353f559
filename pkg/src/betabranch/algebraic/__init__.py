"""Exact arithmetic over real algebraic numbers and the number fields they generate."""

from .field import FieldElement, NumberField, Ordering, compare, field_arith, field_of
from .poly import IntPolynomial
from .real import RealAlgebraic, Rational, compare_real, isolate_real_roots, refine, to_decimal

__all__ = [
    "FieldElement",
    "IntPolynomial",
    "NumberField",
    "Ordering",
    "Rational",
    "RealAlgebraic",
    "compare",
    "compare_real",
    "field_arith",
    "field_of",
    "isolate_real_roots",
    "refine",
    "to_decimal",
]
