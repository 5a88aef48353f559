"""The distinguished bases bounding the ranges on which operations are valid."""

from __future__ import annotations

from functools import lru_cache

from .algebraic import IntPolynomial, RealAlgebraic, isolate_real_roots


def root_in_unit_gap(poly: IntPolynomial) -> RealAlgebraic:
    """The unique root of ``poly`` in ``(1, 2)``."""
    roots = isolate_real_roots(poly, 1, 2)
    if len(roots) != 1:
        raise ValueError(f"{poly} has {len(roots)} roots in (1, 2), expected exactly one")
    return roots[0]


@lru_cache(maxsize=None)
def golden() -> RealAlgebraic:
    return root_in_unit_gap(IntPolynomial.from_descending([1, -1, -1]))


@lru_cache(maxsize=None)
def q_2() -> RealAlgebraic:
    return root_in_unit_gap(IntPolynomial.from_descending([1, 0, -2, -1, -1]))


@lru_cache(maxsize=None)
def q_f() -> RealAlgebraic:
    return root_in_unit_gap(IntPolynomial.from_descending([1, -2, 1, -1]))


@lru_cache(maxsize=None)
def q_aleph0() -> RealAlgebraic:
    return root_in_unit_gap(IntPolynomial.from_descending([1, 0, -1, -1, -2, -1, -1]))
