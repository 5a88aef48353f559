from fractions import Fraction

import mpmath
import pytest
import sympy
from hypothesis import assume, given, strategies as st

from betabranch import special
from betabranch.algebraic import (
    IntPolynomial,
    Ordering,
    RealAlgebraic,
    compare,
    compare_real,
    field_arith,
    field_of,
    isolate_real_roots,
    refine,
    to_decimal,
)
from betabranch.algebraic.poly import count_roots_closed, pgcd, pxgcd, pmul, padd, to_q, pdivmod
from betabranch.errors import InverseOfZero

X = sympy.Symbol("x")
mpmath.mp.dps = 60


def desc(*c):
    return IntPolynomial.from_descending(list(c))


def mp_value(a: RealAlgebraic):
    """High-precision value from a tight exact bracket (independent of sign logic)."""
    r = refine(a, Fraction(1, 10**70))
    return mpmath.mpf(r.lo.numerator) / r.lo.denominator


int_polys = st.lists(st.integers(-6, 6), min_size=2, max_size=7).filter(lambda c: any(c[1:]))


# -- polynomials ---------------------------------------------------------------

def test_int_polynomial_normal_forms():
    p = IntPolynomial((-2, -2, 4))
    assert p.primitive().coeffs == (-1, -1, 2)
    assert IntPolynomial((0, 0)).coeffs == ()
    assert desc(1, 0, -1).degree == 2
    assert str(desc(1, 0, -1, -1, -2, -1, -1)) == "x^6-x^4-x^3-2x^2-x-1"
    sq = IntPolynomial(tuple(int(c) for c in reversed(sympy.Poly((X - 1) ** 2 * (X + 2), X).all_coeffs())))
    assert not sq.is_squarefree()
    assert sq.squarefree().is_squarefree()


@given(int_polys, int_polys)
def test_gcd_and_xgcd_match_sympy(a, b):
    pa, pb = to_q(a), to_q(b)
    g = pgcd(pa, pb)
    want = sympy.Poly(sympy.gcd(sympy.Poly(list(reversed(a)), X), sympy.Poly(list(reversed(b)), X)), X)
    want_monic = [Fraction(str(c)) for c in reversed(want.monic().all_coeffs())]
    assert list(g) == want_monic
    g2, s, t = pxgcd(pa, pb)
    assert padd(pmul(s, pa), pmul(t, pb)) == g2


@given(int_polys, int_polys.filter(lambda c: any(c)))
def test_divmod_reconstructs(a, b):
    q, r = pdivmod(to_q(a), to_q(b))
    assert padd(pmul(q, to_q(b)), r) == to_q(a)
    assert len(r) < len(to_q(b))


# -- root isolation ------------------------------------------------------------

def test_isolation_examples():
    (g,) = isolate_real_roots(desc(1, -1, -1), 0, 3)
    assert to_decimal(refine(g, Fraction(1, 10**12)), 10) == "1.6180339887"
    (qa,) = isolate_real_roots(desc(1, 0, -1, -1, -2, -1, -1), 1, 2)
    assert to_decimal(qa, 5) == "1.64541"
    (qf,) = isolate_real_roots(desc(1, -2, 1, -1), 1, 2)
    assert to_decimal(qf, 5) == "1.75488"


def test_refine_examples():
    g = refine(special.golden(), Fraction(1, 10**8))
    assert g.width <= Fraction(1, 10**8)
    # the printed digits are a truncation of the bracketed value
    assert Fraction("1.61803398") < g.lo <= Fraction("1.6180339887") <= g.hi < Fraction("1.61803400")
    (q2,) = isolate_real_roots(desc(1, 0, -2, -1, -1), 1, 2)
    r = refine(q2, Fraction(1, 10**5))
    assert r.width <= Fraction(1, 10**5) and abs(r.lo - Fraction("1.71064")) < Fraction(1, 10**5)
    (r3,) = isolate_real_roots(desc(1, 0, -2, -1, 0, -1), 1, 2)
    r = refine(r3, Fraction(1, 10**5))
    assert abs(r.lo - Fraction("1.67602")) < Fraction(1, 10**5)
    with pytest.raises(ValueError):
        refine(q2, 0)


def test_isolation_with_multiple_and_rational_roots():
    p = IntPolynomial(tuple(int(c) for c in reversed(
        sympy.Poly((X - 1) ** 2 * (2 * X - 3) * (X**2 - 2), X).all_coeffs())))
    roots = isolate_real_roots(p, -5, 5)
    assert [to_decimal(r, 6) for r in roots] == ["-1.414214", "1.000000", "1.414214", "1.500000"]
    assert compare_real(roots[1], RealAlgebraic.from_rational(1)) == 0
    assert compare_real(roots[3], RealAlgebraic.from_rational(Fraction(3, 2))) == 0
    assert isolate_real_roots(desc(1, 0, 1), -10, 10) == []


@given(int_polys, st.fractions(-4, 4, max_denominator=7), st.fractions(-4, 4, max_denominator=7))
def test_isolation_matches_sympy_real_roots(c, a, b):
    assume(a < b)
    p = IntPolynomial(tuple(c))
    roots = isolate_real_roots(p, a, b)
    oracle = sorted({r for r in sympy.Poly(list(reversed(c)), X).real_roots()
                     if sympy.Rational(a.numerator, a.denominator) < r < sympy.Rational(b.numerator, b.denominator)},
                    key=lambda r: r.evalf(50))
    assert len(roots) == len(oracle)
    for mine, theirs in zip(roots, oracle):
        assert a <= mine.lo <= mine.hi <= b
        assert mine.root_count() == 1
        assert abs(mp_value(mine) - mpmath.mpf(str(theirs.evalf(60)))) < mpmath.mpf(10) ** -40
    for x, y in zip(roots, roots[1:]):
        assert x.hi < y.lo


@given(int_polys, st.integers(1, 40))
def test_refine_keeps_one_root(c, k):
    roots = isolate_real_roots(IntPolynomial(tuple(c)), -8, 8)
    for r in roots:
        s = refine(r, Fraction(1, 2**k))
        assert s.width <= Fraction(1, 2**k)
        assert count_roots_closed(s.minpoly.coeffs, s.lo, s.hi) == 1
        assert compare_real(r, s) == 0


def test_to_decimal_rounding_and_brackets():
    half = RealAlgebraic.from_rational(Fraction(1, 8))
    assert to_decimal(half, 2) == "0.12"  # 0.125 rounds half to even
    assert to_decimal(RealAlgebraic.from_rational(Fraction(3, 8)), 2) == "0.38"
    assert to_decimal(RealAlgebraic.from_rational(Fraction(-1, 3)), 3) == "-0.333"
    assert to_decimal(special.q_f(), 5) == "1.75488"
    assert to_decimal(special.golden(), 5) == "1.61803"


# -- number fields -------------------------------------------------------------

@pytest.fixture(scope="module")
def gf():
    return field_of(special.golden())


def test_golden_field_examples(gf):
    q = gf.gen
    assert field_arith("mul", q, q) == q + 1
    assert field_arith("inv", q) == q - 1
    assert field_arith("sub", q**4, gf.one) == 3 * q + 1
    assert compare(q, q) is Ordering.EQUAL
    assert compare(q * q, q + 1) is Ordering.EQUAL
    with pytest.raises(InverseOfZero):
        field_arith("inv", gf.zero)
    with pytest.raises(ZeroDivisionError):
        gf.one / gf.zero


def test_cross_field_comparisons():
    qa = special.q_aleph0()
    (r4,) = isolate_real_roots(desc(1, 0, -2, -1, 0, 0, -1), 1, 2)
    assert compare(qa, r4) is Ordering.LESS
    assert compare(field_of(r4).gen, field_of(qa).gen) is Ordering.GREATER
    # a reducible defining polynomial lands in the field of its irreducible factor
    (a3,) = isolate_real_roots(desc(1, -1, -1, 0, -1, 1, 0, 1), 1, 2)
    assert compare(a3, qa) is Ordering.EQUAL
    assert field_of(a3).degree == 6


def test_rational_base_field():
    f = field_of(RealAlgebraic.from_rational(Fraction(3, 2)))
    assert f.degree == 1
    assert f.gen * f.gen == f(Fraction(9, 4))
    assert f(Fraction(1, 3)).sign() == 1


FIELDS = {
    "golden": special.golden,
    "q_aleph0": special.q_aleph0,
    "q_f": special.q_f,
}

coeffs = st.lists(st.fractions(-5, 5, max_denominator=9), min_size=0, max_size=6)


def _mp_eval(el, gen_mp):
    return sum(mpmath.mpf(c.numerator) / c.denominator * gen_mp**i for i, c in enumerate(el.rep))


@pytest.mark.parametrize("name", sorted(FIELDS))
@given(a=coeffs, b=coeffs, c=coeffs)
def test_field_axioms(name, a, b, c):
    f = field_of(FIELDS[name]())
    x, y, z = f.element(a), f.element(b), f.element(c)
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x * y == y * x
    if not x.is_zero:
        assert x * x.inverse() == f.one
    assert len(x.rep) <= f.degree


@pytest.mark.parametrize("name", sorted(FIELDS))
@given(a=coeffs, b=coeffs)
def test_sign_and_product_agree_with_high_precision_numerics(name, a, b):
    f = field_of(FIELDS[name]())
    gen = mp_value(f.generator)
    x, y = f.element(a), f.element(b)
    prod = x * y
    assert abs(_mp_eval(prod, gen) - _mp_eval(x, gen) * _mp_eval(y, gen)) < mpmath.mpf(10) ** -35
    d = _mp_eval(x - y, gen)
    if abs(d) > mpmath.mpf(10) ** -30:
        assert (x - y).sign() == (1 if d > 0 else -1)
        assert compare(x, y) is (Ordering.GREATER if d > 0 else Ordering.LESS)


@pytest.mark.parametrize("name", sorted(FIELDS))
@given(a=coeffs, b=coeffs, digits=st.integers(1, 12))
def test_compare_consistent_with_decimals(name, a, b, digits):
    f = field_of(FIELDS[name]())
    x, y = f.element(a), f.element(b)
    o = compare(x, y)
    dx, dy = Fraction(x.to_decimal(digits)), Fraction(y.to_decimal(digits))
    if o is Ordering.LESS:
        assert dx <= dy
    elif o is Ordering.EQUAL:
        assert dx == dy
    half_ulp = Fraction(1, 2 * 10**digits)
    lo, hi = x.enclosure(3)
    assert lo - half_ulp <= dx <= hi + half_ulp


@given(coeffs)
def test_charpoly_round_trip(a):
    f = field_of(special.q_aleph0())
    x = f.element(a)
    r = x.to_real_algebraic()
    assert compare(x, r) is Ordering.EQUAL
    assert compare(x + Fraction(1, 10**6), r) is Ordering.GREATER
