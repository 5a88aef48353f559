"""The number field Q(q) generated by a real algebraic number.

Elements are stored as reduced rational polynomials in the generator, so two
elements are equal iff their coefficient tuples are equal.  Signs are decided
by evaluating that polynomial over a dyadic enclosure of the generator with
integer interval arithmetic, tightening the enclosure until the result
excludes zero.
"""

from __future__ import annotations

import enum
import threading
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import lru_cache
from math import ceil, floor, lcm

from ..errors import InverseOfZero
from .poly import (
    IntPolynomial,
    count_roots,
    count_roots_closed,
    monic,
    pdivmod,
    peval,
    pmul,
    primitive,
    pxgcd,
    sign,
    squarefree_part,
    to_q,
    trim,
)
from .real import RealAlgebraic, compare_real, isolate_real_roots, refine, round_interval


class Ordering(enum.IntEnum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


def _irreducible_factor(gen: RealAlgebraic) -> RealAlgebraic:
    """Replace a square-free defining polynomial by its irreducible factor that
    vanishes at the isolated root."""
    coeffs = gen.minpoly.coeffs
    if gen.is_rational or len(coeffs) <= 2:
        return gen
    import sympy

    x = sympy.Symbol("x")
    _, factors = sympy.Poly(list(reversed(coeffs)), x).factor_list()
    for f, _mult in factors:
        fc = tuple(int(c) for c in reversed(f.all_coeffs()))
        if len(fc) < 2:
            continue
        if count_roots_closed(fc, gen.lo, gen.hi) == 1:
            fc = primitive(fc)
            if len(fc) == 2:
                return RealAlgebraic.from_rational(Fraction(-fc[0], fc[1]))
            return RealAlgebraic(IntPolynomial(fc), gen.lo, gen.hi)
    raise AssertionError("no factor vanishes on the isolating interval")


def _root_bound(p: tuple[int, ...]) -> Fraction:
    lead = abs(p[-1])
    return 1 + Fraction(max(abs(c) for c in p[:-1]), lead) if len(p) > 1 else Fraction(1)


class NumberField:
    """Q(q) for a real algebraic ``q``; the defining polynomial is made irreducible.

    Two fields are equal when they have the same minimal polynomial and the
    same real root of it (counted from the left).
    """

    def __init__(self, generator: RealAlgebraic):
        gen = _irreducible_factor(generator)
        self.generator = gen
        self.minpoly = gen.minpoly if not gen.is_rational else IntPolynomial(
            (-gen.lo.numerator, gen.lo.denominator))
        self.degree = self.minpoly.degree
        self._modulus = monic(to_q(self.minpoly.coeffs))
        if gen.is_rational:
            self.root_index = 0
        else:
            self.root_index = count_roots(self.minpoly.coeffs, -_root_bound(self.minpoly.coeffs), gen.lo)
        self._key = (self.minpoly.coeffs, self.root_index)
        self._lock = threading.Lock()
        self._refined = gen
        self._brackets: list[tuple[int, list[tuple[int, int]]]] = []

    def __eq__(self, other):
        return isinstance(other, NumberField) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return f"NumberField({self.minpoly}, root #{self.root_index})"

    # -- element constructors -------------------------------------------------
    def element(self, coeffs) -> "FieldElement":
        """Reduce an arbitrary rational polynomial in the generator."""
        rep = to_q(coeffs)
        if len(rep) > self.degree:
            rep = pdivmod(rep, self._modulus)[1]
        return FieldElement(self, tuple(rep))

    def __call__(self, value) -> "FieldElement":
        if isinstance(value, FieldElement):
            if value.field != self:
                raise ValueError("element belongs to a different field")
            return value
        return self.element((Fraction(value),))

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(self, ())

    @property
    def one(self) -> "FieldElement":
        return self.element((1,))

    @property
    def gen(self) -> "FieldElement":
        return self.element((0, 1))

    # -- enclosures of the generator -------------------------------------------
    def _bracket(self, level: int):
        """Dyadic enclosure ``[L, H] / 2**b`` of the generator at the given level,
        with integer ranges of ``T**i`` for ``T`` in ``[L, H]``."""
        with self._lock:
            while len(self._brackets) <= level:
                b = 64 << len(self._brackets)
                eps = Fraction(1, 1 << b)
                self._refined = refine(self._refined, eps) if not self._refined.is_rational else self._refined
                L = floor(self._refined.lo * (1 << b))
                H = ceil(self._refined.hi * (1 << b))
                ranges = []
                for i in range(max(self.degree, 1)):
                    lo_p, hi_p = L**i, H**i
                    cands = [lo_p, hi_p]
                    if L < 0 < H and i % 2 == 0 and i > 0:
                        cands.append(0)
                    ranges.append((min(cands), max(cands)))
                self._brackets.append((b, ranges))
            return self._brackets[level]

    def enclose(self, rep, level: int) -> tuple[Fraction, Fraction]:
        """Rational interval containing the value of ``rep`` at the generator."""
        if not rep:
            return Fraction(0), Fraction(0)
        if len(rep) == 1:
            return rep[0], rep[0]
        den = lcm(*(c.denominator for c in rep))
        nums = [int(c * den) for c in rep]
        b, ranges = self._bracket(level)
        n = len(nums) - 1
        lower = upper = 0
        for i, c in enumerate(nums):
            if c == 0:
                continue
            mn, mx = ranges[i]
            w = b * (n - i)
            if c > 0:
                lower += (c * mn) << w
                upper += (c * mx) << w
            else:
                lower += (c * mx) << w
                upper += (c * mn) << w
        scale = den << (b * n)
        return Fraction(lower, scale), Fraction(upper, scale)

    def sign(self, rep) -> int:
        if not rep:
            return 0
        if len(rep) == 1:
            return sign(rep[0])
        level = 0
        while True:
            lo, hi = self.enclose(rep, level)
            if lo > 0:
                return 1
            if hi < 0:
                return -1
            level += 1


@lru_cache(maxsize=256)
def field_of(generator: RealAlgebraic) -> NumberField:
    """Shared ``NumberField`` instance for a generator (keeps refinement caches warm)."""
    return NumberField(generator)


def _coerce(field: NumberField, other) -> "FieldElement | None":
    if isinstance(other, FieldElement):
        if other.field is not field and other.field != field:
            raise ValueError("elements of different number fields")
        return other
    if isinstance(other, (int, Fraction)):
        return field.element((Fraction(other),))
    return None


@dataclass(frozen=True, eq=False)
class FieldElement:
    """Element of a ``NumberField`` in canonical reduced form."""

    field: NumberField
    rep: tuple = dc_field(default=())

    def __post_init__(self):
        object.__setattr__(self, "rep", trim(Fraction(c) for c in self.rep))

    # -- identity --------------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.rep == other.rep
        if isinstance(other, (int, Fraction)):
            return self.rep == trim((Fraction(other),))
        return NotImplemented

    def __hash__(self):
        return hash(self.rep)

    def is_zero(self) -> bool:
        return not self.rep

    def is_rational(self) -> bool:
        return len(self.rep) <= 1

    # -- arithmetic ------------------------------------------------------------
    def __add__(self, other):
        o = _coerce(self.field, other)
        if o is None:
            return NotImplemented
        n = max(len(self.rep), len(o.rep))
        a = self.rep + (0,) * (n - len(self.rep))
        b = o.rep + (0,) * (n - len(o.rep))
        return FieldElement(self.field, tuple(x + y for x, y in zip(a, b)))

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, tuple(-c for c in self.rep))

    def __sub__(self, other):
        o = _coerce(self.field, other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = _coerce(self.field, other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return FieldElement(self.field, tuple(c * other for c in self.rep))
        o = _coerce(self.field, other)
        if o is None:
            return NotImplemented
        return self.field.element(pmul(self.rep, o.rep))

    __rmul__ = __mul__

    def mul_gen(self) -> "FieldElement":
        """Multiply by the generator (a shift plus one reduction step)."""
        f = self.field
        shifted = (Fraction(0),) + self.rep
        if len(shifted) <= f.degree:
            return FieldElement(f, shifted)
        top = shifted[-1]
        mod = f._modulus
        return FieldElement(f, tuple(shifted[i] - top * mod[i] for i in range(f.degree)))

    def inverse(self) -> "FieldElement":
        if not self.rep:
            raise InverseOfZero("inverse of zero in a number field")
        if len(self.rep) == 1:
            return FieldElement(self.field, (1 / self.rep[0],))
        g, s, _ = pxgcd(self.rep, self.field._modulus)
        if len(g) != 1:
            raise AssertionError("defining polynomial is not irreducible")
        return self.field.element(s)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise InverseOfZero("division by zero")
            return FieldElement(self.field, tuple(c / other for c in self.rep))
        o = _coerce(self.field, other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = _coerce(self.field, other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result, base = self.field.one, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- ordering --------------------------------------------------------------
    def sign(self) -> int:
        return self.field.sign(self.rep)

    def compare(self, other) -> Ordering:
        return compare(self, other)

    def __lt__(self, other):
        return compare(self, other) < 0

    def __le__(self, other):
        return compare(self, other) <= 0

    def __gt__(self, other):
        return compare(self, other) > 0

    def __ge__(self, other):
        return compare(self, other) >= 0

    # -- conversion --------------------------------------------------------------
    def enclosure(self, level: int = 0) -> tuple[Fraction, Fraction]:
        return self.field.enclose(self.rep, level)

    def to_decimal(self, digits: int) -> str:
        def exact_at(t):
            return self.rep == trim((t,))

        return round_interval(lambda k: self.enclosure(k), digits, exact_at)

    def __float__(self):
        lo, hi = self.enclosure(0)
        return float((lo + hi) / 2)

    def charpoly(self) -> tuple[Fraction, ...]:
        """Characteristic polynomial of multiplication by this element (monic)."""
        n = self.field.degree
        cols = []
        basis = self.field.one
        for _ in range(n):
            v = (self * basis).rep
            cols.append(list(v) + [Fraction(0)] * (n - len(v)))
            basis = basis.mul_gen()
        mat = [[cols[j][i] for j in range(n)] for i in range(n)]
        return _faddeev_leverrier(mat)

    def to_real_algebraic(self) -> RealAlgebraic:
        if self.is_rational():
            return RealAlgebraic.from_rational(self.rep[0] if self.rep else 0)
        f = squarefree_part(self.charpoly())
        level = 0
        while True:
            lo, hi = self.enclosure(level)
            if peval(f, lo) != 0 and peval(f, hi) != 0 and count_roots(f, lo, hi) == 1:
                return RealAlgebraic(IntPolynomial(f), lo, hi)
            level += 1

    def __repr__(self):
        from .poly import format_poly

        return f"FieldElement({format_poly(self.rep, 'q')})"

    def __str__(self):
        from .poly import format_poly

        return format_poly(self.rep, "q")


def _faddeev_leverrier(mat) -> tuple[Fraction, ...]:
    n = len(mat)
    ident = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    m = [[Fraction(0)] * n for _ in range(n)]
    for k in range(1, n + 1):
        # M_k = A M_{k-1} + c_{n-k+1} I
        am = [[sum(mat[i][t] * m[t][j] for t in range(n)) for j in range(n)] for i in range(n)]
        m = [[am[i][j] + coeffs[n - k + 1] * ident[i][j] for j in range(n)] for i in range(n)]
        amk = [[sum(mat[i][t] * m[t][j] for t in range(n)) for j in range(n)] for i in range(n)]
        coeffs[n - k] = -sum(amk[i][i] for i in range(n)) / k
    return tuple(coeffs)


def field_arith(op: str, a: FieldElement, b: FieldElement | None = None) -> FieldElement:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "inv":
        return a.inverse()
    raise ValueError(f"unknown field operation {op!r}")


def compare(a, b) -> Ordering:
    """Exact ordering of two numbers.

    Elements of the same field are compared through the sign of their
    difference; anything else goes through real algebraic comparison.
    """
    if isinstance(a, FieldElement) and isinstance(b, (int, Fraction)):
        b = a.field(b)
    if isinstance(b, FieldElement) and isinstance(a, (int, Fraction)):
        a = b.field(a)
    if isinstance(a, FieldElement) and isinstance(b, FieldElement) and a.field == b.field:
        if a.rep == b.rep:
            return Ordering.EQUAL
        return Ordering(a.field.sign((a - b).rep))
    ra = a if isinstance(a, RealAlgebraic) else _to_real(a)
    rb = b if isinstance(b, RealAlgebraic) else _to_real(b)
    return Ordering(compare_real(ra, rb))


def _to_real(x) -> RealAlgebraic:
    if isinstance(x, FieldElement):
        return x.to_real_algebraic()
    return RealAlgebraic.from_rational(x)


__all__ = [
    "FieldElement",
    "NumberField",
    "Ordering",
    "compare",
    "field_arith",
    "field_of",
    "isolate_real_roots",
]
