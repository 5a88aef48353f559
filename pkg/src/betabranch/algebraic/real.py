"""Real algebraic numbers as (square-free polynomial, isolating interval)."""

from __future__ import annotations

from dataclasses import dataclass
from decimal import ROUND_HALF_EVEN, Decimal
from fractions import Fraction
from math import ceil

from .poly import (
    IntPolynomial,
    count_roots,
    count_roots_closed,
    pdivmod,
    peval,
    pgcd,
    primitive,
    sign,
    squarefree_part,
)

Rational = Fraction


@dataclass(frozen=True)
class RealAlgebraic:
    """A real root of ``minpoly`` isolated by the closed interval ``[lo, hi]``.

    ``minpoly`` is square-free and primitive but not necessarily irreducible.
    Endpoints are never roots unless ``lo == hi``, in which case the number is
    the rational ``lo`` and ``minpoly`` is linear.
    """

    minpoly: IntPolynomial
    lo: Fraction
    hi: Fraction

    @classmethod
    def from_rational(cls, r) -> "RealAlgebraic":
        r = Fraction(r)
        return cls(IntPolynomial((-r.numerator, r.denominator)), r, r)

    @property
    def interval(self) -> tuple[Fraction, Fraction]:
        return self.lo, self.hi

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def is_rational(self) -> bool:
        return self.lo == self.hi

    def root_count(self) -> int:
        """Sturm count of the minimal polynomial on ``[lo, hi]``; always 1."""
        return count_roots_closed(self.minpoly.coeffs, self.lo, self.hi)

    def bisect(self) -> "RealAlgebraic":
        if self.is_rational:
            return self
        p = self.minpoly.coeffs
        mid = (self.lo + self.hi) / 2
        s_mid = sign(peval(p, mid))
        if s_mid == 0:
            return RealAlgebraic.from_rational(mid)
        if s_mid == sign(peval(p, self.lo)):
            return RealAlgebraic(self.minpoly, mid, self.hi)
        return RealAlgebraic(self.minpoly, self.lo, mid)

    def refine(self, eps) -> "RealAlgebraic":
        return refine(self, eps)

    def __float__(self):
        a = refine(self, Fraction(1, 2**60))
        return float((a.lo + a.hi) / 2)

    def to_decimal(self, digits: int) -> str:
        return to_decimal(self, digits)

    def __str__(self):
        return to_decimal(self, 10)

    def __repr__(self):
        return f"RealAlgebraic({self.minpoly}, [{self.lo}, {self.hi}])"

    # Ordering between independent algebraic numbers.
    def __lt__(self, other):
        return compare_real(self, _as_real(other)) < 0

    def __le__(self, other):
        return compare_real(self, _as_real(other)) <= 0

    def __gt__(self, other):
        return compare_real(self, _as_real(other)) > 0

    def __ge__(self, other):
        return compare_real(self, _as_real(other)) >= 0


def _as_real(x) -> RealAlgebraic:
    if isinstance(x, RealAlgebraic):
        return x
    if hasattr(x, "to_real_algebraic"):
        return x.to_real_algebraic()
    return RealAlgebraic.from_rational(x)


def isolate_real_roots(p, lo, hi) -> list[RealAlgebraic]:
    """Isolate the distinct real roots of ``p`` in the open interval ``(lo, hi)``.

    Returns the roots in increasing order; the square-free part of ``p`` is
    used as the defining polynomial of every root.
    """
    coeffs = p.coeffs if isinstance(p, IntPolynomial) else tuple(p)
    if not any(coeffs):
        raise ValueError("cannot isolate the roots of the zero polynomial")
    f = squarefree_part(coeffs)
    fpoly = IntPolynomial(f)
    lo, hi = Fraction(lo), Fraction(hi)
    out: list[RealAlgebraic] = []

    def open_count(a, b):
        n = count_roots(f, a, b)
        if peval(f, b) == 0:
            n -= 1
        return n

    stack = [(lo, hi, open_count(lo, hi))]
    while stack:
        a, b, n = stack.pop()
        if n == 0:
            continue
        fa, fb = peval(f, a), peval(f, b)
        if n == 1 and fa != 0 and fb != 0:
            out.append(RealAlgebraic(fpoly, a, b))
            continue
        m = (a + b) / 2
        if peval(f, m) == 0:
            out.append(RealAlgebraic.from_rational(m))
            n_left = open_count(a, m)
            stack.append((m, b, n - 1 - n_left))
            stack.append((a, m, n_left))
        else:
            n_left = open_count(a, m)
            stack.append((m, b, n - n_left))
            stack.append((a, m, n_left))
    out.sort(key=lambda r: r.lo)
    # neighbours may share a (non-root) split point; shrink until disjoint
    for i in range(len(out) - 1):
        while out[i].hi >= out[i + 1].lo:
            out[i] = out[i].bisect()
            if out[i].hi >= out[i + 1].lo:
                out[i + 1] = out[i + 1].bisect()
    return out


def refine(a: RealAlgebraic, eps) -> RealAlgebraic:
    """Bisect the isolating interval until its width is at most ``eps``."""
    eps = Fraction(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    while a.width > eps:
        a = a.bisect()
    return a


def _same_root(a: RealAlgebraic, b: RealAlgebraic) -> bool:
    """Exact equality of two algebraic numbers.

    A common root must be a root of ``g = gcd(pa, pb)``.  Both numbers are
    roots of ``g`` iff ``g`` vanishes inside their isolating intervals; they
    are then the same root once a shared interval hull holds only one root of
    ``g``, and different once the intervals separate.
    """
    if a.is_rational and b.is_rational:
        return a.lo == b.lo
    if a.is_rational or b.is_rational:
        r, other = (a, b) if a.is_rational else (b, a)
        return other.lo <= r.lo <= other.hi and peval(other.minpoly.coeffs, r.lo) == 0
    g = primitive(pgcd(a.minpoly.coeffs, b.minpoly.coeffs))
    if len(g) <= 1:
        return False
    if count_roots_closed(g, a.lo, a.hi) == 0 or count_roots_closed(g, b.lo, b.hi) == 0:
        return False
    while True:
        if a.hi < b.lo or b.hi < a.lo:
            return False
        if count_roots_closed(g, min(a.lo, b.lo), max(a.hi, b.hi)) == 1:
            return True
        a, b = a.bisect(), b.bisect()


def compare_real(a: RealAlgebraic, b: RealAlgebraic) -> int:
    """Exact three-way comparison (-1, 0, 1) of two real algebraic numbers."""
    if a.hi < b.lo:
        return -1
    if b.hi < a.lo:
        return 1
    if _same_root(a, b):
        return 0
    while True:
        if a.hi < b.lo:
            return -1
        if b.hi < a.lo:
            return 1
        if a.width >= b.width:
            a = a.bisect()
        else:
            b = b.bisect()


def real_equal(a: RealAlgebraic, b: RealAlgebraic) -> bool:
    return compare_real(a, b) == 0


def round_interval(bracket, digits: int, exact_at) -> str:
    """Correctly rounded decimal string from a refinable enclosure.

    ``bracket(k)`` returns a rational interval containing the value whose width
    shrinks as ``k`` grows; ``exact_at(t)`` reports whether the value equals the
    rational ``t`` (needed only when the enclosure straddles a rounding tie).
    """
    if digits < 1:
        raise ValueError("digits must be >= 1")
    scale = 10**digits
    k = 0
    while True:
        lo, hi = bracket(k)
        a, b = lo * scale, hi * scale
        ra, rb = _round_half_even(a), _round_half_even(b)
        if ra == rb:
            return _format_scaled(ra, digits)
        tie = Fraction(ceil(a - Fraction(1, 2))) + Fraction(1, 2)
        if a <= tie <= b and exact_at(tie / scale):
            return _format_scaled(_round_half_even(tie), digits)
        k += 1


def _round_half_even(x: Fraction) -> int:
    return round(x)


def _format_scaled(n: int, digits: int) -> str:
    d = Decimal(n).scaleb(-digits).quantize(Decimal(1).scaleb(-digits), rounding=ROUND_HALF_EVEN)
    return f"{d:f}"


def to_decimal(a, digits: int) -> str:
    """Decimal string of ``a`` rounded (half-even) to ``digits`` fractional digits.

    Accepts a ``RealAlgebraic`` or anything with ``to_decimal`` (field elements).
    """
    if not isinstance(a, RealAlgebraic):
        return a.to_decimal(digits)
    cur = [a]

    def bracket(k):
        if k:
            cur[0] = refine(cur[0], cur[0].width / 16 if cur[0].width else 1)
        return cur[0].lo, cur[0].hi

    def exact_at(t):
        r = cur[0]
        return r.lo <= t <= r.hi and peval(r.minpoly.coeffs, t) == 0

    return round_interval(bracket, digits, exact_at)
