"""Dense univariate polynomials over Z and Q.

Coefficients are stored in ascending degree order; the zero polynomial is the
empty tuple.  Rational polynomials are plain tuples of ``Fraction`` and are
manipulated by the module-level helpers; ``IntPolynomial`` is the public
integer type used for defining polynomials.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Sequence

QPoly = tuple  # tuple[Fraction, ...]


def trim(coeffs: Iterable) -> tuple:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def degree(p: Sequence) -> int:
    return len(p) - 1


def to_q(p: Iterable) -> QPoly:
    return trim(Fraction(c) for c in p)


def padd(a: Sequence, b: Sequence) -> QPoly:
    n = max(len(a), len(b))
    return trim((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n))


def psub(a: Sequence, b: Sequence) -> QPoly:
    n = max(len(a), len(b))
    return trim((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n))


def pscale(a: Sequence, c) -> QPoly:
    return trim(x * c for x in a)


def pmul(a: Sequence, b: Sequence) -> QPoly:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return trim(out)


def pdivmod(a: Sequence, b: Sequence) -> tuple[QPoly, QPoly]:
    """Euclidean division over Q."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = [Fraction(x) for x in a]
    lead = Fraction(b[-1])
    db = len(b) - 1
    if len(r) - 1 < db:
        return (), trim(r)
    quot = [Fraction(0)] * (len(r) - db)
    for k in range(len(r) - 1, db - 1, -1):
        c = r[k] / lead
        if c == 0:
            continue
        quot[k - db] = c
        for j in range(db + 1):
            r[k - db + j] -= c * b[j]
    return trim(quot), trim(r[:db])


def pmod(a: Sequence, b: Sequence) -> QPoly:
    return pdivmod(a, b)[1]


def monic(a: Sequence) -> QPoly:
    if not a:
        return ()
    lead = Fraction(a[-1])
    return tuple(Fraction(x) / lead for x in a)


def pgcd(a: Sequence, b: Sequence) -> QPoly:
    """Monic gcd over Q (zero if both inputs are zero)."""
    a, b = to_q(a), to_q(b)
    while b:
        a, b = b, pmod(a, b)
    return monic(a)


def pxgcd(a: Sequence, b: Sequence) -> tuple[QPoly, QPoly, QPoly]:
    """Return ``(g, s, t)`` with ``s*a + t*b = g`` and ``g`` monic."""
    r0, r1 = to_q(a), to_q(b)
    s0, s1 = (Fraction(1),), ()
    t0, t1 = (), (Fraction(1),)
    while r1:
        q, r = pdivmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, psub(s0, pmul(q, s1))
        t0, t1 = t1, psub(t0, pmul(q, t1))
    if not r0:
        return (), (), ()
    lead = r0[-1]
    return monic(r0), pscale(s0, 1 / lead), pscale(t0, 1 / lead)


def pderiv(a: Sequence) -> tuple:
    return trim(i * a[i] for i in range(1, len(a)))


def peval(a: Sequence, x):
    acc = 0
    for c in reversed(a):
        acc = acc * x + c
    return acc


def sign(x) -> int:
    return (x > 0) - (x < 0)


def primitive(a: Sequence) -> tuple[int, ...]:
    """Scale a rational polynomial to integer coefficients with content 1 and
    positive leading coefficient."""
    a = to_q(a)
    if not a:
        return ()
    den = 1
    for c in a:
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(c * den) for c in a]
    g = 0
    for c in ints:
        g = gcd(g, c)
    if ints[-1] < 0:
        g = -g
    return tuple(c // g for c in ints)


def positive_primitive(a: Sequence) -> tuple[int, ...]:
    """Like ``primitive`` but only ever scales by a positive factor, so signs of
    values are preserved (used inside Sturm sequences)."""
    p = primitive(a)
    if p and a and sign(Fraction(a[-1])) != sign(p[-1]):
        p = tuple(-c for c in p)
    return p


def squarefree_part(a: Sequence) -> tuple[int, ...]:
    a = to_q(a)
    if len(a) <= 1:
        return primitive(a)
    g = pgcd(a, pderiv(a))
    return primitive(pdivmod(a, g)[0])


@lru_cache(maxsize=4096)
def sturm_sequence(p: tuple[int, ...]) -> tuple[tuple[int, ...], ...]:
    """Sturm chain of ``p`` with every member scaled positively to primitive
    integer form (scaling by positive constants keeps the sign pattern)."""
    seq = [positive_primitive(p), positive_primitive(pderiv(p))]
    while seq[-1] and len(seq[-1]) > 1:
        r = pmod(seq[-2], seq[-1])
        if not r:
            break
        seq.append(positive_primitive(pscale(r, -1)))
    return tuple(s for s in seq if s)


def sign_variations(seq, x) -> int:
    count = 0
    last = 0
    for s in seq:
        v = sign(peval(s, x))
        if v == 0:
            continue
        if last and v != last:
            count += 1
        last = v
    return count


def count_roots(p: Sequence, a, b) -> int:
    """Number of distinct real roots of ``p`` in the half-open interval ``(a, b]``."""
    if a >= b:
        return 0
    seq = sturm_sequence(tuple(int(c) for c in primitive(p)))
    return sign_variations(seq, Fraction(a)) - sign_variations(seq, Fraction(b))


def count_roots_closed(p: Sequence, a, b) -> int:
    """Number of distinct real roots of ``p`` in ``[a, b]``."""
    a, b = Fraction(a), Fraction(b)
    if a > b:
        return 0
    extra = 1 if peval(p, a) == 0 else 0
    if a == b:
        return extra
    return count_roots(p, a, b) + extra


def format_poly(coeffs: Sequence, var: str = "x") -> str:
    """Human-readable form, highest degree first, e.g. ``x^2-x-1``."""
    terms = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if c == 0:
            continue
        neg = c < 0
        mag = -c if neg else c
        if i == 0:
            body = str(mag)
        else:
            mono = var if i == 1 else f"{var}^{i}"
            if mag == 1:
                body = mono
            elif isinstance(mag, Fraction) and mag.denominator != 1:
                body = f"({mag}){mono}"
            else:
                body = f"{mag}{mono}"
        if not terms:
            terms.append(("-" if neg else "") + body)
        else:
            terms.append(("-" if neg else "+") + body)
    return "".join(terms) if terms else "0"


@dataclass(frozen=True)
class IntPolynomial:
    """Integer polynomial, ascending coefficients."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", trim(int(c) for c in self.coeffs))

    @classmethod
    def from_descending(cls, coeffs: Sequence[int]) -> "IntPolynomial":
        return cls(tuple(reversed(coeffs)))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __bool__(self):
        return bool(self.coeffs)

    def __call__(self, x):
        return peval(self.coeffs, x)

    def __add__(self, other):
        return IntPolynomial(padd(self.coeffs, other.coeffs))

    def __sub__(self, other):
        return IntPolynomial(psub(self.coeffs, other.coeffs))

    def __mul__(self, other):
        return IntPolynomial(pmul(self.coeffs, other.coeffs))

    def __neg__(self):
        return IntPolynomial(tuple(-c for c in self.coeffs))

    def derivative(self) -> "IntPolynomial":
        return IntPolynomial(pderiv(self.coeffs))

    def primitive(self) -> "IntPolynomial":
        return IntPolynomial(primitive(self.coeffs))

    def squarefree(self) -> "IntPolynomial":
        return IntPolynomial(squarefree_part(self.coeffs))

    def is_squarefree(self) -> bool:
        return len(pgcd(self.coeffs, pderiv(self.coeffs))) <= 1

    def __str__(self):
        return format_poly(self.coeffs)

    def __repr__(self):
        return f"IntPolynomial({format_poly(self.coeffs)!r})"
