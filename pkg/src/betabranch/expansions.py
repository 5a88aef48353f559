"""Digit maps, regions and words for expansions in a base q in (1, 2).

A point ``x`` in ``I_q = [0, 1/(q-1)]`` is expanded by iterating the maps
``T0(x) = q x`` and ``T1(x) = q x - 1``; a digit sequence is an expansion of
``x`` exactly when the orbit it selects never leaves ``I_q``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import cached_property

from .algebraic import FieldElement, NumberField, RealAlgebraic, compare_real, field_of
from .errors import BaseOutOfRange, NotInSwitch, OutOfRange
from . import special

Word = str  # finite digit string over "01"


class Region(enum.Enum):
    BELOW_SWITCH = "BelowSwitch"
    SWITCH = "Switch"
    ABOVE_SWITCH = "AboveSwitch"
    OUT_OF_RANGE = "OutOfRange"


class Base:
    """A base ``q`` with ``1 < q < 2`` together with its number field."""

    def __init__(self, q, name: str | None = None):
        if isinstance(q, NumberField):
            field = q
        elif isinstance(q, RealAlgebraic):
            field = field_of(q)
        else:
            field = field_of(RealAlgebraic.from_rational(q))
        self.field = field
        self.q = field.generator
        self.name = name
        g = field.gen
        if not (g.sign() > 0 and (g - 1).sign() > 0 and (2 - g).sign() > 0):
            raise BaseOutOfRange(f"base must lie in (1, 2), got {self.approx(8)}")

    def __eq__(self, other):
        return isinstance(other, Base) and self.field == other.field

    def __hash__(self):
        return hash(self.field)

    def __repr__(self):
        return f"Base({self.name or self.q.minpoly}, ~{self.approx(6)})"

    def approx(self, digits: int = 5) -> str:
        return self.field.gen.to_decimal(digits)

    @property
    def label(self) -> str:
        return self.name or f"root of {self.q.minpoly}"

    @cached_property
    def gen(self) -> FieldElement:
        return self.field.gen

    @cached_property
    def inv_q(self) -> FieldElement:
        return self.gen.inverse()

    @cached_property
    def switch_hi(self) -> FieldElement:
        """Right end ``1/(q(q-1))`` of the switch region."""
        return (self.gen * (self.gen - 1)).inverse()

    @cached_property
    def top(self) -> FieldElement:
        """Right end ``1/(q-1)`` of ``I_q``."""
        return (self.gen - 1).inverse()

    def element(self, value) -> FieldElement:
        return self.field(value)

    def compare_to(self, other: RealAlgebraic) -> int:
        """Exact sign of ``q - other``."""
        return compare_real(self.q, other)

    def in_open_range(self, lo: RealAlgebraic | None, hi: RealAlgebraic | None,
                      lo_closed=False, hi_closed=False) -> bool:
        if lo is not None:
            c = self.compare_to(lo)
            if c < 0 or (c == 0 and not lo_closed):
                return False
        if hi is not None:
            c = self.compare_to(hi)
            if c > 0 or (c == 0 and not hi_closed):
                return False
        return True


@dataclass(frozen=True)
class EventuallyPeriodicWord:
    """``preperiod`` followed by ``period`` repeated forever, kept canonical:
    the period is primitive and the preperiod cannot be shortened by rotating
    the period."""

    preperiod: Word
    period: Word

    def __post_init__(self):
        pre, per = self.preperiod, self.period
        if not per:
            raise ValueError("period must be nonempty")
        if set(pre + per) - {"0", "1"}:
            raise ValueError("words use the digits 0 and 1 only")
        n = len(per)
        for d in range(1, n + 1):
            if n % d == 0 and per[:d] * (n // d) == per:
                per = per[:d]
                break
        while pre and pre[-1] == per[-1]:
            pre = pre[:-1]
            per = per[-1] + per[:-1]
        object.__setattr__(self, "preperiod", pre)
        object.__setattr__(self, "period", per)

    @classmethod
    def parse(cls, text: str) -> "EventuallyPeriodicWord":
        from .parsing import parse_word

        return parse_word(text)

    def digits(self, n: int) -> Word:
        out = self.preperiod
        while len(out) < n:
            out += self.period
        return out[:n]

    def __str__(self):
        return f"{self.preperiod}|{self.period}"


def _word(pre: str, per: str) -> EventuallyPeriodicWord:
    return EventuallyPeriodicWord(pre, per)


def t_map(base: Base, d: int, x: FieldElement) -> FieldElement:
    """``T_d(x) = q x - d``."""
    y = x.mul_gen()
    return y - 1 if d else y


def t_inverse(base: Base, d: int, x: FieldElement) -> FieldElement:
    """``T_d^{-1}(x) = (x + d) / q``."""
    return (x + d) * base.inv_q if d else x * base.inv_q


def apply_word(base: Base, w: Word, x: FieldElement) -> FieldElement:
    for ch in w:
        x = t_map(base, int(ch), x)
    return x


def in_range(base: Base, x: FieldElement) -> bool:
    return x.sign() >= 0 and (base.top - x).sign() >= 0


def region(base: Base, x: FieldElement) -> Region:
    if x.sign() < 0 or (base.top - x).sign() < 0:
        return Region.OUT_OF_RANGE
    if (x - base.inv_q).sign() < 0:
        return Region.BELOW_SWITCH
    if (x - base.switch_hi).sign() <= 0:
        return Region.SWITCH
    return Region.ABOVE_SWITCH


def _require_in_range(base: Base, x: FieldElement) -> Region:
    r = region(base, x)
    if r is Region.OUT_OF_RANGE:
        raise OutOfRange(f"point {x} lies outside [0, 1/(q-1)]")
    return r


def eval_word(base: Base, w: EventuallyPeriodicWord) -> FieldElement:
    """Exact value of ``sum eps_i q^-i`` for an eventually periodic digit sequence."""
    q = base.gen
    n = len(w.period)
    numer = base.field.zero
    for ch in w.period:
        numer = numer.mul_gen() + int(ch)
    value = numer / (q**n - 1)
    for ch in reversed(w.preperiod):
        value = t_inverse(base, int(ch), value)
    return value


def eval_finite(base: Base, w: Word) -> FieldElement:
    value = base.field.zero
    for ch in reversed(w):
        value = t_inverse(base, int(ch), value)
    return value


def greedy_lazy(base: Base, x: FieldElement, n: int, mode: str = "greedy") -> Word:
    """First ``n`` digits of the greedy (largest) or lazy (smallest) expansion."""
    if mode not in ("greedy", "lazy"):
        raise ValueError("mode must be 'greedy' or 'lazy'")
    _require_in_range(base, x)
    out = []
    for _ in range(n):
        if mode == "greedy":
            d = 1 if (x - base.inv_q).sign() >= 0 else 0
        else:
            d = 0 if (x - base.switch_hi).sign() <= 0 else 1
        out.append("01"[d])
        x = t_map(base, d, x)
    return "".join(out)


@dataclass(frozen=True)
class HitSwitch:
    prefix: Word
    point: FieldElement


@dataclass(frozen=True)
class Cycle:
    """The forced orbit is eventually periodic and never meets the switch region."""

    prefix: Word
    period: Word

    @property
    def cycle_length(self) -> int:
        return len(self.period)

    @property
    def word(self) -> EventuallyPeriodicWord:
        return EventuallyPeriodicWord(self.prefix, self.period)


@dataclass(frozen=True)
class Truncated:
    prefix: Word


def follow_forced(base: Base, x: FieldElement, max_steps: int = 10_000):
    """Follow the only admissible digit until the orbit reaches the switch
    region, provably cycles outside it, or ``max_steps`` digits are used."""
    r = _require_in_range(base, x)
    seen = {x: 0}
    digits = []
    for _ in range(max_steps):
        if r is Region.SWITCH:
            return HitSwitch("".join(digits), x)
        d = 0 if r is Region.BELOW_SWITCH else 1
        x = t_map(base, d, x)
        digits.append("01"[d])
        if x in seen:
            i = seen[x]
            return Cycle("".join(digits[:i]), "".join(digits[i:]))
        seen[x] = len(digits)
        r = region(base, x)
    return Truncated("".join(digits))


class Uniqueness(enum.Enum):
    UNIQUE = "Unique"
    NOT_UNIQUE = "NotUnique"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class UniquenessResult:
    status: Uniqueness
    witness: Word | None = None
    expansion: EventuallyPeriodicWord | None = None


def is_unique(base: Base, x: FieldElement, max_steps: int = 10_000) -> UniquenessResult:
    res = follow_forced(base, x, max_steps)
    if isinstance(res, Cycle):
        return UniquenessResult(Uniqueness.UNIQUE, expansion=res.word)
    if isinstance(res, HitSwitch):
        return UniquenessResult(Uniqueness.NOT_UNIQUE, witness=res.prefix)
    return UniquenessResult(Uniqueness.UNKNOWN)


def _check_lemma_range(base: Base, hi_closed=True):
    if not base.in_open_range(special.golden(), special.q_f(), hi_closed=hi_closed):
        bracket = "]" if hi_closed else ")"
        raise BaseOutOfRange(f"base {base.approx(6)} outside ((1+sqrt5)/2, q_f{bracket}")


def u_family(base: Base, k_max: int) -> list[tuple[EventuallyPeriodicWord, FieldElement]]:
    """Unique-expansion points ``0``, ``1/(q-1)``, ``0^k(10)^inf`` and
    ``1^k(10)^inf`` for ``0 <= k <= k_max``, sorted by value.

    Only valid for ``(1+sqrt5)/2 < q <= q_f``.  Both families are listed in
    full, so ``(10)^inf`` (their common ``k = 0`` member) appears twice.
    """
    _check_lemma_range(base)
    entries = [(_word("", "0"), base.field.zero), (_word("", "1"), base.top)]
    for k in range(k_max + 1):
        for lead in "01":
            w = _word(lead * k, "10")
            entries.append((w, eval_word(base, w)))
    entries.sort(key=_SortKey)
    return entries


class _SortKey:
    __slots__ = ("v",)

    def __init__(self, entry):
        self.v = entry[1]

    def __lt__(self, other):
        return (self.v - other.v).sign() < 0


def j_interval(base: Base) -> tuple[FieldElement, FieldElement]:
    """``[(q+q^2)/(q^4-1), (1+q^3)/(q^4-1)]``, the endpoints of the 4-cycle
    ``(0110)^inf``, ``(1001)^inf``."""
    q = base.gen
    d = q**4 - 1
    left = (q + q * q) / d
    right = (1 + q**3) / d
    if base.in_open_range(special.golden(), special.q_f(), hi_closed=True):
        assert (left - base.inv_q).sign() >= 0 and (base.switch_hi - right).sign() >= 0, \
            "J_q must lie inside the switch region"
    return left, right


def in_j(base: Base, x: FieldElement) -> bool:
    left, right = j_interval(base)
    return (x - left).sign() >= 0 and (right - x).sign() >= 0


def map_into_J(base: Base, x: FieldElement) -> tuple[Word, FieldElement]:
    """Drive a switch-region point into ``J_q`` with blocks ``01`` (from below)
    or ``10`` (from above); each block scales the distance to the fixed point
    of the block by ``q^2``."""
    _check_lemma_range(base)
    if region(base, x) is not Region.SWITCH:
        raise NotInSwitch(f"point {x} is not in the switch region")
    left, right = j_interval(base)
    word = []
    while True:
        if (x - left).sign() < 0:
            x = t_map(base, 1, t_map(base, 0, x))
            word.append("01")
        elif (x - right).sign() > 0:
            x = t_map(base, 0, t_map(base, 1, x))
            word.append("10")
        else:
            return "".join(word), x
