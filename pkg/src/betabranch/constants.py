"""Named algebraic bases and exact re-derivation of the inequalities that
separate them.

Every check evaluates both sides as elements of ``Q(q)`` and compares them
exactly; there is no floating point anywhere in an outcome.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import lru_cache

from . import special
from .algebraic import FieldElement, RealAlgebraic, compare_real
from .branching import (
    Kind,
    classify_expansions,
    enumerate_prefixes,
    p_q_set,
    u_kq_set,
)
from .errors import BaseOutOfRange
from .expansions import Base, EventuallyPeriodicWord, eval_word, j_interval, t_inverse, t_map
from .parsing import parse_polynomial


@dataclass(frozen=True)
class NamedBase:
    name: str
    defining_relation: str  # as printed, e.g. "x^6=x^4+x^3+2x^2+x+1"
    approx: str  # printed decimal
    description: str = ""

    @property
    def minpoly(self):
        return parse_polynomial(self.defining_relation)

    @property
    def value(self) -> RealAlgebraic:
        return _root(self.defining_relation)

    def base(self) -> Base:
        return _base(self.name)

    def decimal(self, digits: int | None = None) -> str:
        """The value rounded to as many decimals as ``approx`` prints."""
        if digits is None:
            digits = len(self.approx.split(".")[1])
        return self.value.to_decimal(digits)


@lru_cache(maxsize=None)
def _root(relation: str) -> RealAlgebraic:
    return special.root_in_unit_gap(parse_polynomial(relation))


_REGISTRY = (
    NamedBase("golden", "x^2=x+1", "1.6180339887", "golden ratio; smallest base with non-unique expansions everywhere inside"),
    NamedBase("q_2", "x^4=2x^2+x+1", "1.71064", "bound of the two-expansion range"),
    NamedBase("q_f", "x^3=2x^2-x+1", "1.75488", "upper end of the range where the unique-expansion set is known explicitly"),
    NamedBase("q_aleph0", "x^6=x^4+x^3+2x^2+x+1", "1.64541", "smallest base admitting a point with countably many expansions"),
    NamedBase("r1", "x^6=x^5+2x^4-x^3-x^2+1", "1.69765", "window end for the second sequence bound"),
    NamedBase("r2", "x^5=x^4+x^3+x-1", "1.68042", "window end for the third sequence bound"),
    NamedBase("r3", "x^5=2x^3+x^2+1", "1.67602", "window end for first-half items 1-3"),
    NamedBase("r4", "x^6=2x^4+x^3+1", "1.65462", "window end for first-half items 4-6"),
    NamedBase("r5", "x^5=x^3+x^2+2x+2", "1.66184", "window end for first-half items 7-9"),
)
_BY_NAME = {b.name: b for b in _REGISTRY}


def registry() -> list[NamedBase]:
    return list(_REGISTRY)


def alpha_relation(k: int) -> str:
    return f"x^{k + 4}=x^{k + 3}+x^{k + 2}+x^{k}-x^2-1"


def alpha(k: int) -> NamedBase:
    """The base solving ``x^(k+4) = x^(k+3) + x^(k+2) + x^k - x^2 - 1``, ``k >= 3``."""
    if k < 3:
        raise ValueError("alpha_k is defined for k >= 3")
    value = _root(alpha_relation(k))
    return NamedBase(f"alpha_{k}", alpha_relation(k), value.to_decimal(5), "countable-expansion base family")


def lookup(name: str) -> NamedBase:
    if name in _BY_NAME:
        return _BY_NAME[name]
    if name.startswith("alpha_") and name[6:].isdigit():
        return alpha(int(name[6:]))
    raise KeyError(f"unknown base {name!r}; known: {', '.join(_BY_NAME)} and alpha_K")


@lru_cache(maxsize=None)
def _base(name: str) -> Base:
    return Base(lookup(name).value, name)


# -- verification --------------------------------------------------------------

class Outcome(enum.Enum):
    HOLDS = "Holds"
    FAILS = "Fails"
    EQUALITY_BOUNDARY = "EqualityBoundary"


_SEVERITY = {Outcome.HOLDS: 0, Outcome.EQUALITY_BOUNDARY: 1, Outcome.FAILS: 2}


@dataclass(frozen=True)
class Comparison:
    """One exact comparison ``left ? right`` with its sign and required relation."""

    label: str
    left: str
    right: str
    sign: int
    required: str  # "<", ">" or "="

    @property
    def satisfied(self) -> bool:
        return {"<": self.sign < 0, ">": self.sign > 0, "=": self.sign == 0}[self.required]

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "left": self.left,
            "right": self.right,
            "sign": self.sign,
            "required": self.required,
            "satisfied": self.satisfied,
        }


@dataclass
class VerificationReport:
    item: str
    base: str
    outcome: Outcome
    comparisons: list[Comparison] = field(default_factory=list)
    notes: dict = field(default_factory=dict)

    def line(self) -> str:
        return f"{self.item}  {self.base}  {self.outcome.value}"

    def to_dict(self) -> dict:
        return {
            "item": self.item,
            "base": self.base,
            "outcome": self.outcome.value,
            "comparisons": [c.to_dict() for c in self.comparisons],
            "notes": self.notes,
        }


def _cmp(label, a, b, required) -> Comparison:
    s = (a - b).sign() if isinstance(a, FieldElement) or isinstance(b, FieldElement) else compare_real(a, b)
    return Comparison(label, str(a), str(b), int(s), required)


def _strict_outcome(comps: list[Comparison]) -> Outcome:
    """Outcome of a list of strict inequalities: a tie is a boundary hit."""
    worst = Outcome.HOLDS
    for c in comps:
        if c.satisfied:
            continue
        o = Outcome.EQUALITY_BOUNDARY if c.sign == 0 else Outcome.FAILS
        if _SEVERITY[o] > _SEVERITY[worst]:
            worst = o
    return worst


def _identity_outcome(comps: list[Comparison]) -> Outcome:
    return Outcome.HOLDS if all(c.satisfied for c in comps) else Outcome.FAILS


def _in_open(label, value, lo, hi) -> list[Comparison]:
    return [_cmp(f"{label} > lower", value, lo, ">"), _cmp(f"{label} < upper", value, hi, "<")]


def _w(base: Base, text: str) -> FieldElement:
    pre, per = text.split("|")
    return eval_word(base, EventuallyPeriodicWord(pre, per))


def _require(base: Base, lo, hi, hi_closed=False, what=""):
    if not base.in_open_range(lo, hi, hi_closed=hi_closed):
        raise BaseOutOfRange(f"base {base.approx(6)} outside the range required by {what}")


def verify_prop_branching_points(base: Base) -> list[VerificationReport]:
    """Images of the ``J_q`` endpoints under ``T0``/``T1`` fall strictly between
    consecutive unique-expansion points; strict for ``q < q_aleph0``."""
    _require(base, special.golden(), special.q_f(), what="branching-points")
    left, right = j_interval(base)
    items = [
        ("T0(left)", t_map(base, 0, left), "|10", "1|10"),
        ("T0(right)", t_map(base, 0, right), "11|10", "111|10"),
        ("T1(left)", t_map(base, 1, left), "000|01", "00|01"),
        ("T1(right)", t_map(base, 1, right), "0|01", "|01"),
    ]
    reports = []
    for i, (label, value, lo, hi) in enumerate(items, 1):
        comps = _in_open(label, value, _w(base, lo), _w(base, hi))
        reports.append(VerificationReport(
            f"branching-points.{i}", base.label, _strict_outcome(comps), comps,
            {"interval": [lo, hi]}))
    return reports


def verify_lemma_sequence_bounds(base: Base) -> list[VerificationReport]:
    """``T0^-1(y) < T1(1/(q(q-1)))`` for the four candidate branching points ``y``."""
    _require(base, special.golden(), special.q_f(), what="sequence-bounds")
    target = t_map(base, 1, base.switch_hi)
    windows = {2: "r1", 3: "r2"}
    reports = []
    for i, word in enumerate(("01|10", "011|10", "10|01", "100|01"), 1):
        value = t_inverse(base, 0, _w(base, word))
        comps = [_cmp(f"T0^-1({word})", value, target, "<")]
        notes = {"y": word}
        if i in windows:
            bound = lookup(windows[i])
            notes["window"] = bound.name
            notes["below_window_end"] = base.compare_to(bound.value) < 0
        reports.append(VerificationReport(
            f"sequence-bounds.{i}", base.label, _strict_outcome(comps), comps, notes))
    return reports


# (y word, j=1 interval) per group of three items; j=2 and j>=3 intervals are shared
_FIRST_HALF = (
    ("01|10", ("111|10", "1111|10"), "r3"),
    ("011|10", ("1111|10", "11111|10"), "r4"),
    ("100|01", ("111|10", "1111|10"), "r5"),
    ("10|01", ("1111|10", "11111|10"), "q_aleph0"),
)


def verify_prop_first_half(base: Base, j_max: int = 10) -> list[VerificationReport]:
    """``T0^-j(y) + 1`` avoids the unique-expansion set for each candidate ``y``.

    The "all j >= 3" items are checked for ``3 <= j <= j_max`` and then for
    every larger ``j`` at once: ``y/q^j + 1`` decreases to ``1``, so lying
    strictly above the lower end in the limit and below the upper end at
    ``j = 3`` covers the whole tail.
    """
    if j_max < 3:
        raise ValueError("j_max must be >= 3")
    _require(base, special.golden(), special.q_f(), what="first-half")
    reports = []
    one = base.field.one
    for g, (word, j1, window) in enumerate(_FIRST_HALF):
        y = _w(base, word)
        notes = {"y": word, "window": window,
                 "below_window_end": base.compare_to(lookup(window).value) < 0}

        def shifted(j):
            v = y
            for _ in range(j):
                v = t_inverse(base, 0, v)
            return v + 1

        specs = [(1, j1), (2, ("1|10", "11|10"))]
        for j, (lo, hi) in specs:
            comps = _in_open(f"T0^-{j}({word})+1", shifted(j), _w(base, lo), _w(base, hi))
            reports.append(VerificationReport(
                f"first-half.{3 * g + j}", base.label, _strict_outcome(comps), comps,
                dict(notes, j=j, interval=[lo, hi])))
        lo, hi = _w(base, "|10"), _w(base, "1|10")
        comps = []
        for j in range(3, j_max + 1):
            comps += _in_open(f"T0^-{j}({word})+1", shifted(j), lo, hi)
        comps.append(_cmp(f"{word} (tail is decreasing)", y, base.field.zero, ">"))
        comps.append(_cmp("limit 1 > lower", one, lo, ">"))
        reports.append(VerificationReport(
            f"first-half.{3 * g + 3}", base.label, _strict_outcome(comps), comps,
            dict(notes, j=f"3..{j_max} plus tail", interval=["|10", "1|10"])))
    return reports


# the expansion families of the two J endpoints at q_aleph0
RIGHT_FAMILIES = (("1001", "", "1001"), ("1001", "0111", "10"), ("1001", "101000", "01"))
LEFT_FAMILIES = (("0110", "", "0110"), ("0110", "1000", "01"), ("0110", "010111", "10"))


def family_words(families, k_max: int) -> list[EventuallyPeriodicWord]:
    out = []
    for block, tail_pre, tail_per in families:
        if not tail_pre:
            out.append(EventuallyPeriodicWord("", tail_per))
            continue
        for k in range(k_max + 1):
            out.append(EventuallyPeriodicWord(block * k + tail_pre, tail_per))
    return out


def family_prefixes(families, n: int) -> list[str]:
    """All length-``n`` prefixes of the family words (``k`` up to ``n/4``)."""
    return sorted({w.digits(n) for w in family_words(families, n // 4 + 1)})


def verify_prop_second_half() -> VerificationReport:
    """Both ``J_q`` endpoints at ``q_aleph0`` have exactly the listed countable
    families of expansions."""
    base = _base("q_aleph0")
    left, right = j_interval(base)
    comps = [
        _cmp("T0(right) = 111|10", t_map(base, 0, right), _w(base, "111|10"), "="),
        _cmp("T1(left) = 000|01", t_map(base, 1, left), _w(base, "000|01"), "="),
    ]
    for name, point, fams in (("right", right, RIGHT_FAMILIES), ("left", left, LEFT_FAMILIES)):
        for w in family_words(fams, 5):
            comps.append(_cmp(f"eval {w} = {name}", eval_word(base, w), point, "="))
    notes = {}
    ok = True
    for name, point, fams in (("right", right, RIGHT_FAMILIES), ("left", left, LEFT_FAMILIES)):
        c = classify_expansions(base, point)
        prefixes = enumerate_prefixes(base, point, 30)
        expected = family_prefixes(fams, 30)
        notes[f"{name}_classification"] = str(c)
        notes[f"{name}_prefixes_30"] = len(prefixes)
        notes[f"{name}_prefixes_match"] = prefixes == expected
        ok &= c.kind is Kind.COUNTABLY_INFINITE and prefixes == expected
    outcome = _identity_outcome(comps) if ok else Outcome.FAILS
    return VerificationReport("second-half", base.label, outcome, comps, notes)


def verify_alpha_properties(k_max: int = 10, pq_max: int = 6) -> list[VerificationReport]:
    """Checks on the family ``alpha_k``: the first member is ``q_aleph0``, the
    family increases below ``q_f``, ``T0`` maps the right ``J_q`` endpoint to
    ``1^k(10)^inf``, and ``P_q`` is exactly ``U_{k,q}`` (for ``k <= pq_max``)."""
    if k_max < 3:
        raise ValueError("k_max must be >= 3")
    reports = []
    a3 = alpha(3)
    comps = [Comparison("alpha_3 = q_aleph0", a3.defining_relation, lookup("q_aleph0").defining_relation,
                        compare_real(a3.value, lookup("q_aleph0").value), "=")]
    reports.append(VerificationReport("alpha-family.first", "alpha_3", _identity_outcome(comps), comps))

    comps = []
    for k in range(3, k_max):
        comps.append(Comparison(f"alpha_{k} < alpha_{k + 1}", f"alpha_{k}", f"alpha_{k + 1}",
                                compare_real(alpha(k).value, alpha(k + 1).value), "<"))
    comps.append(Comparison(f"alpha_{k_max} < q_f", f"alpha_{k_max}", "q_f",
                            compare_real(alpha(k_max).value, special.q_f()), "<"))
    reports.append(VerificationReport("alpha-family.increasing", f"alpha_3..alpha_{k_max}",
                                      _strict_outcome(comps), comps))

    for k in range(3, k_max + 1):
        base = _base(f"alpha_{k}")
        _, right = j_interval(base)
        comps = [_cmp(f"T0(right) = 1^{k}|10", t_map(base, 0, right), _w(base, "1" * k + "|10"), "=")]
        reports.append(VerificationReport(f"alpha-family.identity.{k}", base.label,
                                          _identity_outcome(comps), comps))
    for k in range(3, min(k_max, pq_max) + 1):
        base = _base(f"alpha_{k}")
        got = p_q_set(base, k)
        want = u_kq_set(base, k)
        comps = [Comparison(f"|P_q| = |U_{k},q|", str(len(got)), str(len(want)),
                            (len(got) > len(want)) - (len(got) < len(want)), "=")]
        if len(got) == len(want):
            comps += [_cmp(f"P_q[{i}] = U[{i}]", a, b, "=") for i, (a, b) in enumerate(zip(got, want))]
        reports.append(VerificationReport(f"alpha-family.pq-set.{k}", base.label,
                                          _identity_outcome(comps), comps))
    return reports


ITEMS = ("branching-points", "sequence-bounds", "first-half", "second-half", "alpha-family")


def verify_item(item: str, base: Base | None = None) -> list[VerificationReport]:
    """Run one verification group; ``base`` defaults to ``q_aleph0`` where one is needed."""
    if item not in ITEMS:
        raise KeyError(f"unknown item {item!r}; known: {', '.join(ITEMS)}")
    if item == "second-half":
        return [verify_prop_second_half()]
    if item == "alpha-family":
        return verify_alpha_properties()
    base = base or _base("q_aleph0")
    fn = {
        "branching-points": verify_prop_branching_points,
        "sequence-bounds": verify_lemma_sequence_bounds,
        "first-half": verify_prop_first_half,
    }[item]
    return fn(base)
