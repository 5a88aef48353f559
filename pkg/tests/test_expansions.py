from fractions import Fraction

import mpmath
import pytest
from hypothesis import assume, given, strategies as st

from betabranch.constants import lookup
from betabranch.errors import BaseOutOfRange, NotInSwitch, OutOfRange
from betabranch.expansions import (
    Base,
    Cycle,
    EventuallyPeriodicWord,
    HitSwitch,
    Region,
    Truncated,
    Uniqueness,
    apply_word,
    eval_finite,
    eval_word,
    follow_forced,
    greedy_lazy,
    in_j,
    in_range,
    is_unique,
    j_interval,
    map_into_J,
    region,
    t_map,
    u_family,
)

bits = st.text("01", min_size=0, max_size=8)
period_bits = st.text("01", min_size=1, max_size=6)
BASE_NAMES = ("golden", "q_aleph0", "q_f", "q_2", "r4")


def W(text):
    pre, per = text.split("|")
    return EventuallyPeriodicWord(pre, per)


def test_base_range_is_exact():
    with pytest.raises(BaseOutOfRange):
        Base(Fraction(2))
    with pytest.raises(BaseOutOfRange):
        Base(Fraction(1))
    assert Base(Fraction(3, 2)).approx(3) == "1.500"


def test_canonical_words():
    assert W("1|11") == W("|1")
    assert W("1010|10") == W("|10")
    assert W("1|1001") == W("|1100")
    assert W("0|11") != W("|1")
    assert str(W("0111|10")) == "0111|10"
    assert W("01|0101").period == "01"
    with pytest.raises(ValueError):
        EventuallyPeriodicWord("0", "")


@given(bits, period_bits)
def test_canonical_form_keeps_the_sequence(pre, per):
    w = EventuallyPeriodicWord(pre, per)
    n = len(pre) + 3 * len(per)
    raw = (pre + per * n)[:n]
    assert w.digits(n) == raw
    assert len(w.preperiod) <= len(pre)
    if w.preperiod:
        assert w.preperiod[-1] != w.period[-1]


def test_t_map_examples(golden, q_aleph0):
    assert t_map(golden, 1, golden.inv_q).is_zero
    assert t_map(golden, 1, golden.gen) == golden.gen
    q = q_aleph0.gen
    left = (q + q * q) / (q**4 - 1)
    assert t_map(q_aleph0, 1, t_map(q_aleph0, 0, left)) == (1 + q**3) / (q**4 - 1)


def test_region_examples(golden, q_aleph0):
    assert region(golden, golden.field.one) is Region.SWITCH
    assert region(golden, golden.field.zero) is Region.BELOW_SWITCH
    assert region(golden, golden.gen) is Region.ABOVE_SWITCH
    assert region(golden, golden.gen + Fraction(1, 10**9)) is Region.OUT_OF_RANGE
    assert region(golden, golden.field(-Fraction(1, 10**9))) is Region.OUT_OF_RANGE
    q = q_aleph0.gen
    assert region(q_aleph0, (1 + q**3) / (q**4 - 1)) is Region.SWITCH
    assert region(q_aleph0, q_aleph0.inv_q) is Region.SWITCH
    assert region(q_aleph0, q_aleph0.switch_hi) is Region.SWITCH


@pytest.mark.parametrize("name", BASE_NAMES)
def test_eval_word_examples(name):
    b = lookup(name).base()
    q = b.gen
    assert eval_word(b, W("|0110")) == (q + q * q) / (q**4 - 1)
    assert eval_word(b, W("1|0")) == b.inv_q
    assert eval_word(b, W("|1")) == b.top
    assert eval_word(b, W("|0")).is_zero
    assert eval_finite(b, "1") == b.inv_q
    if name == "golden":
        assert eval_word(b, W("|10")) == b.field.one


@pytest.mark.parametrize("name", BASE_NAMES)
@given(pre=bits, per=period_bits)
def test_eval_word_against_partial_sums(name, pre, per):
    b = lookup(name).base()
    x = eval_word(b, EventuallyPeriodicWord(pre, per))
    assert in_range(b, x)
    mpmath.mp.dps = 40
    r = b.q.refine(Fraction(1, 10**45))
    qv = mpmath.mpf(r.lo.numerator) / r.lo.denominator
    digits = (pre + per * 400)[:400]
    s = mpmath.fsum(int(d) * qv ** -(i + 1) for i, d in enumerate(digits))
    val = mpmath.fsum(mpmath.mpf(c.numerator) / c.denominator * qv**i for i, c in enumerate(x.rep))
    assert abs(s - val) < mpmath.mpf(10) ** -25


@pytest.mark.parametrize("name", BASE_NAMES)
@given(pre=bits, per=period_bits)
def test_orbit_along_prefix_lands_on_tail(name, pre, per):
    b = lookup(name).base()
    x = eval_word(b, EventuallyPeriodicWord(pre, per))
    y = x
    for ch in pre:
        y = t_map(b, int(ch), y)
        assert in_range(b, y)
    assert y == eval_word(b, EventuallyPeriodicWord("", per))
    assert apply_word(b, pre, x) == y


def test_greedy_lazy_examples(golden, q_aleph0):
    one = golden.field.one
    assert greedy_lazy(golden, one, 5, "greedy") == "11000"
    assert greedy_lazy(golden, one, 5, "lazy") == "01111"
    for b in (golden, q_aleph0):
        for mode in ("greedy", "lazy"):
            assert greedy_lazy(b, b.field.zero, 4, mode) == "0000"
    with pytest.raises(OutOfRange):
        greedy_lazy(golden, golden.field(2), 3)
    with pytest.raises(ValueError):
        greedy_lazy(golden, one, 3, "middle")


@pytest.mark.parametrize("name", BASE_NAMES)
@given(pre=bits, per=period_bits, n=st.integers(0, 25))
def test_greedy_dominates_lazy_and_stays_in_range(name, pre, per, n):
    b = lookup(name).base()
    x = eval_word(b, EventuallyPeriodicWord(pre, per))
    g = greedy_lazy(b, x, n, "greedy")
    z = greedy_lazy(b, x, n, "lazy")
    assert g >= z
    for w in (g, z):
        y = x
        for ch in w:
            y = t_map(b, int(ch), y)
            assert in_range(b, y)
    u = is_unique(b, x, 500)
    if u.status is Uniqueness.UNIQUE:
        assert g == z
    elif u.status is Uniqueness.NOT_UNIQUE and n > len(u.witness):
        assert g != z


def test_follow_forced_examples(q_aleph0, q_f):
    q = q_aleph0.gen
    right = (1 + q**3) / (q**4 - 1)
    assert follow_forced(q_aleph0, right) == HitSwitch("", right)
    c = follow_forced(q_aleph0, q_aleph0.field.zero)
    assert isinstance(c, Cycle) and c.prefix == "" and c.cycle_length == 1
    x = eval_word(q_f, W("00|10"))
    assert isinstance(follow_forced(q_f, x), Cycle)
    b = Base(Fraction(3, 2))
    assert isinstance(follow_forced(b, b.field(Fraction(1, 7)), max_steps=3), Truncated)


def test_is_unique_examples(q_aleph0, q_f):
    assert is_unique(q_aleph0, q_aleph0.field.zero).status is Uniqueness.UNIQUE
    r = is_unique(q_aleph0, q_aleph0.inv_q)
    assert r.status is Uniqueness.NOT_UNIQUE and r.witness == ""
    assert is_unique(q_f, eval_word(q_f, W("1|10"))).status is Uniqueness.UNIQUE
    assert is_unique(q_f, q_f.top).expansion == W("|1")


def test_u_family(q_f, q_aleph0, quadratic_samples, golden):
    fam = u_family(q_aleph0, 3)
    assert len(fam) == 10
    values = [v for _, v in fam]
    assert all((b - a).sign() >= 0 for a, b in zip(values, values[1:]))
    q = q_f.gen
    assert any(v == q / (q * q - 1) for _, v in u_family(q_f, 0))
    for b in quadratic_samples + [q_f, q_aleph0]:
        for _, v in u_family(b, 4):
            assert is_unique(b, v).status is Uniqueness.UNIQUE
    with pytest.raises(BaseOutOfRange):
        u_family(golden, 2)
    with pytest.raises(BaseOutOfRange):
        u_family(Base(Fraction(19, 10)), 2)


def test_j_interval(q_f, q_aleph0, golden):
    left, right = j_interval(q_f)
    assert left == q_f.inv_q and right == q_f.switch_hi
    left, right = j_interval(q_aleph0)
    assert left == eval_word(q_aleph0, W("|0110"))
    assert right == eval_word(q_aleph0, W("|1001"))
    left, right = j_interval(golden)
    assert (left - golden.inv_q).sign() > 0 and (golden.switch_hi - right).sign() > 0


def test_map_into_j(q_aleph0, q_f, golden):
    left, _ = j_interval(q_aleph0)
    assert map_into_J(q_aleph0, left) == ("", left)
    w, y = map_into_J(q_aleph0, q_aleph0.inv_q)
    assert len(w) >= 2 and len(w) % 2 == 0 and set(w.split("01")) == {""}
    assert in_j(q_aleph0, y)
    assert apply_word(q_aleph0, w, q_aleph0.inv_q) == y
    w, y = map_into_J(q_aleph0, q_aleph0.switch_hi)
    assert set(w.split("10")) == {""} and in_j(q_aleph0, y)
    for x in (q_f.inv_q, q_f.switch_hi, (q_f.inv_q + q_f.switch_hi) / 2):
        assert map_into_J(q_f, x) == ("", x)
    with pytest.raises(NotInSwitch):
        map_into_J(q_aleph0, q_aleph0.field.zero)
    with pytest.raises(BaseOutOfRange):
        map_into_J(golden, golden.field.one)


@pytest.mark.parametrize("name", ("golden", "q_aleph0", "q_f", "q_2", "r1"))
@given(num=st.integers(1, 999))
def test_contraction_identities(name, num):
    b = lookup(name).base()
    q = b.gen
    d = q**4 - 1
    left, right = (q + q * q) / d, (1 + q**3) / d
    assert t_map(b, 1, t_map(b, 0, left)) == right
    assert t_map(b, 0, t_map(b, 1, right)) == left
    lo, hi = (q * q - 1).inverse(), q / (q * q - 1)
    y = lo + (hi - lo) * Fraction(num, 1000)
    assert t_map(b, 1, t_map(b, 0, y)) - lo == q * q * (y - lo)
    assert t_map(b, 0, t_map(b, 1, y)) - hi == q * q * (y - hi)
