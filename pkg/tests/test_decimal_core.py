"""Digit access, truncation, shifting, negation, tail classification."""
import math
import threading
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from decreal import (
    LazyDecimal,
    PeriodicDecimal,
    TailClass,
    TerminatingDecimal,
    ZERO,
    as_fraction,
    classify_tail,
    digit_at,
    digits_string,
    negate,
    parse_decimal as pd,
    periodic_from_fraction,
    periodic_from_parts,
    shift,
    ten_power,
    truncate,
    value_key,
)

from strategies import exact_decimals, terminating_decimals, periodic_decimals


def sqrt2_lazy():
    """An opaque stream of root-two digits, backed by the isqrt oracle."""
    def gen():
        yield 1
        n = 0
        while True:
            n += 40
            block = str(math.isqrt(2 * 10 ** (2 * n)))
            for ch in block[n - 39 : n + 1]:
                yield int(ch)
    return LazyDecimal(1, 0, gen())


class TestDigitAt:
    def test_leading_digit_of_root_two(self):
        assert digit_at(sqrt2_lazy(), 0) == 1

    def test_zero_decimal_is_all_zero(self):
        for i in (5, 0, -3, -100):
            assert digit_at(ZERO, i) == 0

    def test_negative_number_fraction_digit(self):
        assert digit_at(pd("-17.341"), -3) == 1

    def test_above_leading_digit(self):
        assert digit_at(pd("987"), 3) == 0
        assert digit_at(pd("0.(7)"), 0) == 0

    @given(exact_decimals(), st.integers(-30, 30))
    def test_total_and_in_range(self, d, i):
        assert 0 <= digit_at(d, i) <= 9


class TestTruncate:
    def test_nines_tail(self):
        assert truncate(pd("0.(9)"), 2) == pd("0.99")

    def test_root_two_prefix(self):
        assert truncate(sqrt2_lazy(), 3) == pd("1.414")

    def test_sign_dropped_when_all_digits_vanish(self):
        t = truncate(pd("0.0003"), 2)
        assert t is ZERO and t.sign == 0

    def test_zero_truncates_to_zero(self):
        assert truncate(ZERO, 7) is ZERO

    @given(exact_decimals(), st.integers(1, 12))
    def test_deeper_truncations_agree_above(self, d, n):
        coarse, fine = truncate(d, n), truncate(d, n + 1)
        top = d.msd_index if d.msd_index is not None else 0
        for i in range(top, -n - 1, -1):
            assert coarse.digit_at(i) == fine.digit_at(i)

    @given(terminating_decimals(), st.integers(1, 10))
    def test_truncation_of_terminating_never_grows(self, d, n):
        t = truncate(d, n)
        assert abs(t.as_fraction()) <= abs(d.as_fraction())


class TestShift:
    def test_repeating_stream(self):
        assert shift(pd("0.(3)"), 1) == pd("3.(3)")

    def test_negative_shift_of_one(self):
        assert shift(pd("1"), -2) == pd("0.01")

    def test_zero(self):
        assert shift(ZERO, 5) is ZERO

    @given(exact_decimals(), st.integers(-8, 8))
    def test_round_trip(self, d, k):
        assert shift(shift(d, k), -k) == d

    @given(exact_decimals(), st.integers(-8, 8), st.integers(-20, 20))
    def test_digit_relocation(self, d, k, i):
        assert digit_at(shift(d, k), i) == digit_at(d, i - k)


class TestNegate:
    def test_nines(self):
        n = negate(pd("0.(9)"))
        assert n.sign == -1 and n == pd("-0.(9)")

    def test_zero_fixed(self):
        assert negate(ZERO) is ZERO

    def test_negative_input(self):
        assert negate(pd("-17.341")) == pd("17.341")

    @given(exact_decimals())
    def test_involution(self, d):
        assert negate(negate(d)) == d

    @given(exact_decimals(), st.integers(-15, 15))
    def test_digits_unchanged(self, d, i):
        assert digit_at(negate(d), i) == digit_at(d, i)


class TestTailClass:
    @pytest.mark.parametrize(
        "text,expected",
        [
            ("0.(9)", TailClass.NINES),
            ("1", TailClass.ZEROS),
            ("3.(0)", TailClass.ZEROS),
            ("0.(3)", TailClass.OTHER),
            ("1.41(6)", TailClass.OTHER),
            ("-17.340(9)", TailClass.NINES),
        ],
    )
    def test_exact_forms(self, text, expected):
        assert classify_tail(pd(text)) is expected

    def test_lazy_stream_is_undetermined(self):
        stream = sqrt2_lazy()
        assert classify_tail(stream, budget=100) is None
        # the first 100 digits do contain 0s and 9s, so no finite window
        # could have settled the question syntactically
        window = [stream.digit_at(i) for i in range(0, -100, -1)]
        assert 0 in window and 9 in window


class TestLeadingDigitInvariant:
    @given(exact_decimals(), st.integers(-8, 8))
    def test_after_shift_and_negate(self, d, k):
        for result in (shift(d, k), negate(d)):
            if result.sign != 0:
                assert result.digit_at(result.msd_index) != 0

    def test_lazy_rejects_zero_lead(self):
        def gen():
            yield 0
            while True:
                yield 1
        bad = LazyDecimal(1, 0, gen())
        with pytest.raises(ValueError):
            bad.digit_at(0)


class TestLazyMemoization:
    def test_repeated_queries_are_stable(self):
        calls = []
        def gen():
            n = 1
            while True:
                calls.append(n)
                yield n % 10
                n += 1
        d = LazyDecimal(1, 0, gen())
        first = [d.digit_at(i) for i in range(0, -50, -1)]
        again = [d.digit_at(i) for i in range(0, -50, -1)]
        assert first == again
        assert len(calls) == 50  # generated once, replayed from the memo

    def test_concurrent_queries_agree(self):
        d = sqrt2_lazy()
        oracle = str(math.isqrt(2 * 10**160))[:80]
        results = []
        def worker():
            results.append("".join(str(d.digit_at(i)) for i in range(0, -80, -1)))
        threads = [threading.Thread(target=worker) for _ in range(8)]
        for t in threads:
            t.start()
        for t in threads:
            t.join()
        assert all(r == oracle for r in results)


class TestLiteralSyntax:
    @pytest.mark.parametrize("text", ["-17.341", "0.(9)", "1.41(6)", "3", "0.01"])
    def test_round_trip(self, text):
        assert str(pd(text)) == text

    def test_canonicalization(self):
        assert str(pd("0.2(32)")) == "0.(23)"
        assert str(pd("1.(66)")) == "1.(6)"
        assert pd("0.(0)") is ZERO

    def test_values(self):
        assert as_fraction(pd("1.41(6)")) == Fraction(17, 12)
        assert as_fraction(pd("0.(142857)")) == Fraction(1, 7)
        assert value_key(pd("0.(9)")) == (Fraction(1), True)

    def test_jump_members_are_distinct_decimals(self):
        assert pd("0.(9)") != pd("1")
        assert as_fraction(pd("0.(9)")) == as_fraction(pd("1"))


class TestFractionBackedParts:
    def test_parts_materialize_lazily(self):
        d = periodic_from_fraction(Fraction(1, 7))
        assert d.repetend == (1, 4, 2, 8, 5, 7)
        assert d.preperiod == ()

    def test_nines_backed_digits(self):
        d = periodic_from_fraction(Fraction(1, 4), nines=True)
        assert [d.digit_at(i) for i in (-1, -2, -3, -4)] == [2, 4, 9, 9]
        assert d.repetend == (9,)
        assert d.preperiod == (2, 4)

    def test_digit_formula_matches_parts(self):
        d = periodic_from_fraction(Fraction(22, 7))
        by_formula = [d.digit_at(i) for i in range(1, -20, -1)]
        e = periodic_from_parts(1, d.integer_digits, d.preperiod, d.repetend)
        by_parts = [e.digit_at(i) for i in range(1, -20, -1)]
        assert by_formula == by_parts

    @given(periodic_decimals(allow_zero=False))
    def test_parts_round_trip(self, d):
        rebuilt = periodic_from_parts(
            d.sign, d.integer_digits, d.preperiod, d.repetend
        )
        assert rebuilt == d


def test_digits_string_window():
    assert digits_string(pd("123.456"), 5) == "123.45"
    assert digits_string(ZERO, 4) == "0"
