"""Exact repeating-decimal field: scaling identities, ops, period scan."""
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from decreal import (
    DivisionByZero,
    PeriodicDecimal,
    ZERO,
    ZeroInput,
    add_p,
    as_fraction,
    detect_period,
    divisibility_exponent,
    inv_p,
    mul_p,
    multiplicative_order,
    nines_zeros,
    parse_decimal as pd,
    periodic_from_fraction,
    periodic_from_parts,
    real_class,
    scale_to_integer,
    sub_p,
    sqrt_stream,
)

from strategies import periodic_decimals


def brute_divisibility_exponent(r):
    a = 1
    while (10**a * (10**a - 1)) % r:
        a += 1
    return a


class TestNinesZeros:
    @pytest.mark.parametrize("a,b,value", [(2, 2, 9900), (6, 0, 999999), (1, 3, 9000)])
    def test_examples(self, a, b, value):
        assert nines_zeros(a, b).as_fraction() == value
        assert value == 10**b * (10**a - 1)

    def test_needs_a_nine(self):
        with pytest.raises(ValueError):
            nines_zeros(0, 2)


class TestDivisibilityExponent:
    @pytest.mark.parametrize("r,a", [(7, 6), (10, 1), (1, 1), (81, 9), (13, 6)])
    def test_examples(self, r, a):
        assert divisibility_exponent(r) == a

    @given(st.integers(min_value=1, max_value=3000))
    def test_matches_brute_force_and_is_minimal(self, r):
        a = divisibility_exponent(r)
        assert (10**a * (10**a - 1)) % r == 0
        assert a == brute_divisibility_exponent(r)

    def test_zero_rejected(self):
        with pytest.raises(ZeroInput):
            divisibility_exponent(0)

    def test_order_helper(self):
        assert multiplicative_order(10, 7) == 6
        assert multiplicative_order(10, 1) == 1
        assert multiplicative_order(10, 81) == 9


class TestScaleToInteger:
    @pytest.mark.parametrize(
        "text,a,v",
        [("0.(3)", 1, 30), ("1", 1, 90), ("0.1(6)", 2, 1650)],
    )
    def test_examples(self, text, a, v):
        got_a, got_v = scale_to_integer(pd(text))
        assert (got_a, got_v.value) == (a, v)

    @given(periodic_decimals(allow_zero=False))
    def test_scaling_clears_every_periodic_decimal(self, x):
        a, v = scale_to_integer(x)
        assert as_fraction(x) * 10**a * (10**a - 1) == v.value

    @given(st.integers(1, 4), st.integers(-5000, 5000))
    def test_converse_integer_multiples_scan_periodic(self, a, n):
        # any value v with v * nines_zeros(a,a) integral is ultimately periodic
        if n == 0:
            return
        v = Fraction(n, 10**a * (10**a - 1))
        d = periodic_from_fraction(v)
        found = detect_period(d, 120, 10**a)  # period divides a's structure
        assert found is not None
        assert as_fraction(found) == v


class TestFieldOperations:
    def test_examples(self):
        assert real_class(add_p(pd("0.(3)"), pd("0.(6)"))).render() == "{0.(9), 1}"
        assert as_fraction(mul_p(pd("1.(2)"), pd("0.(81)"))) == 1
        assert sub_p(pd("0.1(6)"), pd("0.1(6)")) is ZERO
        assert inv_p(pd("3")) == pd("0.(3)")
        assert inv_p(pd("0.(3)")) == pd("3")
        assert inv_p(pd("1")) == pd("1")

    def test_zero_reciprocal_rejected(self):
        with pytest.raises(DivisionByZero):
            inv_p(ZERO)

    @given(periodic_decimals(), periodic_decimals())
    @settings(max_examples=150)
    def test_ops_match_the_rational_oracle(self, x, y):
        fx, fy = as_fraction(x), as_fraction(y)
        for op, fop in ((add_p, fx + fy), (sub_p, fx - fy), (mul_p, fx * fy)):
            got = op(x, y)
            want = periodic_from_fraction(fop) if fop else ZERO
            assert got == want

    @given(st.integers(-400, 400), st.integers(1, 400))
    def test_reciprocal_matches_oracle_on_tame_inputs(self, num, den):
        if num == 0:
            return
        x = periodic_from_fraction(Fraction(num, den))
        got = inv_p(x)
        assert as_fraction(got) == Fraction(den, num)

    @given(periodic_decimals(allow_zero=False))
    def test_reciprocal_inverts(self, x):
        assert as_fraction(mul_p(x, inv_p(x))) == 1

    @given(periodic_decimals(), periodic_decimals())
    def test_closure_results_are_periodic_objects(self, x, y):
        out = add_p(x, y)
        assert out is ZERO or isinstance(out, PeriodicDecimal)


class TestCanonicalForm:
    def test_idempotent(self):
        d = pd("0.2(32)")
        again = periodic_from_parts(d.sign, d.integer_digits, d.preperiod, d.repetend)
        assert (again.integer_digits, again.preperiod, again.repetend) == (
            d.integer_digits, d.preperiod, d.repetend,
        )

    @given(periodic_decimals(allow_zero=False), periodic_decimals(allow_zero=False))
    def test_equal_decimals_share_canonical_parts(self, x, y):
        if x == y:
            assert x.integer_digits == y.integer_digits
            assert x.preperiod == y.preperiod
            assert x.repetend == y.repetend

    def test_primitive_repetend(self):
        assert pd("0.(142857142857)").repetend == (1, 4, 2, 8, 5, 7)


class TestDetectPeriod:
    def test_one_seventh(self):
        found = detect_period(periodic_from_fraction(Fraction(1, 7)), 100, 10)
        assert found is not None
        assert found.repetend == (1, 4, 2, 8, 5, 7)
        assert found.preperiod == ()

    def test_short_nines_window(self):
        found = detect_period(pd("0.(9)"), 10, 3)
        assert found is not None and found.repetend == (9,)

    def test_preperiod_detected(self):
        found = detect_period(pd("0.1(6)"), 60, 5)
        assert found == pd("0.1(6)")

    def test_period_above_the_point(self):
        found = detect_period(pd("123.(123)"), 60, 5)
        assert found == pd("123.(123)")

    def test_root_two_window_shows_nothing(self):
        found = detect_period(sqrt_stream(pd("2")), 2000, 50)
        assert found is None
