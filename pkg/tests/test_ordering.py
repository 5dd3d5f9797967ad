"""Lexicographic order, jumps, equivalence classes, suprema, density."""
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from decreal import (
    NotFinitelyRepresented,
    Ordering,
    RealClass,
    ZERO,
    add_t,
    compare,
    compare_class,
    equivalent,
    is_jump,
    jump_partner,
    lex_compare_exact,
    parse_decimal as pd,
    real_class,
    strictly_between,
    class_strictly_between,
    sub_t,
    supremum_finite,
    truncate,
    value_key,
)
from decreal.decimal_core import LazyDecimal

from strategies import exact_decimals, periodic_decimals, terminating_decimals


def lazy_of(text):
    d = pd(text)
    def gen():
        i = d.msd_index
        while True:
            yield d.digit_at(i)
            i -= 1
    return LazyDecimal(d.sign, d.msd_index, gen())


class TestCompare:
    @pytest.mark.parametrize(
        "a,b,expected",
        [
            ("0.(9)", "1", Ordering.LESS),
            ("-17.341", "-17.340(9)", Ordering.LESS),
            ("1.(2)", "1.3", Ordering.LESS),
            ("-0.3", "0", Ordering.LESS),
            ("0", "0.(7)", Ordering.LESS),
            ("2", "0.(9)", Ordering.GREATER),
            ("-5", "3", Ordering.LESS),
        ],
    )
    def test_examples(self, a, b, expected):
        assert compare(pd(a), pd(b)) is expected

    @given(exact_decimals())
    def test_reflexive(self, d):
        assert compare(d, d) is Ordering.EQUAL

    @given(exact_decimals(), exact_decimals())
    def test_antisymmetric(self, c, d):
        ab, ba = compare(c, d), compare(d, c)
        flip = {Ordering.LESS: Ordering.GREATER,
                Ordering.GREATER: Ordering.LESS,
                Ordering.EQUAL: Ordering.EQUAL}
        assert ba is flip[ab]

    @given(exact_decimals(), exact_decimals(), exact_decimals())
    def test_transitive(self, a, b, c):
        if compare(a, b) is not Ordering.GREATER and compare(b, c) is not Ordering.GREATER:
            assert compare(a, c) is not Ordering.GREATER

    @given(exact_decimals(), exact_decimals())
    def test_lex_scan_agrees_with_value_route(self, c, d):
        assert lex_compare_exact(c, d) is compare(c, d)

    def test_lazy_budget_returns_none_on_agreement(self):
        assert compare(lazy_of("0.(3)"), lazy_of("0.(3)"), budget=50) is None

    def test_lazy_difference_found(self):
        assert compare(lazy_of("0.(3)"), lazy_of("0.34"), budget=50) is Ordering.LESS


class TestJumps:
    def test_examples(self):
        assert is_jump(pd("0.(9)"), pd("1"))
        assert not is_jump(pd("0.998"), pd("1"))
        assert is_jump(pd("-17.341"), pd("-17.340(9)"))
        assert not is_jump(pd("1"), pd("0.(9)"))  # ordered pairs only

    def test_partners(self):
        assert jump_partner(pd("1")) == pd("0.(9)")
        assert jump_partner(ZERO) is None
        assert jump_partner(pd("0.(3)")) is None
        assert jump_partner(pd("-17.341")) == pd("-17.340(9)")

    @given(terminating_decimals(allow_zero=False))
    def test_every_nonzero_terminating_has_one_partner(self, d):
        partner = jump_partner(d)
        assert partner is not None
        assert jump_partner(partner) == d
        lo, hi = (d, partner) if compare(d, partner) is Ordering.LESS else (partner, d)
        assert is_jump(lo, hi)

    @given(terminating_decimals(allow_zero=False))
    def test_jumps_are_gaps_and_nothing_else_is(self, d):
        partner = jump_partner(d)
        lo, hi = (d, partner) if compare(d, partner) is Ordering.LESS else (partner, d)
        assert strictly_between(lo, hi) is None

    @given(exact_decimals(), exact_decimals())
    def test_non_jumps_have_midpoints(self, c, d):
        if compare(c, d) is Ordering.LESS and not is_jump(c, d):
            e = strictly_between(c, d)
            assert e is not None
            assert compare(c, e) is Ordering.LESS
            assert compare(e, d) is Ordering.LESS


class TestEquivalence:
    def test_examples(self):
        assert equivalent(pd("1"), pd("0.(9)"))
        assert equivalent(pd("1"), pd("1"))
        assert equivalent(pd("0.2"), pd("0.1(9)"))
        assert not equivalent(pd("0.2"), pd("0.2(1)"))

    @given(exact_decimals(), exact_decimals(), exact_decimals())
    def test_equivalence_relation(self, a, b, c):
        assert equivalent(a, a)
        assert equivalent(a, b) == equivalent(b, a)
        if equivalent(a, b) and equivalent(b, c):
            assert equivalent(a, c)

    @given(exact_decimals(), exact_decimals())
    def test_truncation_difference_criterion(self, c, d):
        # c ~ d exactly when |c|n - d|n| <= 10^-n for all sampled n
        bound_holds = all(
            abs(sub_t(truncate(c, n), truncate(d, n)).as_fraction())
            <= Fraction(1, 10**n)
            for n in range(1, 61)
        )
        assert bound_holds == equivalent(c, d)


class TestRealClass:
    def test_examples(self):
        one = real_class(pd("1"))
        assert len(one.members) == 2
        assert str(one) == "{0.(9), 1}"
        assert str(real_class(pd("0.(3)"))) == "0.(3)"
        assert real_class(ZERO).members == (ZERO,)

    def test_representative_is_the_terminating_member(self):
        assert real_class(pd("0.(9)")).representative == pd("1")
        assert real_class(pd("-17.340(9)")).representative == pd("-17.341")

    @given(exact_decimals())
    def test_class_size_at_most_two(self, d):
        cls = real_class(d)
        assert 1 <= len(cls.members) <= 2

    @given(exact_decimals(), exact_decimals())
    def test_classes_partition(self, c, d):
        same = real_class(c) == real_class(d)
        assert same == equivalent(c, d)

    def test_compare_class(self):
        assert compare_class(real_class(pd("0.(9)")), real_class(pd("1"))) is Ordering.EQUAL
        assert compare_class(real_class(pd("-0.3")), real_class(ZERO)) is Ordering.LESS
        assert compare_class(real_class(pd("1.(2)")), real_class(pd("1.3"))) is Ordering.LESS

    @given(exact_decimals(), exact_decimals())
    def test_class_density(self, c, d):
        a, b = real_class(c), real_class(d)
        if compare_class(a, b) is Ordering.LESS:
            between = class_strictly_between(a, b)
            assert compare_class(a, between) is Ordering.LESS
            assert compare_class(between, b) is Ordering.LESS


class TestSupremum:
    @pytest.mark.parametrize(
        "items,expected",
        [
            (["0.9", "0.99", "1"], "1"),
            (["-2", "-1.5"], "-1.5"),
            (["0.(3)", "0.34"], "0.34"),
            (["0.(9)", "1"], "1"),
            (["-0.5", "0", "0.5"], "0.5"),
            (["-1", "0"], "0"),
        ],
    )
    def test_examples(self, items, expected):
        assert supremum_finite([pd(t) for t in items]) == pd(expected)

    @given(st.lists(exact_decimals(), min_size=1, max_size=6))
    def test_supremum_is_max(self, items):
        sup = supremum_finite(items)
        assert any(compare(sup, x) is Ordering.EQUAL for x in items)
        assert all(compare(x, sup) is not Ordering.GREATER for x in items)

    def test_rejects_lazy(self):
        with pytest.raises(NotFinitelyRepresented):
            supremum_finite([lazy_of("0.(3)")])


class TestLazyClassWrapping:
    def test_lazy_singleton_unresolved(self):
        cls = real_class(lazy_of("0.(3)"))
        assert not cls.resolved
        assert len(cls.members) == 1

    def test_exact_ops_rejected_on_unresolved(self):
        cls = real_class(lazy_of("0.(3)"))
        with pytest.raises(NotFinitelyRepresented):
            cls.value()


class TestRendering:
    def test_jump_pair_ascending(self):
        assert real_class(pd("-0.3")).render() == "{-0.3, -0.2(9)}"
        assert real_class(pd("2")).render() == "{1.(9), 2}"

    def test_ellipsis_style(self):
        assert real_class(pd("1")).render(style="ellipsis") == "{0.999..., 1}"
