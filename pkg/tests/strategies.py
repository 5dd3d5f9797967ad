"""Shared hypothesis strategies for decimal values."""
from fractions import Fraction

from hypothesis import strategies as st

from decreal import (
    TerminatingDecimal,
    ZERO,
    periodic_from_parts,
)

digits = st.integers(min_value=0, max_value=9)


def terminating_decimals(max_scaled=10**12, max_scale=6, allow_zero=True):
    """Terminating decimals value*10^-scale with bounded size."""
    lo = 0 if allow_zero else 1
    base = st.builds(
        TerminatingDecimal.from_scaled,
        st.integers(min_value=lo, max_value=max_scaled),
        st.integers(min_value=0, max_value=max_scale),
    )
    return st.builds(
        lambda d, negative: -d if negative and not d.is_zero else d,
        base,
        st.booleans(),
    )


def periodic_decimals(max_int=999, max_pre=4, max_rep=4, allow_zero=True):
    """Canonical ultimately periodic decimals from digit parts."""

    def build(ival, pre, rep, negative):
        ints = tuple(int(c) for c in str(ival)) if ival else ()
        d = periodic_from_parts(-1 if negative else 1, ints, tuple(pre), tuple(rep))
        return d

    strat = st.builds(
        build,
        st.integers(min_value=0, max_value=max_int),
        st.lists(digits, min_size=0, max_size=max_pre),
        st.lists(digits, min_size=1, max_size=max_rep),
        st.booleans(),
    )
    if not allow_zero:
        strat = strat.filter(lambda d: not d.is_zero)
    return strat


def exact_decimals(**kwargs):
    return st.one_of(terminating_decimals(), periodic_decimals())
