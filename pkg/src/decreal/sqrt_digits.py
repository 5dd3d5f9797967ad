"""Digit-by-digit square roots and the residue certificate behind them.

The square root of a nonnegative exact decimal is the supremum of the
terminating decimals whose squares stay below it; each digit is the
largest one keeping the squared prefix under the radicand, checked by
exact comparison.  Squaring the truncations back recovers not the
radicand but the nines-tail member of its class whenever no terminating
decimal squares to it exactly; the last-nonzero-digit test delivers
that impossibility as a one-line certificate.
"""
from __future__ import annotations

import itertools
import math
from fractions import Fraction
from typing import Iterator, Optional

from .config import Budgets, DEFAULT_BUDGETS
from .decimal_core import (
    Decimal,
    LazyDecimal,
    PeriodicDecimal,
    TerminatingDecimal,
    ZERO,
    as_fraction,
    periodic_from_parts,
    terminating_from_fraction,
    value_key,
)
from .errors import BoundsTooLarge, NegativeInput, NonpositiveInput
from .exact_ring import add_t, last_nonzero_digit, mul_t
from .limits import ApproxSequence, formal_limit_monotone
from .ordering import RealClass
from .real_ops import _member_from_below

__all__ = [
    "SqrtStream",
    "sqrt_stream",
    "square_of_truncations",
    "residue_obstruction",
    "exhaustive_square_search",
    "rational_sqrt_of_terminating",
]


class SqrtStream(LazyDecimal):
    """Lazy square-root digits; keeps its radicand for exact follow-ups."""

    __slots__ = ("radicand",)

    def __init__(self, sign, msd_index, digits, radicand):
        super().__init__(sign, msd_index, digits, label="sqrt")
        self.radicand = radicand


def _prefix_square_le(prefix_scaled: int, scale: int, target: Fraction,
                      target_nines: bool) -> bool:
    """(prefix_scaled * 10**-scale)**2 <= target, in the decimal order.

    A terminating square can never equal a nines-tail decimal, so when
    the values tie the nines flag decides.
    """
    lhs = prefix_scaled * prefix_scaled * target.denominator
    rhs = target.numerator * 10 ** (2 * scale)
    if lhs != rhs:
        return lhs < rhs
    return not target_nines


def sqrt_stream(c: Decimal) -> Decimal:
    """The nonnegative decimal whose square class is [c], digit by digit.

    c must be exact (terminating or periodic) and nonnegative.  The
    result is the supremum of {e in T0 : e*e <= c}; for a perfect square
    the stream ends in zeros, otherwise it never becomes periodic.
    """
    if not c.finitely_represented:
        from .errors import NotFinitelyRepresented

        raise NotFinitelyRepresented("square root needs an exact radicand")
    if c.sign < 0:
        raise NegativeInput("square root of a negative decimal")
    if c.is_zero:
        return ZERO
    target, nines = value_key(c)

    # leading digit position: the largest k with (10**k)**2 <= c
    k = (c.msd_index // 2) + 1
    while not _prefix_square_le(1, -k, target, nines):
        k -= 1

    def digits() -> Iterator[int]:
        prefix = 0
        position = k
        while True:
            scale = -position
            base = prefix * 10
            d = 9
            while d > 0 and not _prefix_square_le(base + d, scale, target, nines):
                d -= 1
            prefix = base + d
            yield d
            position -= 1

    return SqrtStream(1, k, digits(), radicand=c)


def rational_sqrt_of_terminating(v: Fraction) -> Optional[Fraction]:
    """The terminating decimal r with r*r == v, as a fraction, if any."""
    if v < 0:
        return None
    if v == 0:
        return Fraction(0)
    num = math.isqrt(v.numerator)
    den = math.isqrt(v.denominator)
    if num * num != v.numerator or den * den != v.denominator:
        return None
    root = Fraction(num, den)
    d = root.denominator
    while d % 2 == 0:
        d //= 2
    while d % 5 == 0:
        d //= 5
    return root if d == 1 else None


def square_of_truncations(d: Decimal, *,
                          budgets: Budgets = DEFAULT_BUDGETS) -> Decimal:
    """flim of (d|n)**2 for d >= 0.

    For a terminating d the terms become constant at d*d.  Otherwise the
    squares climb without attaining their bound, so the limit is the
    member of the square's class reached from below: squaring the root
    of 2 digit by digit approaches 1.999... and never 2.  For a square
    root stream the strict bound is certified by the radicand having no
    terminating root; opaque lazy streams fall back to plain monotone
    emission and may stall.
    """
    if d.sign < 0:
        raise NegativeInput("square of truncations is defined for d >= 0")
    if d.is_zero:
        return ZERO
    if d.finitely_represented:
        v = as_fraction(d)
        from .decimal_core import classify_tail, TailClass

        if classify_tail(d, budget=1) is TailClass.ZEROS:
            return terminating_from_fraction(v * v)
        return _member_from_below(v * v)

    seq = ApproxSequence(
        term=lambda n: mul_t(d.truncate(n), d.truncate(n)),
        modulus=lambda k: k + max(d.msd_index + 1, 0) + 2,
    )
    if isinstance(d, SqrtStream):
        target, _ = value_key(d.radicand)
        root = rational_sqrt_of_terminating(target)
        if root is not None:
            return terminating_from_fraction(target)
        # terms (d|n)^2 stay strictly below the radicand's value
        ceil_int = -((-target.numerator) // target.denominator)
        bound = (
            terminating_from_fraction(target)
            if target.denominator == 1 or _is_grid(target)
            else TerminatingDecimal.from_scaled(ceil_int, 0)
        )
        return formal_limit_monotone(
            seq, "nondecreasing", bound, bound_is_strict=True, budgets=budgets
        )
    head = add_t(d.truncate(1), TerminatingDecimal(1, -1, (1,)))
    return formal_limit_monotone(
        seq, "nondecreasing", mul_t(head, head), bound_is_strict=True,
        budgets=budgets,
    )


def _is_grid(v: Fraction) -> bool:
    from .decimal_core import _ten_smooth_exponent

    return _ten_smooth_exponent(v.denominator) is not None


def residue_obstruction(c: Decimal) -> bool:
    """True when x*x = [c] is unsolvable among periodic reals.

    The certificate: the last nonzero digit of a square of a terminating
    decimal is 1, 4, 5, 6 or 9, so a positive terminating c ending in
    2, 3, 7 or 8 is no square, and scaling by nines-zeros integers
    extends that to every ultimately periodic candidate.
    """
    from .decimal_core import as_terminating

    t = as_terminating(c)
    if t.sign <= 0:
        raise NonpositiveInput("the certificate applies to positive inputs")
    return last_nonzero_digit(t) in {2, 3, 7, 8}


def _primitive_word(rep: tuple[int, ...]) -> bool:
    n = len(rep)
    return all(not (n % d == 0 and rep[:d] * (n // d) == rep)
               for d in range(1, n))


def exhaustive_square_search(
    target: RealClass,
    max_int_digits: int,
    max_preperiod: int,
    max_period: int,
    *,
    ceiling: int = 10_000_000,
) -> list[Decimal]:
    """All canonical periodic decimals x >= 0 within bounds with [x*x] = target.

    Enumerates canonical forms only (primitive repetend, minimal
    preperiod) including both members of jump values, so a perfect
    square target reports its terminating root and the nines-tail twin.
    Returns the witnesses; an empty list means no solution in range.
    Negative mirrors are omitted: x and -x square identically.
    """
    pre_count = sum(10**l for l in range(0, max_preperiod + 1))
    rep_count = sum(10**l for l in range(1, max_period + 1))
    if 10**max_int_digits * pre_count * rep_count > ceiling:
        raise BoundsTooLarge("candidate space exceeds the search ceiling")
    tv = target.value()
    witnesses: list[Decimal] = []
    digit_range = range(10)
    for ival in range(10**max_int_digits):
        ints = _int_tuple(ival)
        for plen in range(max_preperiod + 1):
            for pre in itertools.product(digit_range, repeat=plen):
                for rlen in range(1, max_period + 1):
                    rep_base = 10**rlen - 1
                    for rep in itertools.product(digit_range, repeat=rlen):
                        if pre and pre[-1] == rep[-1]:
                            continue  # preperiod not minimal
                        if not _primitive_word(rep):
                            continue
                        rval = 0
                        for dd in rep:
                            rval = rval * 10 + dd
                        pval = 0
                        for dd in pre:
                            pval = pval * 10 + dd
                        value = (
                            Fraction(ival)
                            + Fraction(pval, 10**plen)
                            + Fraction(rval, rep_base * 10**plen)
                        )
                        if value * value == tv:
                            witnesses.append(
                                periodic_from_parts(1, ints, pre, rep)
                                if value
                                else ZERO
                            )
    return witnesses


def _int_tuple(n: int) -> tuple[int, ...]:
    return tuple(int(ch) for ch in str(n)) if n else ()
