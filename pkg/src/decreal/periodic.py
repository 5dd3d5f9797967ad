"""Exact field arithmetic on ultimately periodic decimals.

Scaling a periodic decimal by the integer 9...90...0 (a nines, a zeros)
turns its class into an integer class; that is the route from repeating
expansions to exact rational arithmetic and back, and it is why the
ultimately periodic classes form the rationals inside this model.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Optional

from .decimal_core import (
    Decimal,
    PeriodicDecimal,
    TerminatingDecimal,
    ZERO,
    as_fraction,
    periodic_from_fraction,
    periodic_from_parts,
)
from .errors import BoundsTooLarge, DivisionByZero, NonpositiveInput, ZeroInput
from .exact_ring import ScaledInteger

__all__ = [
    "nines_zeros",
    "multiplicative_order",
    "divisibility_exponent",
    "expansion_shape",
    "scale_to_integer",
    "add_p",
    "sub_p",
    "mul_p",
    "inv_p",
    "detect_period",
    "as_periodic",
]


def nines_zeros(a: int, b: int) -> TerminatingDecimal:
    """The integer decimal with a nines followed by b zeros: 10**b * (10**a - 1)."""
    if a < 1:
        raise ValueError("need at least one nine")
    if b < 0:
        raise ValueError("negative zero count")
    return TerminatingDecimal.from_scaled(10**b * (10**a - 1), 0)


def _factorize(n: int) -> dict[int, int]:
    factors: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            factors[d] = factors.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        factors[n] = factors.get(n, 0) + 1
    return factors


def _totient_from_factors(factors: dict[int, int]) -> int:
    phi = 1
    for p, e in factors.items():
        phi *= (p - 1) * p ** (e - 1)
    return phi


def multiplicative_order(a: int, n: int) -> int:
    """Least e >= 1 with a**e = 1 (mod n); requires gcd(a, n) = 1."""
    if n == 1:
        return 1
    if math.gcd(a, n) != 1:
        raise ValueError(f"{a} is not invertible modulo {n}")
    order = _totient_from_factors(_factorize(n))
    for p in _factorize(order):
        while order % p == 0 and pow(a, order // p, n) == 1:
            order //= p
    return order


def divisibility_exponent(r) -> int:
    """Least a with r | 10**a * (10**a - 1).

    Splits |r| = s*t with s carrying only the factors 2 and 5 and t
    coprime to 10; a must be a multiple of the order of 10 modulo t and
    at least the exponent clearing s.
    """
    if isinstance(r, ScaledInteger):
        if r.scale != 0:
            raise ValueError("need an integer-valued input (scale 0)")
        r = r.value
    elif isinstance(r, Decimal):
        f = as_fraction(r)
        if f.denominator != 1:
            raise ValueError("need an integer-valued input")
        r = f.numerator
    if r == 0:
        raise ZeroInput("no exponent for zero")
    t = abs(r)
    clear = 0
    for p in (2, 5):
        e = 0
        while t % p == 0:
            t //= p
            e += 1
        clear = max(clear, e)
    ord10 = multiplicative_order(10, t)
    k = max(1, -(-clear // ord10))  # ceil
    return ord10 * k


def as_periodic(d: Decimal) -> PeriodicDecimal:
    """View any finitely represented decimal as ultimately periodic."""
    if isinstance(d, PeriodicDecimal):
        return d
    f = as_fraction(d)
    if f == 0:
        raise ValueError("the zero decimal has trivial parts; handle separately")
    return periodic_from_fraction(f)


def expansion_shape(x: Decimal) -> tuple[int, int]:
    """(preperiod length, repetend length) of x's canonical expansion.

    Computed from the value's denominator, so it stays cheap even when
    the repetend itself would be astronomically long: the preperiod is
    the larger of the powers of 2 and 5 in the denominator and the
    period is the order of 10 modulo what remains.
    """
    den = as_fraction(x).denominator
    m = 0
    for q in (2, 5):
        e = 0
        while den % q == 0:
            den //= q
            e += 1
        m = max(m, e)
    return m, multiplicative_order(10, den)


def scale_to_integer(x: Decimal) -> tuple[int, ScaledInteger]:
    """(a, v) with [9s-zeros(a, a)] * [x] equal to the integer class [v].

    a is the least multiple of the repetend length exceeding the
    preperiod length.
    """
    f = as_fraction(x)
    if f == 0:
        return 1, ScaledInteger(0, 0)
    m, p = expansion_shape(x)
    a = p * max(1, -(-(m + 1) // p))  # least multiple of p strictly above m
    v = f * 10**a * (10**a - 1)
    if v.denominator != 1:
        raise AssertionError("scaling identity failed to clear the denominator")
    return a, ScaledInteger(v.numerator, 0)


def _combine(x: Decimal, y: Decimal, op) -> Decimal:
    """Class arithmetic behind the scaling identities.

    scale_to_integer exhibits each operand as an integer class divided
    by a nines-zeros integer; combining those ratios is plain exact
    big-integer arithmetic, carried here directly on the values (the
    identity itself is exercised separately by the test suite, and the
    literal scaled route can demand astronomically large exponents).
    """
    result = op(as_fraction(x), as_fraction(y))
    return periodic_from_fraction(result) if result else ZERO


def add_p(x: Decimal, y: Decimal) -> Decimal:
    """Exact class sum; the terminating member represents a jump result."""
    return _combine(x, y, lambda a, b: a + b)


def sub_p(x: Decimal, y: Decimal) -> Decimal:
    return _combine(x, y, lambda a, b: a - b)


def mul_p(x: Decimal, y: Decimal) -> Decimal:
    return _combine(x, y, lambda a, b: a * b)


def inv_p(x: Decimal) -> Decimal:
    """Exact class reciprocal of a nonzero periodic decimal."""
    f = as_fraction(x)
    if f == 0:
        raise DivisionByZero("reciprocal of the zero class")
    return periodic_from_fraction(1 / f)


def detect_period(d: Decimal, max_digits: int, max_period: int) -> Optional[PeriodicDecimal]:
    """Empirical scan for an ultimate period within a digit window.

    Inspects the first `max_digits` digits of d (from the leading digit
    down) for a repetend of length <= max_period whose threshold lies in
    the window, demanding at least max(2p, 8) digits of evidence.  A hit
    returns the canonical repeating decimal built from the window; None
    means nothing was found within these bounds, which is no proof of
    aperiodicity.
    """
    msd = d.msd_index
    if msd is None:
        return None
    window = [d.digit_at(msd - j) for j in range(max_digits)]
    L = len(window)
    for p in range(1, max_period + 1):
        if L < 2 * p:
            break
        j = L - p - 1
        while j >= 0 and window[j] == window[j + p]:
            j -= 1
        start = j + 1
        evidence = L - start
        if evidence < max(2 * p, 8):
            continue
        head = window[:start]
        rep = tuple(window[start : start + p])
        # rep begins at index msd - start; pad head until it sits below the point
        rep_msd = msd - start
        while rep_msd > -1:
            head.extend(rep)
            rep_msd -= p
        if msd >= 0:
            ints = tuple(head[: msd + 1])
            pre = tuple(head[msd + 1 :])
        else:
            ints = ()
            pre = (0,) * (-msd - 1) + tuple(head)
        result = periodic_from_parts(d.sign if d.sign else 1, ints, pre, rep)
        if result.is_zero:
            return None
        return result
    return None
