"""Arithmetic on real numbers (jump classes) and on raw decimals.

Class operations are hybrid limits of truncation arithmetic.  Two
backends sit behind one interface: finitely represented operands go
through the exact periodic field, lazy streams through budgeted
enclosures.  The decimal-level operations (formal_add, formal_mul) are
digitwise limits; formal addition is famously not associative, and the
member a formal operation picks out of a jump class depends on whether
its truncation sequence climbs into the value or falls onto it.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional

from .config import Budgets, DEFAULT_BUDGETS
from .decimal_core import (
    Decimal,
    PeriodicDecimal,
    TerminatingDecimal,
    ZERO,
    as_fraction,
    periodic_from_fraction,
    terminating_from_fraction,
    value_key,
)
from .decimal_core import _ten_smooth_exponent
from .errors import (
    BudgetExhausted,
    DivisionByZero,
    JumpUnresolvedWithinBudget,
    NotFinitelyRepresented,
)
from .exact_ring import add_t, mul_t, sub_t
from .limits import ApproxSequence, BracketPair, formal_limit_bracketed, \
    formal_limit_monotone, hybrid_limit
from .ordering import RealClass, class_from_fraction, real_class

__all__ = [
    "add",
    "sub",
    "mul",
    "neg",
    "reciprocal",
    "formal_add",
    "formal_mul",
    "truncation_sum_sequence",
    "truncation_product_sequence",
    "LongDivisionState",
    "long_division_states",
    "reciprocal_stream",
]


# -- sequences of truncation arithmetic --------------------------------------


def _magnitude_exponent(d: Decimal) -> int:
    """E with |d| < 10**E."""
    msd = d.msd_index
    return 0 if msd is None else msd + 1


def truncation_sum_sequence(c: Decimal, d: Decimal) -> ApproxSequence:
    """term(n) = c|n + d|n, with its Cauchy modulus."""
    return ApproxSequence(
        term=lambda n: add_t(c.truncate(n), d.truncate(n)),
        modulus=lambda k: k + 1,
    )


def truncation_product_sequence(c: Decimal, d: Decimal) -> ApproxSequence:
    """term(n) = c|n * d|n, with a Cauchy modulus from magnitude bounds."""
    slack = max(_magnitude_exponent(c), _magnitude_exponent(d), 0) + 2
    return ApproxSequence(
        term=lambda n: mul_t(c.truncate(n), d.truncate(n)),
        modulus=lambda k: k + slack,
    )


# -- class arithmetic ---------------------------------------------------------


def _exact(cls: RealClass) -> bool:
    return cls.resolved


def add(alpha: RealClass, beta: RealClass, *,
        budgets: Budgets = DEFAULT_BUDGETS) -> RealClass:
    """Class sum: the hybrid limit of truncation sums.

    Exact for resolved operands; a lazy operand goes through budgeted
    enclosures and can raise JumpUnresolvedWithinBudget.
    """
    if _exact(alpha) and _exact(beta):
        return class_from_fraction(alpha.value() + beta.value())
    seq = truncation_sum_sequence(alpha.representative, beta.representative)
    return hybrid_limit(seq, strict=True, budgets=budgets)


def mul(alpha: RealClass, beta: RealClass, *,
        budgets: Budgets = DEFAULT_BUDGETS) -> RealClass:
    """Class product: the hybrid limit of truncation products."""
    if _exact(alpha) and _exact(beta):
        return class_from_fraction(alpha.value() * beta.value())
    seq = truncation_product_sequence(alpha.representative, beta.representative)
    return hybrid_limit(seq, strict=True, budgets=budgets)


def neg(alpha: RealClass) -> RealClass:
    """Additive inverse: negate any member."""
    return real_class(-alpha.members[0]) if alpha.members[0] is not ZERO else alpha


def sub(alpha: RealClass, beta: RealClass, *,
        budgets: Budgets = DEFAULT_BUDGETS) -> RealClass:
    return add(alpha, neg(beta), budgets=budgets)


def reciprocal(alpha: RealClass, *,
               budgets: Budgets = DEFAULT_BUDGETS) -> RealClass:
    """Multiplicative inverse of a nonzero class."""
    if _exact(alpha):
        v = alpha.value()
        if v == 0:
            raise DivisionByZero("reciprocal of [0]")
        return class_from_fraction(1 / v)
    stream = alpha.representative
    seq, _ = _long_division_sequence(stream, budgets)
    return hybrid_limit(seq, strict=True, budgets=budgets)


# -- the long-division reciprocal ---------------------------------------------


@dataclass(frozen=True)
class LongDivisionState:
    """One step of the reciprocal construction: 1 = c|n * d(n) + e(n)."""

    n: int
    divisor_truncation: TerminatingDecimal
    quotient_term: TerminatingDecimal
    remainder_term: TerminatingDecimal

    def holds_exactly(self) -> bool:
        cn = self.divisor_truncation.as_fraction()
        dn = self.quotient_term.as_fraction()
        en = self.remainder_term.as_fraction()
        return cn * dn + en == 1 and 0 <= en < Fraction(1, 10**self.n)


def _division_step(c: Decimal, n: int) -> LongDivisionState:
    """Integer-divide a power of ten by the scaled truncation of c > 0."""
    cn = c.truncate(n)
    scaled = cn.scaled_value(n)  # 10^n * c|n, a positive integer
    if scaled <= 0:
        raise DivisionByZero(f"truncation c|{n} vanished")
    N = n + len(str(scaled))  # least N with 10^(N-n) > 10^n * c|n
    d, e = divmod(10**N, scaled)
    return LongDivisionState(
        n=n,
        divisor_truncation=cn,
        quotient_term=TerminatingDecimal.from_scaled(d, N - n),
        remainder_term=TerminatingDecimal.from_scaled(e, N),
    )


def long_division_states(c: Decimal) -> Iterator[LongDivisionState]:
    """The reciprocal algorithm's successive states for a positive decimal."""
    if c.sign <= 0:
        raise ValueError("long division runs on a positive decimal")
    n = 1
    while True:
        yield _division_step(c, n)
        n += 1


def _long_division_sequence(c: Decimal, budgets: Budgets):
    """Quotient terms of 1/|c| as an ApproxSequence, with c's sign.

    The Cauchy modulus follows the divisor's lower bound 10**k <= c|n:
    |d(m) - d(n)| < 2*10**(-n-k) + 10**(-n-2k).
    """
    sign = c.sign
    if sign == 0:
        raise DivisionByZero("reciprocal of zero")
    mag = abs(c) if c.finitely_represented else (-c if sign < 0 else c)
    n0 = 1
    while mag.truncate(n0).is_zero:
        n0 += 1
        if n0 > budgets.enclosure_depth:
            raise JumpUnresolvedWithinBudget(ZERO, budgets.enclosure_depth)
    lower = mag.truncate(n0)
    k = lower.msd_index  # 10^k <= c|n for every n >= n0

    def term(n: int) -> TerminatingDecimal:
        step = _division_step(mag, max(n, n0))
        q = step.quotient_term
        return q if sign > 0 else -q

    def modulus(p: int) -> int:
        return max(n0, p + 1 - min(k, 2 * k))

    return ApproxSequence(term, modulus), k


def reciprocal_stream(c: Decimal, *, budgets: Budgets = DEFAULT_BUDGETS) -> Decimal:
    """1/c as a lazy decimal driven by the long-division quotients."""
    seq, _ = _long_division_sequence(c, budgets)
    result = hybrid_limit(seq, budgets=budgets)
    return result.members[0] if not result.is_jump_pair else result.representative


# -- formal (digitwise) operations on decimals --------------------------------


def _member_from_below(v: Fraction) -> Decimal:
    """The decimal that truncation sequences increasing to v converge to."""
    if v == 0:
        return ZERO
    if v > 0 and _ten_smooth_exponent(v.denominator) is not None:
        return periodic_from_fraction(v, nines=True)
    return periodic_from_fraction(v)


def _member_from_above(v: Fraction) -> Decimal:
    if v == 0:
        return ZERO
    if v < 0 and _ten_smooth_exponent(v.denominator) is not None:
        return periodic_from_fraction(v, nines=True)
    return periodic_from_fraction(v)


def _is_t0(d: Decimal) -> bool:
    from .decimal_core import classify_tail, TailClass

    return classify_tail(d, budget=1) is TailClass.ZEROS


def _first_tail_difference(c: Decimal, d: Decimal, below: int,
                           limit: Optional[int]) -> Optional[int]:
    """First index i < -below with c_i != d_i, scanning at most `limit` digits.

    Returns None when the scan window shows identical digits; for a pair
    of finitely represented decimals the window is chosen so that None
    proves the tails identical.
    """
    if limit is None:
        pre_c, per_c = _tail_shape(c)
        pre_d, per_d = _tail_shape(d)
        import math

        joint = per_c * per_d // math.gcd(per_c, per_d)
        limit = max(pre_c, pre_d, below) + joint + 1 - below
    for i in range(-below - 1, -below - 1 - limit, -1):
        if c.digit_at(i) != d.digit_at(i):
            return i
    return None


def _tail_shape(d: Decimal) -> tuple[int, int]:
    if isinstance(d, TerminatingDecimal):
        return d.frac_len, 1
    if isinstance(d, PeriodicDecimal):
        return len(d.preperiod), len(d.repetend)
    raise NotFinitelyRepresented("tail shape of a lazy stream")


def formal_add(c: Decimal, d: Decimal, *,
               budgets: Budgets = DEFAULT_BUDGETS) -> Decimal:
    """flim of c|n + d|n: digitwise addition of decimals.

    Exact on finitely represented operands.  Associative only up to the
    jump equivalence; the classic counterexamples are reproduced by the
    test suite.  Lazy operands use the monotone engine (same signs) or
    strict bracket pairs (opposite signs) and may exhaust their budget.
    """
    if c.is_zero:
        return d
    if d.is_zero:
        return c
    both_exact = c.finitely_represented and d.finitely_represented
    if c.sign == d.sign:
        if both_exact:
            v = as_fraction(c) + as_fraction(d)
            if _is_t0(c) and _is_t0(d):
                return terminating_from_fraction(v)
            return _member_from_below(v) if c.sign > 0 else _member_from_above(v)
        return _lazy_same_sign_add(c, d, budgets)
    # opposite signs: a subtraction of positive decimals
    a, b = (c, -d) if c.sign > 0 else (d, -c)
    result = _formal_sub_positive(a, b, budgets)
    return result


def _lazy_same_sign_add(c: Decimal, d: Decimal, budgets: Budgets) -> Decimal:
    seq = truncation_sum_sequence(c, d)
    direction = "nondecreasing" if c.sign > 0 else "nonincreasing"
    pad = TerminatingDecimal.from_scaled(4 * c.sign, 1)  # covers both tail gaps
    bound = add_t(add_t(c.truncate(1), d.truncate(1)), pad)
    return formal_limit_monotone(seq, direction, bound, budgets=budgets)


def _formal_sub_positive(c: Decimal, d: Decimal, budgets: Budgets) -> Decimal:
    """flim of c|n - d|n for positive c, d.

    When the digits of c and d eventually agree the terms are eventually
    constant.  Otherwise, per refinement level k, the first differing
    digit below index -k decides which side of c|k - d|k the terms
    approach, giving strict width 10**-k brackets.
    """
    both_exact = c.finitely_represented and d.finitely_represented
    if both_exact:
        v = as_fraction(c) - as_fraction(d)
        if v == 0:
            return ZERO
        if _ten_smooth_exponent(v.denominator) is None:
            return periodic_from_fraction(v)
        # jump-valued difference: judge the tail race one level below the
        # difference's digit support, where the bracket has v as an endpoint
        k = terminating_from_fraction(v).frac_len + 1
        i = _first_tail_difference(c, d, k, None)
        if i is None:
            # digits agree below index -k: terms are eventually constant
            return sub_t(c.truncate(k), d.truncate(k))
        base = sub_t(c.truncate(k), d.truncate(k)).as_fraction()
        climbs = c.digit_at(i) > d.digit_at(i)
        # climbs: terms sit in (base, base + 10^-k); falls: (base - 10^-k, base)
        terms_above_v = (climbs and v == base) or (not climbs and v != base)
        return _member_from_above(v) if terms_above_v else _member_from_below(v)

    def term(n: int) -> TerminatingDecimal:
        return sub_t(c.truncate(n), d.truncate(n))

    scan_limit = budgets.compare_scan

    def brackets(k: int) -> BracketPair:
        i = _first_tail_difference(c, d, k, scan_limit)
        base = sub_t(c.truncate(k), d.truncate(k))
        if i is None:
            raise BudgetExhausted(
                f"tails agree for {scan_limit} digits below 10^-{k}; "
                "cannot certify the subtraction bracket"
            )
        if c.digit_at(i) > d.digit_at(i):
            lower, upper = base, add_t(base, TerminatingDecimal(1, -k, (1,)))
        else:
            lower, upper = sub_t(base, TerminatingDecimal(1, -k, (1,))), base
        return BracketPair(k, lower, upper, valid_from=-i)

    seq = ApproxSequence(term, lambda k: k + 1)
    return formal_limit_bracketed(seq, brackets, budgets=budgets)


def formal_mul(c: Decimal, d: Decimal, *,
               budgets: Budgets = DEFAULT_BUDGETS) -> Decimal:
    """flim of c|n * d|n: digitwise multiplication (fully associative)."""
    if c.is_zero or d.is_zero:
        return ZERO
    if c.finitely_represented and d.finitely_represented:
        v = as_fraction(c) * as_fraction(d)
        if _is_t0(c) and _is_t0(d):
            return terminating_from_fraction(v)
        return _member_from_below(v) if v > 0 else _member_from_above(v)
    seq = truncation_product_sequence(c, d)
    sign = c.sign * d.sign
    mag = mul_t(
        add_t(abs_truncate(c, 1), TerminatingDecimal(1, -1, (1,))),
        add_t(abs_truncate(d, 1), TerminatingDecimal(1, -1, (1,))),
    )
    direction = "nondecreasing" if sign > 0 else "nonincreasing"
    bound = mag if sign > 0 else -mag
    return formal_limit_monotone(seq, direction, bound, bound_is_strict=True,
                                 budgets=budgets)


def abs_truncate(c: Decimal, n: int) -> TerminatingDecimal:
    t = c.truncate(n)
    return -t if t.sign < 0 else t
