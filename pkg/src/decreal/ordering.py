"""Lexicographic order on decimals, jumps, and real numbers as classes.

The order is digitwise comparison adjusted for signs.  Pairs with no
decimal strictly between them ("jumps") always consist of a nines-tail
decimal and a terminating one sharing the same rational value; the
equivalence identifying the two members makes the real numbers.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional

from .config import DEFAULT_BUDGETS
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
from .decimal_core import _ten_smooth_exponent  # internal but stable
from .errors import NotFinitelyRepresented

__all__ = [
    "Ordering",
    "compare",
    "lex_compare_exact",
    "is_jump",
    "jump_partner",
    "equivalent",
    "RealClass",
    "real_class",
    "class_from_fraction",
    "compare_class",
    "supremum_finite",
    "strictly_between",
    "class_strictly_between",
]


class Ordering(Enum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


def _from_int(c: int) -> Ordering:
    return Ordering.LESS if c < 0 else Ordering.GREATER if c > 0 else Ordering.EQUAL


def _compare_exact(c: Decimal, d: Decimal) -> Ordering:
    fc, nc = value_key(c)
    fd, nd = value_key(d)
    if fc != fd:
        return _from_int(-1 if fc < fd else 1)
    if nc == nd:
        return Ordering.EQUAL
    # same value, one nines tail: the nines member is closer to zero
    if fc > 0:
        return Ordering.LESS if nc else Ordering.GREATER
    return Ordering.GREATER if nc else Ordering.LESS


def compare(c: Decimal, d: Decimal, budget: Optional[int] = None) -> Optional[Ordering]:
    """Order two decimals; None when a lazy scan exhausts its budget.

    Finitely represented pairs are decided exactly.  With a lazy operand
    the digits are scanned from the top; equality of opaque streams is
    semi-decidable, so agreement through the whole budget yields None.
    """
    if c.finitely_represented and d.finitely_represented:
        return _compare_exact(c, d)
    budget = DEFAULT_BUDGETS.compare_scan if budget is None else budget
    sc, sd = c.sign, d.sign
    if sc != sd:
        return _from_int(sc - sd)
    if sc == 0:
        return Ordering.EQUAL
    mc, md = c.msd_index, d.msd_index
    if mc != md:
        bigger_magnitude = 1 if mc > md else -1
        return _from_int(sc * bigger_magnitude)
    for i in range(mc, mc - budget, -1):
        ci, di = c.digit_at(i), d.digit_at(i)
        if ci != di:
            return _from_int(sc * (ci - di))
    return None


def lex_compare_exact(c: Decimal, d: Decimal) -> Ordering:
    """Digit-scan comparison of two finitely represented decimals.

    Independent of the rational shortcut in `compare`: scans one joint
    period past both preperiods, which decides equality of ultimately
    periodic digit strings.
    """
    if not (c.finitely_represented and d.finitely_represented):
        raise NotFinitelyRepresented("lexicographic scan needs finite forms")
    sc, sd = c.sign, d.sign
    if sc != sd:
        return _from_int(sc - sd)
    if sc == 0:
        return Ordering.EQUAL
    mc, md = c.msd_index, d.msd_index
    if mc != md:
        return _from_int(sc * (1 if mc > md else -1))

    def tail_shape(x):
        if isinstance(x, TerminatingDecimal):
            return max(0, -(x.lsd_index or 0)), 1
        return len(x.preperiod), len(x.repetend)

    pre_c, per_c = tail_shape(c)
    pre_d, per_d = tail_shape(d)
    lcm = per_c * per_d // math.gcd(per_c, per_d)
    low = -(max(pre_c, pre_d) + lcm + 1)
    for i in range(mc, low - 1, -1):
        ci, di = c.digit_at(i), d.digit_at(i)
        if ci != di:
            return _from_int(sc * (ci - di))
    return Ordering.EQUAL


def jump_partner(d: Decimal) -> Optional[Decimal]:
    """The other member of d's jump; None for zero and non-jump decimals."""
    if not d.finitely_represented:
        raise NotFinitelyRepresented("jump membership needs a finite form")
    f, nines = value_key(d)
    if f == 0:
        return None
    if nines:
        return terminating_from_fraction(f)
    if _ten_smooth_exponent(f.denominator) is None:
        return None
    return periodic_from_fraction(f, nines=True)


def is_jump(c: Decimal, d: Decimal) -> bool:
    """True when c < d and no decimal lies strictly between them."""
    if not (c.finitely_represented and d.finitely_represented):
        raise NotFinitelyRepresented("jump test needs finite forms")
    fc, nc = value_key(c)
    fd, nd = value_key(d)
    return fc == fd and fc != 0 and nc != nd and _compare_exact(c, d) is Ordering.LESS


def equivalent(c: Decimal, d: Decimal) -> bool:
    """c ~ d: equal, or the two members of one jump."""
    if not (c.finitely_represented and d.finitely_represented):
        raise NotFinitelyRepresented("equivalence needs finite forms")
    return as_fraction(c) == as_fraction(d)


@dataclass(frozen=True, eq=False)
class RealClass:
    """A real number: one decimal, or the two members of a jump.

    Lazy decimals are carried as unresolved singletons; their jump
    membership is only decidable by enclosure refinement.
    """

    members: tuple[Decimal, ...]
    resolved: bool = True

    @property
    def is_jump_pair(self) -> bool:
        return len(self.members) == 2

    @property
    def representative(self) -> Decimal:
        """The terminating member of a jump pair, else the only member."""
        if len(self.members) == 1:
            return self.members[0]
        for m in self.members:
            _, nines = value_key(m)
            if not nines:
                return m
        return self.members[0]

    def value(self) -> Fraction:
        if not self.resolved:
            raise NotFinitelyRepresented("unresolved class has no exact value")
        return as_fraction(self.members[0])

    @property
    def is_zero(self) -> bool:
        return self.resolved and self.value() == 0

    def __eq__(self, other):
        if not isinstance(other, RealClass):
            return NotImplemented
        if self.resolved and other.resolved:
            return self.value() == other.value()
        return self is other

    def __hash__(self):
        if self.resolved:
            return hash(self.value())
        return id(self)

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"<RealClass {self}>"

    def render(self, style: str = "parens", digits: int = 24) -> str:
        """Singletons render plainly; jump pairs as {smaller, larger}."""
        from .decimal_core import digits_string

        def one(m):
            if style == "ellipsis" and isinstance(m, PeriodicDecimal):
                if m.repetend != (0,):
                    pre = len(m.preperiod)
                    reps = max(3, pre + 2 * len(m.repetend) + 1)
                    return digits_string(m, reps + 1) + "..."
            if m.finitely_represented:
                return str(m)
            return digits_string(m, digits) + "..."

        if len(self.members) == 1:
            return one(self.members[0])
        return "{" + ", ".join(one(m) for m in self.members) + "}"

    # arithmetic conveniences (single semantics: class arithmetic)
    def __add__(self, other):
        from .real_ops import add

        return add(self, other)

    def __sub__(self, other):
        from .real_ops import sub

        return sub(self, other)

    def __mul__(self, other):
        from .real_ops import mul

        return mul(self, other)

    def __neg__(self):
        from .real_ops import neg

        return neg(self)


def real_class(d: Decimal) -> RealClass:
    """The equivalence class of d (unresolved singleton for lazy d)."""
    if d.is_zero:
        return RealClass((ZERO,))
    if not d.finitely_represented:
        return RealClass((d,), resolved=False)
    partner = jump_partner(d)
    if partner is None:
        return RealClass((d,))
    pair = (d, partner) if _compare_exact(d, partner) is Ordering.LESS else (partner, d)
    return RealClass(pair)


def class_from_fraction(v: Fraction) -> RealClass:
    """The class with rational value v."""
    return real_class(periodic_from_fraction(v)) if v else RealClass((ZERO,))


def compare_class(a: RealClass, b: RealClass) -> Ordering:
    """Total order on real numbers: compare any members."""
    va, vb = a.value(), b.value()
    return _from_int(-1 if va < vb else (1 if va > vb else 0))


def supremum_finite(elements) -> Decimal:
    """Least upper bound of a nonempty finite set of decimals.

    Constructed greedily digit by digit from the top (maximizing each
    digit among the still-maximal members), which for a finite set is
    its maximum.
    """
    items = list(elements)
    if not items:
        raise ValueError("supremum of an empty set")
    if any(not x.finitely_represented for x in items):
        raise NotFinitelyRepresented("supremum needs finite forms")
    positives = [x for x in items if x.sign > 0]
    if positives:
        return _greedy_max_positive(positives)
    if any(x.is_zero for x in items):
        return ZERO
    # all negative: sup = -(digitwise minimum of the magnitudes)
    return -_greedy_min_positive([-x for x in items])


def _all_equal(items) -> bool:
    first = value_key(items[0])
    return all(value_key(x) == first for x in items[1:])


def _greedy_extremum(items, pick):
    k = max(x.msd_index for x in items)
    survivors = items
    i = k
    while not _all_equal(survivors):
        best = pick(x.digit_at(i) for x in survivors)
        survivors = [x for x in survivors if x.digit_at(i) == best]
        i -= 1
    return survivors[0]


def _greedy_max_positive(items):
    return _greedy_extremum(items, max)


def _greedy_min_positive(items):
    return _greedy_extremum(items, min)


def _tail_constant(d: Decimal, below: int, digit: int) -> bool:
    """True when every digit of d at indices < below equals `digit`."""
    if isinstance(d, TerminatingDecimal):
        if digit != 0:
            return False
        lsd = d.lsd_index
        return lsd is None or below <= lsd
    pre = len(d.preperiod)
    per = len(d.repetend)
    low = min(below - 1, -(pre + 1)) - per
    return all(d.digit_at(i) == digit for i in range(below - 1, low - 1, -1))


def strictly_between(c: Decimal, d: Decimal) -> Optional[Decimal]:
    """A decimal e with c < e < d, or None exactly when (c, d) is a jump."""
    if not (c.finitely_represented and d.finitely_represented):
        raise NotFinitelyRepresented("betweenness needs finite forms")
    if _compare_exact(c, d) is not Ordering.LESS:
        raise ValueError("need c < d")
    sc, sd = c.sign, d.sign
    if sc < 0 and sd > 0:
        return ZERO
    if sc < 0 and sd == 0:
        return -TerminatingDecimal(1, c.msd_index - 1, (1,))
    if sc == 0 and sd > 0:
        return TerminatingDecimal(1, d.msd_index - 1, (1,))
    if sc < 0:
        e = strictly_between(-d, -c)
        return None if e is None else -e

    # both positive: find the first differing index
    top = max(c.msd_index, d.msd_index)
    i = top
    while c.digit_at(i) == d.digit_at(i):
        i -= 1
    m = i
    cm, dm = c.digit_at(m), d.digit_at(m)
    prefix = [d.digit_at(j) for j in range(top, m, -1)]
    if dm - cm >= 2:
        from .decimal_core import _terminating_from_digits

        return _terminating_from_digits(1, top, prefix + [cm + 1])
    # adjacent digits at m: squeeze into one of the tails
    if not _tail_constant(c, m, 9):
        j = m - 1
        while c.digit_at(j) == 9:
            j -= 1
        digits = prefix + [cm] + [c.digit_at(t) for t in range(m - 1, j, -1)]
        digits.append(c.digit_at(j) + 1)
        from .decimal_core import _terminating_from_digits

        return _terminating_from_digits(1, top, digits)
    if not _tail_constant(d, m, 0):
        j = m - 1
        while d.digit_at(j) == 0:
            j -= 1
        digits = prefix + [dm] + [d.digit_at(t) for t in range(m - 1, j, -1)]
        digits.append(d.digit_at(j) - 1)
        from .decimal_core import _terminating_from_digits

        return _terminating_from_digits(1, top, digits)
    return None  # 9-tail against 0-tail with a digit step of 1: a jump


def class_strictly_between(a: RealClass, b: RealClass) -> RealClass:
    """A class strictly between two distinct classes (density of the order)."""
    if compare_class(a, b) is not Ordering.LESS:
        raise ValueError("need a < b")
    lo, hi = a.representative, b.representative
    e = strictly_between(lo, hi)
    if e is None:
        raise AssertionError("distinct classes separated by a jump")
    if equivalent(e, lo):
        e2 = strictly_between(e, hi)
        if e2 is not None and equivalent(e2, hi):
            e3 = strictly_between(e, e2)
            return real_class(e3)
        return real_class(e2)
    if equivalent(e, hi):
        e2 = strictly_between(lo, e)
        if e2 is not None and equivalent(e2, lo):
            e3 = strictly_between(e2, e)
            return real_class(e3)
        return real_class(e2)
    return real_class(e)
