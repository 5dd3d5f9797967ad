"""Convergence machinery: to-zero checks, hybrid limits, formal limits.

Sequences carry explicit constructive moduli (the bare existential
convergence statements are not effective).  Digit emission works on
exact rational enclosures of the tail: an interval with open or closed
endpoints that is known to contain every late term.  Once the interval
fits inside a single digit cell at level l, the limit's digits above
10**-l are pinned.  Strictness matters: a sequence creeping up to a
terminating bound b from below, never attaining it, has the nines-tail
decimal just under b as its formal limit, and the half-open interval
[t, b) pins exactly those digits.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator, Optional

from .config import Budgets, DEFAULT_BUDGETS
from .decimal_core import (
    Decimal,
    LazyDecimal,
    TerminatingDecimal,
    ZERO,
    terminating_from_fraction,
)
from .errors import (
    BracketViolation,
    ContractViolation,
    JumpUnresolvedWithinBudget,
    MonotonicityViolation,
)
from .ordering import RealClass, real_class

__all__ = [
    "ApproxSequence",
    "BracketPair",
    "tends_to_zero",
    "cauchy_check",
    "hybrid_limit",
    "formal_limit_monotone",
    "formal_limit_bracketed",
]


@dataclass(frozen=True)
class ApproxSequence:
    """A sequence of terminating decimals with a convergence certificate.

    ``modulus(k)`` returns an N past which the stated contract holds with
    the strict bound 10**-k: for kind "cauchy", |term(m) - term(n)| <
    10**-k whenever m, n > N; for kind "to_zero", |term(n)| < 10**-k
    whenever n > N.  The modulus need not be monotone; engines take a
    running maximum.
    """

    term: Callable[[int], TerminatingDecimal]
    modulus: Callable[[int], int]
    kind: str = "cauchy"

    def term_value(self, n: int) -> Fraction:
        return self.term(n).as_fraction()


@dataclass(frozen=True)
class BracketPair:
    """Strict enclosure of a sequence tail at refinement level k.

    lower < term(n) < upper for all n > valid_from, with the pair
    supported on digit indices >= -level and upper - lower = 10**-level.
    """

    level: int
    lower: TerminatingDecimal
    upper: TerminatingDecimal
    valid_from: int

    def __post_init__(self):
        step = Fraction(1, 10**self.level)
        if self.upper.as_fraction() - self.lower.as_fraction() != step:
            raise BracketViolation(
                f"bracket width at level {self.level} is not 10^-{self.level}",
                k=self.level,
            )
        for side in (self.lower, self.upper):
            if side.frac_len > self.level:
                raise BracketViolation(
                    f"bracket endpoint {side} has digits below index -{self.level}",
                    k=self.level,
                )


class _RunningModulus:
    def __init__(self, modulus):
        self._modulus = modulus
        self._best = 0

    def __call__(self, k: int) -> int:
        self._best = max(self._best, self._modulus(k))
        return self._best


def tends_to_zero(s: ApproxSequence, k_max: int) -> bool:
    """Spot-check the to-zero contract for every k <= k_max.

    Samples ten terms past the certified index at each precision; any
    term with a nonzero k-truncation raises ContractViolation.
    """
    if s.kind != "to_zero":
        raise ValueError("sequence does not carry a to-zero modulus")
    mod = _RunningModulus(s.modulus)
    for k in range(1, k_max + 1):
        n0 = mod(k)
        for n in range(n0 + 1, n0 + 11):
            if not abs(s.term(n)).truncate(k).is_zero:
                raise ContractViolation(
                    f"|term({n})| >= 10^-{k} past the certified index", k=k, n=n
                )
    return True


def cauchy_check(s: ApproxSequence, k_max: int) -> bool:
    """Spot-check the Cauchy contract for every k <= k_max."""
    mod = _RunningModulus(s.modulus)
    step = lambda k: Fraction(1, 10**k)
    for k in range(1, k_max + 1):
        n0 = mod(k)
        for n in range(n0 + 1, n0 + 4):
            for dm in (1, 7, 38):
                m = n + dm
                if abs(s.term_value(m) - s.term_value(n)) >= step(k):
                    raise ContractViolation(
                        f"|term({m}) - term({n})| >= 10^-{k}", k=k, m=m, n=n
                    )
    return True


# -- digit cells -------------------------------------------------------------


def _cell_id(v: Fraction, level: int) -> int:
    """Truncation toward zero of v * 10**level (the digit cell index)."""
    return int(v * 10**level)


def _interval_cell(lo, lo_open, hi, hi_open, level) -> Optional[int]:
    """The single digit cell containing the whole interval, else None."""
    tlo = lo * 10**level
    min_id = int(tlo)
    if lo_open and lo < 0 and tlo.denominator == 1:
        min_id += 1
    thi = hi * 10**level
    max_id = int(thi)
    if hi_open and hi > 0 and thi.denominator == 1:
        max_id -= 1
    return min_id if min_id == max_id else None


def _boundary_between(lo, hi, level) -> Fraction:
    """The grid point at `level` separating an unpinned interval's cells."""
    min_id = int(lo * 10**level)
    max_id = int(hi * 10**level)
    g = max_id if max_id > 0 else min_id
    return Fraction(g, 10**level)


def _emit_from_cells(cell_at: Callable[[int], int], budgets: Budgets,
                     label: str = "") -> Decimal:
    """Build a decimal from pinned digit cells, level by level.

    All-zero cells through the zero-probe budget yield the zero decimal
    (the limit is then certified smaller than 10**-zero_probe; exact
    zeroness of an opaque limit is not decidable).
    """
    level = 0
    cell = cell_at(0)
    while cell == 0:
        level += 1
        if level > budgets.zero_probe:
            return ZERO
        cell = cell_at(level)
    sign = 1 if cell > 0 else -1
    first = [int(ch) for ch in str(abs(cell))]
    msd = len(first) - 1 - level

    def gen() -> Iterator[int]:
        yield from first
        prev = abs(cell)
        at = level
        while True:
            at += 1
            nxt = cell_at(at)
            mag = abs(nxt)
            if mag // 10 != prev or (nxt > 0) != (cell > 0):
                raise AssertionError("digit cells refined inconsistently")
            yield mag % 10
            prev = mag

    return LazyDecimal(sign, msd, gen(), label=label)


# -- hybrid limits -----------------------------------------------------------


class _CauchyEnclosure:
    """Shrinking enclosure of a Cauchy sequence's limit value."""

    def __init__(self, s: ApproxSequence, budgets: Budgets):
        if s.kind != "cauchy":
            raise ValueError("hybrid limits need a Cauchy modulus")
        self.s = s
        self.budgets = budgets
        self.mod = _RunningModulus(s.modulus)
        self.k = 0
        self.lo = None
        self.hi = None

    def refine(self):
        self.k += 1
        n = self.mod(self.k) + 1
        t = self.s.term_value(n)
        step = Fraction(1, 10**self.k)
        lo, hi = t - step, t + step
        self.lo = lo if self.lo is None else max(self.lo, lo)
        self.hi = hi if self.hi is None else min(self.hi, hi)
        if self.lo > self.hi:
            raise ContractViolation(
                "enclosures became disjoint; the Cauchy modulus is wrong",
                k=self.k,
            )

    def cell_at(self, level: int) -> int:
        while True:
            if self.k > 0:
                cell = _interval_cell(self.lo, False, self.hi, False, level)
                if cell is not None:
                    return cell
                if self.k > level + self.budgets.stall_span:
                    boundary = _boundary_between(self.lo, self.hi, level)
                    raise JumpUnresolvedWithinBudget(
                        terminating_from_fraction(boundary), self.k
                    )
            self.refine()


def hybrid_limit(s: ApproxSequence, *, strict: bool = False,
                 budgets: Budgets = DEFAULT_BUDGETS) -> RealClass:
    """The class-valued limit of a Cauchy sequence of terminating decimals.

    When the enclosures settle around a single terminating decimal t
    without separating from it (the limit class is then, to within the
    refinement depth, the jump at t), the jump-pair class of t is
    returned; with strict=True that situation raises
    JumpUnresolvedWithinBudget instead, carrying t and the radius.
    Otherwise the result is an unresolved singleton class around a lazy
    decimal whose digits refine on demand.
    """
    enc = _CauchyEnclosure(s, budgets)
    for _ in range(budgets.enclosure_depth):
        enc.refine()
    probe_level = max(budgets.enclosure_depth - 2, 0)
    pinned = _interval_cell(enc.lo, False, enc.hi, False, probe_level)
    if pinned is None:
        boundary = _boundary_between(enc.lo, enc.hi, probe_level)
        if strict:
            raise JumpUnresolvedWithinBudget(
                terminating_from_fraction(boundary), budgets.enclosure_depth
            )
        return real_class(terminating_from_fraction(boundary))
    value = _emit_from_cells(enc.cell_at, budgets, label="hlim")
    return real_class(value)


# -- formal limits -----------------------------------------------------------


class _MonotoneEnclosure:
    """Tail enclosure of a monotone sequence, half-open on the moving side."""

    def __init__(self, s, direction, bound, bound_is_strict, budgets):
        if direction not in ("nondecreasing", "nonincreasing"):
            raise ValueError(f"unknown direction {direction!r}")
        self.s = s
        self.up = direction == "nondecreasing"
        self.budgets = budgets
        self.mod = _RunningModulus(s.modulus)
        self.k = 0
        self.last_n = 0
        self.last_t: Optional[Fraction] = None
        self.fixed: Optional[Fraction] = None  # closed side (attained terms)
        bf = bound.as_fraction()
        self.moving = bf  # open/closed far side
        self.moving_open = bool(bound_is_strict)

    def refine(self):
        self.k += 1
        n = max(self.mod(self.k) + 1, self.last_n + 1)
        t = self.s.term_value(n)
        if self.last_t is not None:
            drift = t - self.last_t
            if (self.up and drift < 0) or (not self.up and drift > 0):
                raise MonotonicityViolation(
                    f"term({n}) moves against the stated direction",
                    n=n, previous_n=self.last_n,
                )
        if self.fixed is not None:
            bad = t < self.fixed if self.up else t > self.fixed
            if bad:
                raise MonotonicityViolation(
                    f"term({n}) moved backwards across an earlier term", n=n
                )
        self.last_n, self.last_t = n, t
        step = Fraction(1, 10**self.k)
        if self.up:
            self.fixed = t if self.fixed is None else max(self.fixed, t)
            reach = t + step
            if reach < self.moving or (reach == self.moving and not self.moving_open):
                self.moving, self.moving_open = reach, True
            if self.fixed > self.moving or (
                self.fixed == self.moving and self.moving_open
            ):
                raise ContractViolation(
                    "terms crossed the stated bound", n=n, k=self.k
                )
        else:
            self.fixed = t if self.fixed is None else min(self.fixed, t)
            reach = t - step
            if reach > self.moving or (reach == self.moving and not self.moving_open):
                self.moving, self.moving_open = reach, True
            if self.fixed < self.moving or (
                self.fixed == self.moving and self.moving_open
            ):
                raise ContractViolation(
                    "terms crossed the stated bound", n=n, k=self.k
                )

    def _interval(self):
        if self.up:
            return self.fixed, False, self.moving, self.moving_open
        return self.moving, self.moving_open, self.fixed, False

    def cell_at(self, level: int) -> int:
        while True:
            if self.last_t is not None:
                cell = _interval_cell(*self._interval(), level)
                if cell is not None:
                    return cell
                if self.k > level + self.budgets.stall_span:
                    lo, _, hi, _ = self._interval()
                    boundary = _boundary_between(lo, hi, level)
                    raise JumpUnresolvedWithinBudget(
                        terminating_from_fraction(boundary), self.k
                    )
            self.refine()


def formal_limit_monotone(
    s: ApproxSequence,
    direction: str,
    bound: TerminatingDecimal,
    *,
    bound_is_strict: bool = False,
    budgets: Budgets = DEFAULT_BUDGETS,
) -> Decimal:
    """Digitwise limit of a monotone bounded sequence, as a lazy decimal.

    `bound` caps the sequence on its moving side (an upper bound for a
    nondecreasing sequence).  With bound_is_strict=True the caller
    certifies that no term ever equals `bound`; that is exactly the
    knowledge needed to emit the nines-tail digits of a limit that
    creeps up to a terminating value without attaining it.  Without the
    certificate such limits stall and raise JumpUnresolvedWithinBudget.
    """
    enc = _MonotoneEnclosure(s, direction, bound, bound_is_strict, budgets)
    return _emit_from_cells(enc.cell_at, budgets, label="flim")


class _BracketEnclosure:
    """Per-level strict brackets; every valid bracket pins its own level."""

    def __init__(self, s, brackets, budgets):
        self.s = s
        self.brackets = brackets
        self.budgets = budgets

    def cell_at(self, level: int) -> int:
        # a valid level-k bracket pins every level <= k; level 0 uses k = 1
        k = max(level, 1)
        bp = self.brackets(k)
        if not isinstance(bp, BracketPair):
            raise BracketViolation(f"brackets({k}) is not a BracketPair", k=k)
        if bp.level != k:
            raise BracketViolation("bracket level mismatch", k=k)
        lo = bp.lower.as_fraction()
        hi = bp.upper.as_fraction()
        for n in range(bp.valid_from + 1, bp.valid_from + 5):
            t = self.s.term_value(n)
            if not lo < t < hi:
                raise BracketViolation(
                    f"term({n}) = {self.s.term(n)} not strictly inside "
                    f"({bp.lower}, {bp.upper})",
                    k=k, n=n,
                )
        cell = _interval_cell(lo, True, hi, True, level)
        if cell is None:
            raise BracketViolation(
                f"bracket at level {k} spans a digit boundary", k=k
            )
        return cell

    def __call__(self, level):
        return self.cell_at(level)


def formal_limit_bracketed(
    s: ApproxSequence,
    brackets: Callable[[int], BracketPair],
    *,
    budgets: Budgets = DEFAULT_BUDGETS,
) -> Decimal:
    """Digitwise limit certified by strict width-10**-k bracket pairs.

    Each level's pair satisfies lower < term(n) < upper for n past
    valid_from; non-strict pairs are rejected (the criterion fails for
    <=).  The digits above 10**-k are those shared by the bracket
    interior, which the support and width conditions always pin.
    """
    enc = _BracketEnclosure(s, brackets, budgets)
    return _emit_from_cells(enc.cell_at, budgets, label="flim")
