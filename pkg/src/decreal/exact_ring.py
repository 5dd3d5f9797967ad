"""Exact ordered-ring arithmetic on terminating decimals.

Sums and products are computed by scaling both operands into integers
(shift by 10**k), operating there, and shifting back.  Results do not
depend on the chosen k, which the test suite checks directly.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .decimal_core import Decimal, TerminatingDecimal, ZERO, as_terminating
from .errors import ZeroInput

__all__ = [
    "ScaledInteger",
    "to_scaled",
    "from_scaled",
    "add_t",
    "sub_t",
    "mul_t",
    "last_nonzero_digit",
]


@dataclass(frozen=True)
class ScaledInteger:
    """An integer together with the scale k: the source equals value * 10**-k."""

    value: int
    scale: int

    def to_decimal(self) -> TerminatingDecimal:
        return TerminatingDecimal.from_scaled(self.value, self.scale)


def to_scaled(c: TerminatingDecimal, k: int) -> ScaledInteger:
    """The integer image of 10**k * c; k must clear c's fractional digits."""
    return ScaledInteger(c.scaled_value(k), k)


def from_scaled(value: int, scale: int) -> TerminatingDecimal:
    return TerminatingDecimal.from_scaled(value, scale)


def _common_scale(c: TerminatingDecimal, d: TerminatingDecimal,
                  k: Optional[int]) -> int:
    if k is None:
        return max(c.frac_len, d.frac_len)
    return k


def add_t(c: Decimal, d: Decimal, k: Optional[int] = None) -> TerminatingDecimal:
    """Exact sum of two terminating decimals."""
    c, d = as_terminating(c), as_terminating(d)
    k = _common_scale(c, d, k)
    return from_scaled(c.scaled_value(k) + d.scaled_value(k), k)


def sub_t(c: Decimal, d: Decimal, k: Optional[int] = None) -> TerminatingDecimal:
    """Exact difference c - d; its sign agrees with the lexicographic order."""
    c, d = as_terminating(c), as_terminating(d)
    k = _common_scale(c, d, k)
    return from_scaled(c.scaled_value(k) - d.scaled_value(k), k)


def mul_t(c: Decimal, d: Decimal, k: Optional[int] = None) -> TerminatingDecimal:
    """Exact product of two terminating decimals (scale 2k on the way back)."""
    c, d = as_terminating(c), as_terminating(d)
    k = _common_scale(c, d, k)
    return from_scaled(c.scaled_value(k) * d.scaled_value(k), 2 * k)


def last_nonzero_digit(c: Decimal) -> int:
    """The digit at the least index carrying a nonzero digit."""
    c = as_terminating(c)
    if c.is_zero:
        raise ZeroInput("zero has no nonzero digit")
    return c.digit_at(c.lsd_index)
