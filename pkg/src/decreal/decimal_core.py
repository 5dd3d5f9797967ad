"""Decimals as signed infinite digit strings indexed by integers.

A nonzero decimal is a sign plus digits d_i for every integer index i,
with a most significant index k such that d_k != 0 and d_i = 0 above it.
The zero decimal has no sign and only zero digits.  Three concrete
representations share this interface:

* ``TerminatingDecimal``: finitely many nonzero digits (the set T0);
* ``PeriodicDecimal``: ultimately repeating digits, stored as an exact
  rational value plus a flag selecting the nines-tail expansion when the
  value admits two expansions (0.(9) and 1 are distinct decimals);
* ``LazyDecimal``: digits produced on demand by a generator, memoized.

Equality of two finitely represented decimals is digitwise equality;
lazy streams fall back to object identity because digitwise equality of
opaque streams is only semi-decidable.
"""
from __future__ import annotations

import re
import threading
from enum import Enum
from fractions import Fraction
from typing import Iterator, Optional

from .config import DEFAULT_BUDGETS
from .errors import BudgetExhausted, NotFinitelyRepresented

__all__ = [
    "TailClass",
    "Decimal",
    "TerminatingDecimal",
    "PeriodicDecimal",
    "LazyDecimal",
    "ZERO",
    "ONE",
    "digit_at",
    "truncate",
    "shift",
    "negate",
    "classify_tail",
    "as_fraction",
    "value_key",
    "ten_power",
    "terminating_from_int",
    "terminating_from_fraction",
    "periodic_from_parts",
    "periodic_from_fraction",
    "parse_decimal",
    "digits_string",
]


class TailClass(Enum):
    """Syntactic tail of a digit string: all 0s, all 9s, or neither."""

    ZEROS = "zeros"
    NINES = "nines"
    OTHER = "other"


def _ten_smooth_exponent(den: int) -> Optional[int]:
    """Least j with den | 10**j, or None when den has other prime factors."""
    a = 0
    while den % 2 == 0:
        den //= 2
        a += 1
    b = 0
    while den % 5 == 0:
        den //= 5
        b += 1
    return max(a, b) if den == 1 else None


def _int_digits(n: int) -> tuple[int, ...]:
    """Digits of a nonnegative integer, most significant first."""
    return tuple(int(ch) for ch in str(n))


class Decimal:
    """Common interface of all decimal representations."""

    __slots__ = ()

    kind: str = "abstract"

    @property
    def sign(self) -> int:
        raise NotImplementedError

    @property
    def msd_index(self) -> Optional[int]:
        """Index of the leading nonzero digit; None for the zero decimal."""
        raise NotImplementedError

    def digit_at(self, i: int) -> int:
        raise NotImplementedError

    # -- structure ---------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return self.sign == 0

    @property
    def finitely_represented(self) -> bool:
        return isinstance(self, (TerminatingDecimal, PeriodicDecimal))

    def truncate(self, n: int) -> "TerminatingDecimal":
        """Keep digits at indices >= -n; drop the sign if all of them are 0."""
        msd = self.msd_index
        if msd is None or msd < -n:
            return ZERO
        digits = [self.digit_at(i) for i in range(msd, -n - 1, -1)]
        return _terminating_from_digits(self.sign, msd, digits)

    def shift(self, k: int) -> "Decimal":
        raise NotImplementedError

    def __neg__(self) -> "Decimal":
        raise NotImplementedError

    # -- comparisons -------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, Decimal):
            if self.finitely_represented and other.finitely_represented:
                return value_key(self) == value_key(other)
        return NotImplemented

    def __hash__(self):
        if self.finitely_represented:
            return hash(value_key(self))
        return id(self)

    def _cmp(self, other, op):
        from .ordering import Ordering, compare

        result = compare(self, other)
        if result is None:
            from .errors import ComparisonUndetermined

            raise ComparisonUndetermined(
                "comparison undetermined within the default scan budget"
            )
        return op(result)

    def __lt__(self, other):
        from .ordering import Ordering

        return self._cmp(other, lambda r: r is Ordering.LESS)

    def __le__(self, other):
        from .ordering import Ordering

        return self._cmp(other, lambda r: r is not Ordering.GREATER)

    def __gt__(self, other):
        from .ordering import Ordering

        return self._cmp(other, lambda r: r is Ordering.GREATER)

    def __ge__(self, other):
        from .ordering import Ordering

        return self._cmp(other, lambda r: r is not Ordering.LESS)

    def __repr__(self):
        return f"<{type(self).__name__} {self}>"


class TerminatingDecimal(Decimal):
    """A decimal whose digits are eventually all 0 (an element of T0)."""

    __slots__ = ("_sign", "_msd", "_digits")

    kind = "terminating"

    def __init__(self, sign: int, msd_index: Optional[int], digits: tuple[int, ...]):
        # digits run from msd_index downward; first and last entries nonzero
        if sign == 0:
            if digits:
                raise ValueError("zero decimal carries no digits")
            self._sign, self._msd, self._digits = 0, None, ()
            return
        if sign not in (-1, 1) or not digits or digits[0] == 0 or digits[-1] == 0:
            raise ValueError("malformed terminating decimal")
        if any(d < 0 or d > 9 for d in digits):
            raise ValueError("digits must lie in 0..9")
        self._sign = sign
        self._msd = msd_index
        self._digits = tuple(digits)

    @property
    def sign(self) -> int:
        return self._sign

    @property
    def msd_index(self) -> Optional[int]:
        return self._msd

    @property
    def lsd_index(self) -> Optional[int]:
        """Index of the last nonzero digit; None for zero."""
        if self._sign == 0:
            return None
        return self._msd - len(self._digits) + 1

    @property
    def frac_len(self) -> int:
        """Number of places needed below the point (0 for integers)."""
        lsd = self.lsd_index
        return max(0, -lsd) if lsd is not None else 0

    def digit_at(self, i: int) -> int:
        if self._sign == 0 or i > self._msd or i < self.lsd_index:
            return 0
        return self._digits[self._msd - i]

    def scaled_value(self, k: int) -> int:
        """The integer 10**k * self; requires k >= frac_len."""
        if k < self.frac_len:
            from .errors import InsufficientScale

            raise InsufficientScale(f"need scale >= {self.frac_len}, got {k}")
        if self._sign == 0:
            return 0
        value = 0
        for d in self._digits:
            value = value * 10 + d
        return self._sign * value * 10 ** (self.lsd_index + k)

    @classmethod
    def from_scaled(cls, value: int, scale: int) -> "TerminatingDecimal":
        """The decimal value * 10**-scale."""
        if value == 0:
            return ZERO
        sign = 1 if value > 0 else -1
        digits = _int_digits(abs(value))
        msd = len(digits) - 1 - scale
        # strip trailing zeros
        end = len(digits)
        while end > 0 and digits[end - 1] == 0:
            end -= 1
        return cls(sign, msd, digits[:end])

    def as_fraction(self) -> Fraction:
        if self._sign == 0:
            return Fraction(0)
        k = self.frac_len
        return Fraction(self.scaled_value(k), 10**k)

    def shift(self, k: int) -> "TerminatingDecimal":
        if self._sign == 0:
            return ZERO
        return TerminatingDecimal(self._sign, self._msd + k, self._digits)

    def __neg__(self) -> "TerminatingDecimal":
        if self._sign == 0:
            return ZERO
        return TerminatingDecimal(-self._sign, self._msd, self._digits)

    def __abs__(self) -> "TerminatingDecimal":
        return self if self._sign >= 0 else -self

    def __str__(self):
        if self._sign == 0:
            return "0"
        msd = self._msd
        body_indices = range(max(msd, 0), min(self.lsd_index, 0) - 1, -1)
        chars = []
        for i in body_indices:
            if i == -1:
                chars.append(".")
            chars.append(str(self.digit_at(i)))
        return ("-" if self._sign < 0 else "") + "".join(chars)


def _terminating_from_digits(sign, msd, digits):
    """Normalize a raw digit window (msd downward) into a TerminatingDecimal."""
    start = 0
    while start < len(digits) and digits[start] == 0:
        start += 1
    if start == len(digits):
        return ZERO
    end = len(digits)
    while digits[end - 1] == 0:
        end -= 1
    return TerminatingDecimal(sign, msd - start, tuple(digits[start:end]))


ZERO = TerminatingDecimal(0, None, ())


def terminating_from_int(n: int) -> TerminatingDecimal:
    return TerminatingDecimal.from_scaled(n, 0)


ONE = terminating_from_int(1)


def ten_power(k: int) -> TerminatingDecimal:
    """The terminating decimal with a single 1 digit at index k."""
    return TerminatingDecimal(1, k, (1,))


def terminating_from_fraction(f: Fraction) -> TerminatingDecimal:
    """Exact conversion; raises when f has no terminating expansion."""
    f = Fraction(f)
    j = _ten_smooth_exponent(f.denominator)
    if j is None:
        raise NotFinitelyRepresented(f"{f} has no terminating decimal expansion")
    return TerminatingDecimal.from_scaled(int(f * 10**j), j)


def _primitive(rep: tuple[int, ...]) -> tuple[int, ...]:
    """Shortest word whose repetition gives rep."""
    n = len(rep)
    for d in range(1, n):
        if n % d == 0 and rep[:d] * (n // d) == rep:
            return rep[:d]
    return rep


def _canonical_parts(integer_digits, preperiod, repetend):
    rep = _primitive(tuple(repetend))
    pre = tuple(preperiod)
    while pre and pre[-1] == rep[-1]:
        rep = (rep[-1],) + rep[:-1]
        pre = pre[:-1]
    ints = tuple(integer_digits)
    start = 0
    while start < len(ints) and ints[start] == 0:
        start += 1
    return ints[start:], pre, rep


def _parts_value(integer_digits, preperiod, repetend) -> Fraction:
    ival = 0
    for d in integer_digits:
        ival = ival * 10 + d
    a = len(preperiod)
    pval = 0
    for d in preperiod:
        pval = pval * 10 + d
    p = len(repetend)
    rval = 0
    for d in repetend:
        rval = rval * 10 + d
    return (
        Fraction(ival)
        + Fraction(pval, 10**a)
        + Fraction(rval, (10**p - 1) * 10**a)
    )


class PeriodicDecimal(Decimal):
    """An ultimately periodic decimal (an element of P).

    Stored as an exact rational value plus a nines flag.  When the value
    has a terminating expansion it labels a jump pair; nines=False picks
    the terminating member and nines=True the nines-tail member.  The
    canonical digit parts (integer digits, preperiod, repetend) are
    materialized lazily because a repetend can be astronomically long.
    """

    __slots__ = ("_sign", "_value", "_nines", "_parts", "_msd")

    kind = "periodic"

    def __init__(self, sign, integer_digits=None, preperiod=None, repetend=None,
                 *, _value=None, _nines=False):
        if _value is not None:
            value = Fraction(_value)
            if value == 0:
                raise ValueError("use ZERO for the zero decimal")
            if _nines and _ten_smooth_exponent(value.denominator) is None:
                raise ValueError("nines tail needs a terminating value")
            self._sign = 1 if value > 0 else -1
            if sign is not None and sign != self._sign:
                raise ValueError("sign disagrees with value")
            self._value = value
            self._nines = bool(_nines)
            self._parts = None
            self._msd = None
            return
        ints, pre, rep = _canonical_parts(integer_digits, preperiod, repetend)
        if not ints and not pre and rep == (0,):
            raise ValueError("use ZERO for the zero decimal")
        if sign not in (-1, 1):
            raise ValueError("nonzero periodic decimal needs a sign")
        allv = ints + pre + rep
        if any(d < 0 or d > 9 for d in allv):
            raise ValueError("digits must lie in 0..9")
        self._sign = sign
        self._parts = (ints, pre, rep)
        self._value = sign * _parts_value(ints, pre, rep)
        self._nines = rep == (9,)
        self._msd = None

    # -- representation-level accessors ------------------------------------

    @property
    def sign(self) -> int:
        return self._sign

    @property
    def nines_tail(self) -> bool:
        return self._nines

    def as_fraction(self) -> Fraction:
        """The rational value (both members of a jump share it)."""
        return self._value

    @property
    def is_terminating_value(self) -> bool:
        return _ten_smooth_exponent(self._value.denominator) is not None

    def _materialize(self, cap: Optional[int] = None):
        if self._parts is not None:
            return self._parts
        cap = DEFAULT_BUDGETS.expansion_digits if cap is None else cap
        f = abs(self._value)
        if self._nines:
            # head digits down to the last nonzero index, then a 9 tail
            lsd = self._lsd_of_value()
            msd = self.msd_index
            ints = (
                tuple(self.digit_at(i) for i in range(msd, -1, -1))
                if msd >= 0
                else ()
            )
            pre = (
                tuple(self.digit_at(i) for i in range(-1, lsd - 1, -1))
                if lsd <= -1
                else ()
            )
            parts = _canonical_parts(ints, pre, (9,))
        else:
            q, r = divmod(f.numerator, f.denominator)
            ints = _int_digits(q) if q else ()
            frac = []
            seen = {}
            while r and r not in seen:
                if len(frac) > cap:
                    raise BudgetExhausted(
                        f"repeating expansion longer than {cap} digits"
                    )
                seen[r] = len(frac)
                r *= 10
                d, r = divmod(r, f.denominator)
                frac.append(d)
            if r == 0:
                parts = _canonical_parts(ints, tuple(frac), (0,))
            else:
                s = seen[r]
                parts = _canonical_parts(ints, tuple(frac[:s]), tuple(frac[s:]))
        self._parts = parts
        return parts

    @property
    def integer_digits(self) -> tuple[int, ...]:
        return self._materialize()[0]

    @property
    def preperiod(self) -> tuple[int, ...]:
        return self._materialize()[1]

    @property
    def repetend(self) -> tuple[int, ...]:
        return self._materialize()[2]

    # -- digit access --------------------------------------------------------

    def _lsd_of_value(self) -> int:
        """Exponent of the last nonzero digit of the terminating value."""
        f = abs(self._value)
        j = _ten_smooth_exponent(f.denominator)
        n = f.numerator * 10**j // f.denominator
        lsd = -j
        while n % 10 == 0:
            n //= 10
            lsd += 1
        return lsd

    def digit_at(self, i: int) -> int:
        if self._parts is not None:
            ints, pre, rep = self._parts
            if i >= 0:
                idx = len(ints) - 1 - i
                return ints[idx] if 0 <= idx < len(ints) else 0
            pos = -i - 1
            if pos < len(pre):
                return pre[pos]
            return rep[(pos - len(pre)) % len(rep)]
        f = abs(self._value)
        if self._nines:
            lsd = self._lsd_of_value()
            if i < lsd:
                return 9
            head = f - Fraction(1, 10**-lsd) if lsd < 0 else f - Fraction(10**lsd)
            if head == 0:
                return 0
            return _fraction_digit(head, i)
        return _fraction_digit(f, i)

    @property
    def msd_index(self) -> Optional[int]:
        if self._msd is None:
            f = abs(self._value)
            if self._nines:
                lsd = self._lsd_of_value()
                head = f - (Fraction(1, 10**-lsd) if lsd < 0 else Fraction(10**lsd))
                if head == 0:
                    self._msd = lsd - 1
                else:
                    self._msd = _fraction_msd(head)
            else:
                self._msd = _fraction_msd(f)
        return self._msd

    # -- operations ----------------------------------------------------------

    def shift(self, k: int) -> "PeriodicDecimal":
        return PeriodicDecimal(None, _value=self._value * Fraction(10) ** k,
                               _nines=self._nines)

    def __neg__(self) -> "PeriodicDecimal":
        return PeriodicDecimal(None, _value=-self._value, _nines=self._nines)

    def __abs__(self) -> "PeriodicDecimal":
        return self if self._sign > 0 else -self

    def __str__(self):
        try:
            ints, pre, rep = self._materialize(cap=4096)
        except BudgetExhausted:
            return digits_string(self, 24) + "..."
        sign = "-" if self._sign < 0 else ""
        head = "".join(map(str, ints)) or "0"
        if rep == (0,):
            if not pre:
                return sign + head
            return f"{sign}{head}." + "".join(map(str, pre))
        return f"{sign}{head}." + "".join(map(str, pre)) + "(" + "".join(map(str, rep)) + ")"


def _fraction_digit(f: Fraction, i: int) -> int:
    """Digit i of the standard (no nines tail) expansion of f >= 0."""
    if i >= 0:
        return (f.numerator // f.denominator) // 10**i % 10
    return f.numerator * 10**-i // f.denominator % 10


def _fraction_msd(f: Fraction) -> int:
    """Index of the leading nonzero digit of f > 0."""
    if f >= 1:
        return len(str(f.numerator // f.denominator)) - 1
    k = -1
    # terminates: f > 0 so some digit below the point is nonzero
    while _fraction_digit(f, k) == 0:
        k -= 1
    return k


def periodic_from_parts(sign, integer_digits, preperiod, repetend) -> Decimal:
    """Canonical periodic decimal from digit parts; collapses zero to ZERO."""
    ints, pre, rep = _canonical_parts(integer_digits, preperiod, repetend)
    if not ints and not pre and rep == (0,):
        return ZERO
    return PeriodicDecimal(sign, ints, pre, rep)


def periodic_from_fraction(value, nines: bool = False) -> Decimal:
    """The decimal expanding the rational `value`.

    nines=False yields the standard expansion (the T0 member on jump
    values); nines=True yields the nines-tail member and requires a
    terminating value.
    """
    value = Fraction(value)
    if value == 0:
        return ZERO
    return PeriodicDecimal(None, _value=value, _nines=nines)


class LazyDecimal(Decimal):
    """A decimal whose digits are drawn on demand from a generator.

    Digits are memoized under a lock, so repeated and concurrent queries
    are deterministic.  The generator yields digits starting at msd_index
    and must start with a nonzero digit.
    """

    __slots__ = ("_sign", "_msd", "_source", "_memo", "_lock", "_label")

    kind = "lazy"

    def __init__(self, sign: int, msd_index: int, digits: Iterator[int],
                 label: str = ""):
        if sign not in (-1, 1):
            raise ValueError("lazy decimals are nonzero; use ZERO")
        self._sign = sign
        self._msd = msd_index
        self._source = digits
        self._memo: list[int] = []
        self._lock = threading.RLock()
        self._label = label

    @property
    def sign(self) -> int:
        return self._sign

    @property
    def msd_index(self) -> Optional[int]:
        return self._msd

    def digit_at(self, i: int) -> int:
        if i > self._msd:
            return 0
        need = self._msd - i + 1
        if len(self._memo) < need:
            with self._lock:
                while len(self._memo) < need:
                    d = next(self._source)
                    if not 0 <= d <= 9:
                        raise ValueError(f"generated digit {d} out of range")
                    if not self._memo and d == 0:
                        raise ValueError("leading digit of a lazy stream is 0")
                    self._memo.append(d)
        return self._memo[self._msd - i]

    def shift(self, k: int) -> "Decimal":
        return _LazyView(self, offset=k, flip=False)

    def __neg__(self) -> "Decimal":
        return _LazyView(self, offset=0, flip=True)

    def __str__(self):
        return digits_string(self, 24) + "..."


class _LazyView(Decimal):
    """Shift and/or negation of a lazy decimal, sharing its memo."""

    __slots__ = ("_base", "_offset", "_flip")

    kind = "lazy"

    def __init__(self, base: Decimal, offset: int, flip: bool):
        self._base = base
        self._offset = offset
        self._flip = flip

    @property
    def sign(self) -> int:
        return -self._base.sign if self._flip else self._base.sign

    @property
    def msd_index(self) -> Optional[int]:
        return self._base.msd_index + self._offset

    def digit_at(self, i: int) -> int:
        return self._base.digit_at(i - self._offset)

    def shift(self, k: int) -> "Decimal":
        return _LazyView(self._base, self._offset + k, self._flip)

    def __neg__(self) -> "Decimal":
        return _LazyView(self._base, self._offset, not self._flip)

    def __str__(self):
        return digits_string(self, 24) + "..."


# -- module-level operation surface ----------------------------------------


def digit_at(d: Decimal, i: int) -> int:
    """The digit of d at index i (0 above the leading digit and for zero)."""
    return d.digit_at(i)


def truncate(d: Decimal, n: int) -> TerminatingDecimal:
    """Keep the digits of d at indices >= -n (the n-truncation)."""
    return d.truncate(n)


def shift(d: Decimal, k: int) -> Decimal:
    """Multiply by 10**k: the digit at i becomes the old digit at i-k."""
    return d.shift(k)


def negate(d: Decimal) -> Decimal:
    """Flip the sign, keeping all digits; zero stays zero."""
    return -d if not d.is_zero else ZERO


def classify_tail(d: Decimal, budget: Optional[int] = None) -> Optional[TailClass]:
    """Exact tail class for finite representations; None when unknown.

    A lazy stream has no syntactic tail, so after inspecting up to
    `budget` digits the answer stays undetermined (None).
    """
    if isinstance(d, TerminatingDecimal):
        return TailClass.ZEROS
    if isinstance(d, PeriodicDecimal):
        rep = d.repetend
        if rep == (0,):
            return TailClass.ZEROS
        if rep == (9,):
            return TailClass.NINES
        return TailClass.OTHER
    budget = DEFAULT_BUDGETS.tail_scan if budget is None else budget
    msd = d.msd_index
    for i in range(msd, msd - budget, -1):
        d.digit_at(i)
    return None


def as_fraction(d: Decimal) -> Fraction:
    """Exact rational value of a finitely represented decimal."""
    if isinstance(d, TerminatingDecimal):
        return d.as_fraction()
    if isinstance(d, PeriodicDecimal):
        return d.as_fraction()
    raise NotFinitelyRepresented("no exact value for a lazy stream")


def value_key(d: Decimal) -> tuple[Fraction, bool]:
    """(rational value, has nines tail): a complete key for exact decimals."""
    if isinstance(d, TerminatingDecimal):
        return d.as_fraction(), False
    if isinstance(d, PeriodicDecimal):
        return d.as_fraction(), d.nines_tail
    raise NotFinitelyRepresented("no value key for a lazy stream")


def is_terminating_decimal(d: Decimal) -> bool:
    """True when d lies in T0 (digits eventually all zero)."""
    return classify_tail(d, budget=1) is TailClass.ZEROS


def as_terminating(d: Decimal) -> TerminatingDecimal:
    """View a T0-valued decimal as a TerminatingDecimal."""
    if isinstance(d, TerminatingDecimal):
        return d
    if isinstance(d, PeriodicDecimal) and d.repetend == (0,):
        return terminating_from_fraction(d.as_fraction())
    raise NotFinitelyRepresented(f"{d!r} is not a terminating decimal")


_LITERAL = re.compile(
    r"^\s*(?P<sign>[+-])?(?P<int>\d+)"
    r"(?:\.(?P<frac>\d*)(?:\((?P<rep>\d+)\))?)?\s*$"
)


def parse_decimal(text: str) -> Decimal:
    """Parse `-17.341`, `0.(9)`, `1.41(6)`, `3` into an exact decimal."""
    m = _LITERAL.match(text)
    if m is None:
        from .errors import ParseError

        raise ParseError(f"not a decimal literal: {text!r}", 0)
    sign = -1 if m.group("sign") == "-" else 1
    ints = tuple(int(c) for c in m.group("int"))
    frac = tuple(int(c) for c in m.group("frac") or "")
    rep = m.group("rep")
    if rep is None:
        return _terminating_from_digits(
            sign, len(ints) - 1, list(ints) + list(frac)
        )
    return periodic_from_parts(sign, ints, frac, tuple(int(c) for c in rep))


def digits_string(d: Decimal, count: int) -> str:
    """Sign and the first `count` digits of d, with the decimal point."""
    if d.is_zero:
        return "0"
    msd = d.msd_index
    chars = ["-"] if d.sign < 0 else []
    hi = max(msd, 0)
    for i in range(hi, hi - max(count, msd + 1), -1):
        if i == -1:
            chars.append(".")
        chars.append(str(d.digit_at(i)))
    return "".join(chars)
