"""Expression front end: parse, evaluate, scan, and a self-test suite.

Grammar:
    expr   := term (('+' | '-') term)*
    term   := factor (('*' | '/') factor)*
    factor := '-'? (number | '(' expr ')' | 'sqrt' '(' expr ')')
    number := digits ['.' digits] ['(' digits ')']

A parenthesized group immediately after a number's digits is its
repetend, e.g. ``0.(9)`` or ``1.41(6)``; anywhere else parentheses
group.  A trailing ``...`` is accepted as a repetend alias only when
every consistent reading denotes the same decimal.

Evaluation backends: ``exact`` folds periodic literals through the
exact field (a square root of a non-square switches the affected
subtree to enclosures); ``lazy`` runs everything through interval
refinement of truncations.  Results carry an exactness certificate:
Exact, Enclosed(radius), or UndecidedJump(candidate, radius) when the
enclosures keep straddling one terminating decimal.
"""
from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Union

from .config import Budgets, DEFAULT_BUDGETS
from .decimal_core import (
    Decimal,
    LazyDecimal,
    PeriodicDecimal,
    TerminatingDecimal,
    ZERO,
    as_fraction,
    digits_string,
    periodic_from_fraction,
    periodic_from_parts,
    terminating_from_fraction,
    value_key,
)
from .errors import (
    BudgetExhausted,
    DecrealError,
    DivisionByZero,
    JumpUnresolvedWithinBudget,
    NegativeInput,
    NonpositiveInput,
    ParseError,
)
from .exact_ring import add_t, mul_t
from .limits import _emit_from_cells, _interval_cell, _boundary_between
from .ordering import RealClass, class_from_fraction, real_class
from .periodic import detect_period
from .sqrt_digits import SqrtStream, rational_sqrt_of_terminating, sqrt_stream

__all__ = [
    "parse",
    "evaluate",
    "evaluate_text",
    "scan",
    "scan_text",
    "selftest",
    "main",
    "Literal",
    "Neg",
    "Add",
    "Sub",
    "Mul",
    "Div",
    "Sqrt",
    "EvalResult",
    "Exact",
    "Enclosed",
    "UndecidedJump",
]


# -- AST ----------------------------------------------------------------------


@dataclass(frozen=True)
class Literal:
    value: Decimal


@dataclass(frozen=True)
class Neg:
    operand: object


@dataclass(frozen=True)
class Add:
    left: object
    right: object


@dataclass(frozen=True)
class Sub:
    left: object
    right: object


@dataclass(frozen=True)
class Mul:
    left: object
    right: object


@dataclass(frozen=True)
class Div:
    left: object
    right: object


@dataclass(frozen=True)
class Sqrt:
    operand: object


# -- tokenizer ----------------------------------------------------------------


@dataclass(frozen=True)
class _Token:
    kind: str  # number ident op lparen rparen end
    text: str
    pos: int
    value: Optional[Decimal] = None


def _resolve_ellipsis(int_digits, frac, pos) -> Decimal:
    """Digits followed by '...': accept only an unambiguous repetend."""
    candidates = set()
    result = None
    for d in range(1, len(frac) // 2 + 1):
        if frac[-d:] == frac[-2 * d : -d]:
            dec = periodic_from_parts(
                1,
                tuple(int(ch) for ch in int_digits),
                tuple(int(ch) for ch in frac[:-d]),
                tuple(int(ch) for ch in frac[-d:]),
            )
            candidates.add(value_key(dec))
            result = dec
    if not candidates:
        raise ParseError("no repetend evident before '...'", pos)
    if len(candidates) > 1:
        raise ParseError("ambiguous repetend before '...'", pos)
    return result


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            start = i
            while i < n and text[i].isdigit():
                i += 1
            int_digits = text[start:i]
            frac = ""
            if (
                i < n
                and text[i] == "."
                and i + 1 < n
                and (text[i + 1].isdigit() or text[i + 1] == "(")
            ):
                i += 1
                fstart = i
                while i < n and text[i].isdigit():
                    i += 1
                frac = text[fstart:i]
            rep = None
            if i < n and text[i] == "(":
                # a paren straight after digits opens a repetend
                j = i + 1
                rstart = j
                while j < n and text[j].isdigit():
                    j += 1
                if j == rstart:
                    raise ParseError("expected repetend digits after '('", j)
                if j >= n or text[j] != ")":
                    raise ParseError("expected ')' closing the repetend", j)
                rep = text[rstart:j]
                i = j + 1
            ell = False
            for suffix in ("...", "…"):
                if text.startswith(suffix, i):
                    ell = True
                    i += len(suffix)
                    break
            if rep is not None and ell:
                raise ParseError("repetend and '...' cannot be combined", i)
            if ell:
                value = _resolve_ellipsis(int_digits, frac, start)
            elif rep is not None:
                value = periodic_from_parts(
                    1,
                    tuple(int(c) for c in int_digits),
                    tuple(int(c) for c in frac),
                    tuple(int(c) for c in rep),
                )
            else:
                from .decimal_core import _terminating_from_digits

                value = _terminating_from_digits(
                    1,
                    len(int_digits) - 1,
                    [int(c) for c in int_digits + frac],
                )
            tokens.append(_Token("number", text[start:i], start, value))
            continue
        if ch.isalpha():
            start = i
            while i < n and text[i].isalpha():
                i += 1
            tokens.append(_Token("ident", text[start:i], start))
            continue
        if ch in "+-*/":
            tokens.append(_Token("op", ch, i))
            i += 1
            continue
        if ch == "(":
            tokens.append(_Token("lparen", ch, i))
            i += 1
            continue
        if ch == ")":
            tokens.append(_Token("rparen", ch, i))
            i += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", i)
    tokens.append(_Token("end", "", n))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self) -> _Token:
        return self.tokens[self.i]

    def advance(self) -> _Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, kind: str, what: str) -> _Token:
        tok = self.peek()
        if tok.kind != kind:
            raise ParseError(f"expected {what}", tok.pos, expected=(what,))
        return self.advance()

    def parse(self):
        e = self.expr()
        tok = self.peek()
        if tok.kind != "end":
            raise ParseError(f"unexpected {tok.text!r}", tok.pos)
        return e

    def expr(self):
        node = self.term()
        while self.peek().kind == "op" and self.peek().text in "+-":
            op = self.advance().text
            rhs = self.term()
            node = Add(node, rhs) if op == "+" else Sub(node, rhs)
        return node

    def term(self):
        node = self.factor()
        while self.peek().kind == "op" and self.peek().text in "*/":
            op = self.advance().text
            rhs = self.factor()
            node = Mul(node, rhs) if op == "*" else Div(node, rhs)
        return node

    def factor(self):
        tok = self.peek()
        if tok.kind == "op" and tok.text == "-":
            self.advance()
            return Neg(self.factor())
        if tok.kind == "number":
            self.advance()
            return Literal(tok.value)
        if tok.kind == "lparen":
            self.advance()
            node = self.expr()
            self.expect("rparen", "')'")
            return node
        if tok.kind == "ident":
            if tok.text != "sqrt":
                raise ParseError(f"unknown function {tok.text!r}", tok.pos)
            self.advance()
            self.expect("lparen", "'('")
            node = self.expr()
            self.expect("rparen", "')'")
            return Sqrt(node)
        raise ParseError(
            "expected a number, '(' or 'sqrt'", tok.pos,
            expected=("number", "(", "sqrt"),
        )


def parse(text: str):
    """Parse an expression into its syntax tree."""
    return _Parser(text).parse()


# -- evaluation values --------------------------------------------------------


@dataclass(frozen=True)
class _ExactVal:
    value: Fraction


class _StreamVal:
    """A value known through shrinking exact enclosures.

    refine(k) returns a closed rational interval of width <= 10**-k
    containing the value.  `approximant` (when present) is the sequence
    of truncation-arithmetic terms the node refines along, exposed so
    partial results such as truncation products stay observable.
    """

    def __init__(self, refine, approximant=None):
        self._refine = refine
        self.approximant = approximant
        self._cache: dict[int, tuple[Fraction, Fraction]] = {}

    def refine(self, k: int) -> tuple[Fraction, Fraction]:
        got = self._cache.get(k)
        if got is None:
            got = self._refine(k)
            lo, hi = got
            if hi - lo > Fraction(1, 10**k):
                raise AssertionError("enclosure refinement missed its width")
            self._cache[k] = got
        return got

    def cell_at(self, level: int, budgets: Budgets) -> int:
        k = level + 1
        while True:
            lo, hi = self.refine(k)
            cell = _interval_cell(lo, False, hi, False, level)
            if cell is not None:
                return cell
            if k > level + budgets.stall_span:
                raise JumpUnresolvedWithinBudget(
                    terminating_from_fraction(_boundary_between(lo, hi, level)),
                    k,
                )
            k += 1


def _point_stream(v: Fraction) -> _StreamVal:
    return _StreamVal(lambda k: (v, v))


def _truncation_stream(d: Decimal) -> _StreamVal:
    """Enclosure of an exact decimal through its truncations."""

    def refine(k):
        t = d.truncate(k + 1).as_fraction()
        step = Fraction(1, 10 ** (k + 1))
        return t - step, t + step

    return _StreamVal(refine, approximant=lambda n: d.truncate(n))


def _lazy_stream(d: Decimal) -> _StreamVal:
    return _truncation_stream(d)


def _binary_stream(a: _StreamVal, b: _StreamVal, combine, approximant):
    """Self-adjusting combination: deepen the children until width fits."""

    def refine(k):
        depth = k
        while True:
            lo, hi = combine(a.refine(depth), b.refine(depth))
            if hi - lo <= Fraction(1, 10**k):
                return lo, hi
            depth += max(1, k + 2 - depth)
            if depth > k + 2 * DEFAULT_BUDGETS.enclosure_depth + 20:
                raise BudgetExhausted("enclosure refinement did not converge")

    return _StreamVal(refine, approximant=approximant)


def _stream_add(a, b):
    approx = None
    if a.approximant and b.approximant:
        approx = lambda n: add_t(a.approximant(n), b.approximant(n))
    return _binary_stream(
        a, b, lambda ia, ib: (ia[0] + ib[0], ia[1] + ib[1]), approx
    )


def _stream_neg(a):
    approx = (lambda n: -a.approximant(n)) if a.approximant else None
    return _StreamVal(
        lambda k: (-a.refine(k)[1], -a.refine(k)[0]), approximant=approx
    )


def _stream_mul(a, b):
    def combine(ia, ib):
        products = [x * y for x in ia for y in ib]
        return min(products), max(products)

    approx = None
    if a.approximant and b.approximant:
        approx = lambda n: mul_t(a.approximant(n), b.approximant(n))
    return _binary_stream(a, b, combine, approx)


def _stream_div(a, b, budgets: Budgets):
    # separate the divisor from zero first
    for k in range(2, budgets.enclosure_depth + 1):
        lo, hi = b.refine(k)
        if lo > 0 or hi < 0:
            break
    else:
        raise BudgetExhausted(
            "divisor cannot be separated from zero within the budget"
        )

    def inverse(interval):
        lo, hi = interval
        return min(1 / lo, 1 / hi), max(1 / lo, 1 / hi)

    recip = _binary_stream(b, b, lambda ib, _: inverse(ib), None)
    return _stream_mul(a, recip)


def _stream_sqrt(a, budgets: Budgets):
    def refine(k):
        depth = 2 * k + 2
        while True:
            lo, hi = a.refine(depth)
            if hi < 0:
                raise NegativeInput("square root of a negative enclosure")
            lo = max(lo, Fraction(0))
            scale = 10 ** (k + 1)
            root_lo = Fraction(
                _isqrt_floor(lo.numerator * scale * scale, lo.denominator), scale
            )
            root_hi = Fraction(
                _isqrt_ceil(hi.numerator * scale * scale, hi.denominator), scale
            )
            if root_hi - root_lo <= Fraction(1, 10**k):
                return root_lo, root_hi
            depth += k + 2

    return _StreamVal(refine)


def _isqrt_floor(num: int, den: int) -> int:
    import math

    return math.isqrt(num // den)


def _isqrt_ceil(num: int, den: int) -> int:
    import math

    r = math.isqrt(num // den)
    while r * r * den < num:
        r += 1
    return r


# -- evaluation ---------------------------------------------------------------


Value = Union[_ExactVal, _StreamVal]


def _lift(v: Value, lazy_leaves: bool) -> _StreamVal:
    if isinstance(v, _StreamVal):
        return v
    d = periodic_from_fraction(v.value) if v.value else ZERO
    return _truncation_stream(d)


def _eval(node, lazy_leaves: bool, budgets: Budgets) -> Value:
    if isinstance(node, Literal):
        if lazy_leaves:
            return _truncation_stream(node.value)
        return _ExactVal(as_fraction(node.value))
    if isinstance(node, Neg):
        v = _eval(node.operand, lazy_leaves, budgets)
        if isinstance(v, _ExactVal):
            return _ExactVal(-v.value)
        return _stream_neg(v)
    if isinstance(node, (Add, Sub)):
        a = _eval(node.left, lazy_leaves, budgets)
        b = _eval(node.right, lazy_leaves, budgets)
        if isinstance(node, Sub):
            b = _ExactVal(-b.value) if isinstance(b, _ExactVal) else _stream_neg(b)
        if isinstance(a, _ExactVal) and isinstance(b, _ExactVal):
            return _ExactVal(a.value + b.value)
        return _stream_add(_lift(a, lazy_leaves), _lift(b, lazy_leaves))
    if isinstance(node, Mul):
        a = _eval(node.left, lazy_leaves, budgets)
        b = _eval(node.right, lazy_leaves, budgets)
        if isinstance(a, _ExactVal) and isinstance(b, _ExactVal):
            return _ExactVal(a.value * b.value)
        return _stream_mul(_lift(a, lazy_leaves), _lift(b, lazy_leaves))
    if isinstance(node, Div):
        a = _eval(node.left, lazy_leaves, budgets)
        b = _eval(node.right, lazy_leaves, budgets)
        if isinstance(a, _ExactVal) and isinstance(b, _ExactVal):
            if b.value == 0:
                raise DivisionByZero("division by the zero class")
            return _ExactVal(a.value / b.value)
        return _stream_div(_lift(a, lazy_leaves), _lift(b, lazy_leaves), budgets)
    if isinstance(node, Sqrt):
        v = _eval(node.operand, lazy_leaves, budgets)
        if isinstance(v, _ExactVal):
            if v.value < 0:
                raise NegativeInput("square root of a negative value")
            root = _rational_sqrt(v.value)
            if root is not None:
                return _ExactVal(root)
            stream = sqrt_stream(periodic_from_fraction(v.value))
            return _truncation_stream(stream)
        return _stream_sqrt(v, budgets)
    raise TypeError(f"not an expression node: {node!r}")


def _rational_sqrt(v: Fraction) -> Optional[Fraction]:
    import math

    if v == 0:
        return Fraction(0)
    num = math.isqrt(v.numerator)
    den = math.isqrt(v.denominator)
    if num * num == v.numerator and den * den == v.denominator:
        return Fraction(num, den)
    return None


# -- results ------------------------------------------------------------------


@dataclass(frozen=True)
class Exact:
    pass


@dataclass(frozen=True)
class Enclosed:
    radius_exponent: int


@dataclass(frozen=True)
class UndecidedJump:
    candidate: TerminatingDecimal
    radius_exponent: int


@dataclass(frozen=True)
class EvalResult:
    real_class: RealClass
    exactness: Union[Exact, Enclosed, UndecidedJump]
    rendered: str


def _render_cell(cell: int, level: int, sign: int) -> str:
    digits = str(abs(cell)).rjust(level + 1, "0")
    head, tail = digits[:-level] or "0", digits[-level:] if level else ""
    body = head + ("." + tail if tail else "")
    return ("-" if sign < 0 else "") + body


def _finalize_stream(v: _StreamVal, digits: int, budgets: Budgets) -> EvalResult:
    lo, hi = v.refine(digits + 1)
    cell = _interval_cell(lo, False, hi, False, digits)
    if cell is None:
        # tighten, then report the straddled terminating decimal
        k = digits + 1
        while k <= digits + budgets.stall_span:
            lo, hi = v.refine(k)
            cell = _interval_cell(lo, False, hi, False, digits)
            if cell is not None:
                break
            k += 1
        if cell is None:
            candidate = terminating_from_fraction(
                _boundary_between(lo, hi, digits)
            )
            cls = real_class(candidate)
            rendered = (
                f"{cls.render()} ± 1e-{k - 1} (enclosure candidate; "
                "jump membership undecided)"
            )
            return EvalResult(cls, UndecidedJump(candidate, k - 1), rendered)
    value = _emit_from_cells(lambda l: v.cell_at(l, budgets), budgets,
                             label="eval")
    cls = real_class(value)
    if value.is_zero:
        return EvalResult(cls, Enclosed(digits), "0")
    count = max(value.msd_index, 0) + digits + 1  # down to index -digits
    return EvalResult(cls, Enclosed(digits), digits_string(value, count) + "...")


def evaluate(node, digits: int = 30, backend: str = "exact",
             budgets: Budgets = DEFAULT_BUDGETS) -> EvalResult:
    """Evaluate a parsed expression to `digits` places.

    backend="exact" keeps periodic subtrees exact; backend="lazy" runs
    interval refinement of truncations throughout.  Either way the
    exactness label is honest about what was certified.
    """
    if digits < 1:
        raise ValueError("digits must be at least 1")
    if backend not in ("exact", "lazy"):
        raise ValueError(f"unknown backend {backend!r}")
    v = _eval(node, backend == "lazy", budgets)
    if isinstance(v, _ExactVal):
        cls = class_from_fraction(v.value)
        return EvalResult(cls, Exact(), cls.render())
    return _finalize_stream(v, digits, budgets)


def evaluate_text(text: str, digits: int = 30, backend: str = "exact",
                  budgets: Budgets = DEFAULT_BUDGETS) -> EvalResult:
    return evaluate(parse(text), digits, backend, budgets)


# -- period scan ---------------------------------------------------------------


def scan(node, digits: int, max_period: int,
         budgets: Budgets = DEFAULT_BUDGETS) -> str:
    """Evaluate, then hunt for an ultimate period in the digit stream.

    A bare literal (possibly negated) is scanned as written, keeping its
    member of a jump pair; compound results scan the class
    representative's digits.
    """
    inner, flip = node, False
    while isinstance(inner, Neg):
        inner, flip = inner.operand, not flip
    if isinstance(inner, Literal):
        dec: Decimal = -inner.value if flip else inner.value
    else:
        v = _eval(node, False, budgets)
        if isinstance(v, _ExactVal):
            dec = periodic_from_fraction(v.value) if v.value else ZERO
        else:
            dec = _emit_from_cells(lambda l: v.cell_at(l, budgets), budgets,
                                   label="scan")
    if dec.is_zero:
        return "the value is 0 (period 1, repetend 0)"
    found = detect_period(dec, digits, max_period)
    if found is None:
        return f"no ultimate period <= {max_period} in first {digits} digits"
    rep = "".join(map(str, found.repetend))
    return (
        f"period {len(found.repetend)} (preperiod {len(found.preperiod)}): "
        f"repetend {rep}"
    )


def scan_text(text: str, digits: int, max_period: int,
              budgets: Budgets = DEFAULT_BUDGETS) -> str:
    return scan(parse(text), digits, max_period, budgets)


# -- self test ----------------------------------------------------------------


def _selftest_checks():
    from .real_ops import formal_add, formal_mul
    from .exact_ring import sub_t
    from .decimal_core import parse_decimal as pd

    def repeating_product():
        r = evaluate_text("1.(2) * 0.(81)", 10)
        return r.rendered == "{0.(9), 1}"

    def class_sum():
        r = evaluate_text("0.2 + (-0.5)", 5)
        return r.rendered == "{-0.3, -0.2(9)}"

    def addition_not_associative():
        one = pd("1")
        n = pd("0.(9)")
        left = formal_add(formal_add(-n, one), n)
        right = formal_add(-n, formal_add(one, n))
        return left == n and right == one

    def distribution_fails():
        lhs = formal_mul(sub_t(pd("10"), pd("1")), pd("0.(1)"))
        rhs = formal_add(
            formal_mul(pd("10"), pd("0.(1)")), -formal_mul(pd("1"), pd("0.(1)"))
        )
        return lhs == pd("0.(9)") and rhs == pd("1")

    def root_two_digits():
        want = "1.414213562373095048801688724209698"
        return digits_string(sqrt_stream(pd("2")), 34) == want

    def squared_truncations_stay_under_two():
        from .sqrt_digits import square_of_truncations

        q = square_of_truncations(sqrt_stream(pd("2")))
        return digits_string(q, 30) == "1." + "9" * 29

    def no_periodic_root_of_two():
        from .sqrt_digits import residue_obstruction

        return residue_obstruction(pd("2"))

    def near_one_oscillation_has_class_limit():
        # 1.1, 0.9, 1.01, 0.99, ... converges only as a class
        from .limits import ApproxSequence, hybrid_limit

        def term(n):
            step = TerminatingDecimal.from_scaled(1, (n + 1) // 2)
            return add_t(pd("1"), step if n % 2 else -step)

        cls = hybrid_limit(ApproxSequence(term, lambda k: 2 * k + 2))
        return cls == real_class(pd("1"))

    return [
        ("repeating product collapses to the jump class", repeating_product),
        ("class sum lands on {-0.3, -0.2(9)}", class_sum),
        ("digitwise addition fails associativity as stated", addition_not_associative),
        ("digitwise distribution fails as stated", distribution_fails),
        ("root-two digit stream", root_two_digits),
        ("squares of root-two truncations approach 1.999...", squared_truncations_stay_under_two),
        ("last-digit certificate blocks periodic roots of 2", no_periodic_root_of_two),
        ("oscillating-to-1 sequence has the class limit [1]", near_one_oscillation_has_class_limit),
    ]


def selftest(out=sys.stdout) -> int:
    failures = 0
    for name, check in _selftest_checks():
        try:
            ok = check()
        except Exception as exc:  # a self test must never crash the runner
            ok = False
            name = f"{name} ({type(exc).__name__}: {exc})"
        print(("PASS" if ok else "FAIL") + "  " + name, file=out)
        failures += 0 if ok else 1
    return failures


# -- entry point ----------------------------------------------------------------


def _build_argparser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="decreal",
        description="exact decimal-string real arithmetic",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    ev = sub.add_parser("eval", help="evaluate an expression")
    ev.add_argument("expr")
    ev.add_argument("--digits", type=int, default=30)
    ev.add_argument("--backend", choices=("exact", "lazy"), default="exact")

    sc = sub.add_parser("scan", help="look for an ultimate period")
    sc.add_argument("expr")
    sc.add_argument("--digits", type=int, default=200)
    sc.add_argument("--max-period", type=int, default=20)

    sub.add_parser("selftest", help="run the built-in regression checks")
    return ap


def main(argv: Optional[list[str]] = None) -> int:
    args = _build_argparser().parse_args(argv)
    try:
        if args.command == "eval":
            result = evaluate_text(args.expr, digits=args.digits,
                                   backend=args.backend)
            if isinstance(result.exactness, Enclosed):
                print(f"{result.rendered} ± 1e-{result.exactness.radius_exponent}")
            else:
                print(result.rendered)
            return 0
        if args.command == "scan":
            print(scan_text(args.expr, args.digits, args.max_period))
            return 0
        if args.command == "selftest":
            return 1 if selftest() else 0
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 1
    except (DivisionByZero, NegativeInput, NonpositiveInput) as exc:
        print(f"math error: {exc}", file=sys.stderr)
        return 2
    except BudgetExhausted as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
