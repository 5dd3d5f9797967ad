"""Exception types shared across the package."""


class DecrealError(Exception):
    """Base class for package errors."""


class NotFinitelyRepresented(DecrealError):
    """The operation needs a terminating or repeating representation."""


class ComparisonUndetermined(DecrealError):
    """A budgeted digit scan ran out before the comparison was decided."""


class InsufficientScale(DecrealError):
    """Scaling exponent too small to clear all fractional digits."""


class ZeroInput(DecrealError):
    """Zero is outside the operation's domain."""


class NonpositiveInput(DecrealError):
    """A strictly positive input is required."""


class NegativeInput(DecrealError):
    """A nonnegative input is required."""


class DivisionByZero(ZeroDivisionError, DecrealError):
    """Reciprocal or division applied to zero (or the zero class)."""


class ContractViolation(DecrealError):
    """A sequence broke its stated convergence contract.

    The witness dict records where (keys such as k, n, m, term).
    """

    def __init__(self, message: str, **witness):
        super().__init__(message)
        self.witness = witness


class MonotonicityViolation(ContractViolation):
    pass


class BracketViolation(ContractViolation):
    pass


class BudgetExhausted(DecrealError):
    """An enclosure refinement or digit scan hit its budget."""


class JumpUnresolvedWithinBudget(BudgetExhausted):
    """Every enclosure within budget straddled the same terminating decimal.

    `candidate` is that terminating decimal; the true value is within
    10**-radius_exponent of it, but membership in the jump at `candidate`
    is undecided.
    """

    def __init__(self, candidate, radius_exponent: int):
        super().__init__(
            f"enclosures keep straddling {candidate} "
            f"(radius 1e-{radius_exponent}); jump membership undecided"
        )
        self.candidate = candidate
        self.radius_exponent = radius_exponent


class BoundsTooLarge(DecrealError):
    """Enumeration bounds exceed the configured search ceiling."""


class ParseError(DecrealError):
    """Expression or literal syntax error, with a 0-based offset."""

    def __init__(self, message: str, position: int, expected=()):
        super().__init__(f"{message} (offset {position})")
        self.position = position
        self.expected = tuple(expected)
