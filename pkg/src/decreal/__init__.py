"""decreal: real numbers as infinite decimal strings, computed exactly.

Decimals are signed digit strings; pairs like 0.999... and 1 are
distinct decimals forming one real number (a jump class).  The package
provides the lexicographic order and jump structure, an exact ordered
ring on terminating decimals, exact field arithmetic on ultimately
periodic decimals, class arithmetic through hybrid limits, digitwise
(formal) addition and multiplication with their classic pathologies
intact, digit-by-digit square roots, and a last-digit certificate that
no ultimately periodic decimal squares to 2.
"""

from .config import Budgets, DEFAULT_BUDGETS
from .decimal_core import (
    Decimal,
    LazyDecimal,
    PeriodicDecimal,
    TailClass,
    TerminatingDecimal,
    ONE,
    ZERO,
    as_fraction,
    classify_tail,
    digit_at,
    digits_string,
    negate,
    parse_decimal,
    periodic_from_fraction,
    periodic_from_parts,
    shift,
    ten_power,
    terminating_from_fraction,
    terminating_from_int,
    truncate,
    value_key,
)
from .errors import (
    BoundsTooLarge,
    BracketViolation,
    BudgetExhausted,
    ComparisonUndetermined,
    ContractViolation,
    DecrealError,
    DivisionByZero,
    InsufficientScale,
    JumpUnresolvedWithinBudget,
    MonotonicityViolation,
    NegativeInput,
    NonpositiveInput,
    NotFinitelyRepresented,
    ParseError,
    ZeroInput,
)
from .exact_ring import ScaledInteger, add_t, from_scaled, last_nonzero_digit, \
    mul_t, sub_t, to_scaled
from .limits import (
    ApproxSequence,
    BracketPair,
    cauchy_check,
    formal_limit_bracketed,
    formal_limit_monotone,
    hybrid_limit,
    tends_to_zero,
)
from .ordering import (
    Ordering,
    RealClass,
    class_from_fraction,
    class_strictly_between,
    compare,
    compare_class,
    equivalent,
    is_jump,
    jump_partner,
    lex_compare_exact,
    real_class,
    strictly_between,
    supremum_finite,
)
from .periodic import (
    add_p,
    detect_period,
    divisibility_exponent,
    expansion_shape,
    inv_p,
    mul_p,
    multiplicative_order,
    nines_zeros,
    scale_to_integer,
    sub_p,
)
from .real_ops import (
    LongDivisionState,
    add,
    formal_add,
    formal_mul,
    long_division_states,
    mul,
    neg,
    reciprocal,
    reciprocal_stream,
    sub,
    truncation_product_sequence,
    truncation_sum_sequence,
)
from .sqrt_digits import (
    SqrtStream,
    exhaustive_square_search,
    residue_obstruction,
    sqrt_stream,
    square_of_truncations,
)

__version__ = "0.1.0"
