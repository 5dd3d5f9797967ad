"""Budget knobs for semi-decidable operations.

Comparisons, tail classification and enclosure refinement on lazy digit
streams cannot terminate unconditionally; every such operation takes a
budget and these are the defaults.
"""
from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Budgets:
    # digit positions scanned before a lazy comparison gives up
    compare_scan: int = 256
    # enclosure refinement depth (digit positions) for limit engines
    enclosure_depth: int = 64
    # levels probed before an all-zero emission is reported as the zero decimal
    zero_probe: int = 64
    # extra refinement levels allowed before a straddled digit counts as stalled
    stall_span: int = 12
    # digits inspected by tail classification of a lazy stream
    tail_scan: int = 256
    # cap on materialized preperiod+repetend length of a repeating expansion
    expansion_digits: int = 200_000


DEFAULT_BUDGETS = Budgets()
