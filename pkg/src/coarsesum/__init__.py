"""Coarse-grained partitions of the number line and coarse addition.

Values are grouped into ordered interval cells ("grains"); arithmetic
collapses every operand to its cell's representative before and after
adding.  The resulting operators are commutative but not associative, small
increments can be absorbed outright by wide cells, and series whose partial
sums classically diverge can coarsely settle into a single cell, becoming
inert.  Everything is computed in exact rational arithmetic.
"""

from fractions import Fraction

from .errors import CoarseError, DomainError, OutOfRangeError, SpecError
from .inertness import (InertVerdict, Outcome, constant, detect_inert_stream,
                        detect_inert_trace, first_absorbing_cell, geometric, harmonic)
from .ops import CoarseContext, FoldStep, FoldTrace, coarse_fold
from .partitions import (Cell, Domain, EpsilonGrowth, ExplicitBounds, Fibonacci,
                         FixedWidth, Partition, PartitionSpec, SingletonGrid,
                         ValidationReport, Violation, build_partition, from_widths,
                         spec_from_json, spec_to_json)
from .rationals import format_decimal, format_rational, parse_rational
from .representatives import Policy, margin_neg, margin_pos, rep_of_cell, rep_of_value
from .stpetersburg import (INCREMENT_BOUND, RNG_ALGORITHM, ComparisonReport,
                           Gamble, ValuationReport, coarse_value,
                           compare_valuations, expected_increment_series,
                           sample_gamble)

__version__ = "0.1.0"

__all__ = [
    "Fraction",
    "CoarseError", "DomainError", "OutOfRangeError", "SpecError",
    "Cell", "Domain", "Partition", "PartitionSpec",
    "FixedWidth", "Fibonacci", "EpsilonGrowth", "ExplicitBounds", "SingletonGrid",
    "ValidationReport", "Violation", "build_partition", "from_widths",
    "spec_from_json", "spec_to_json",
    "Policy", "rep_of_cell", "rep_of_value", "margin_pos", "margin_neg",
    "CoarseContext", "FoldStep", "FoldTrace", "coarse_fold",
    "InertVerdict", "Outcome", "detect_inert_trace", "detect_inert_stream",
    "first_absorbing_cell", "constant", "harmonic", "geometric",
    "Gamble", "ValuationReport", "ComparisonReport", "RNG_ALGORITHM",
    "INCREMENT_BOUND",
    "expected_increment_series", "coarse_value", "sample_gamble", "compare_valuations",
    "parse_rational", "format_rational", "format_decimal",
    "__version__",
]
