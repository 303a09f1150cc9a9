"""Detecting inert coarse partial-sum sequences.

A stream is inert when its left-associative coarse partial sums stop
changing: from some step N onward every partial sum is the same value in the
same cell.  Finite evidence can only certify "constant over the observed
window"; genuine stabilization is asserted only by the margin certificate,
which needs an upper bound on future increments.

The certificate: collapsing is monotone, so if every input is at most b,
every collapsed increment is at most the representative of b's cell.  The
first cell whose upward margin strictly exceeds that representative absorbs
all further increments, and running sums (which can never jump past it,
because margins below it are too small to matter and widths above it are
larger than any increment) settle there.  The strict inequality means the
certificate never fires on an exact boundary tie; membership-style folding
of a tied stream can therefore settle earlier than the certificate's cell,
and both answers are meaningful.  See ``detect_inert_stream``.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Callable

from .ops import CoarseContext, FoldTrace
from .partitions import EpsilonGrowth, Fibonacci, FixedWidth, Partition, SingletonGrid
from .rationals import format_rational, parse_rational
from .representatives import Policy, margin_pos, rep_of_cell


class Outcome(Enum):
    INERT = "inert"
    NO_VERDICT = "no_verdict"
    # Reserved in the wire format.  Non-stabilization over a finite window is
    # indistinguishable from slow stabilization, so the built-in detectors
    # report NO_VERDICT plus growth evidence instead of claiming divergence.
    DIVERGES = "diverges"


@dataclass(frozen=True)
class InertVerdict:
    """Outcome of an inertness check.

    ``certified`` is True only for margin-certificate verdicts, which hold
    for the entire infinite stream; observed verdicts only describe the
    examined window.  ``increasing_run`` (non-inert outcomes) is the length
    of the longest strictly climbing run of sum-cell indexes at the end of
    the window, as growth evidence.
    """

    outcome: Outcome
    n_stable: int | None = None
    cell_index: int | None = None
    fixed_value: Fraction | None = None
    horizon: int | None = None
    certified: bool = False
    increasing_run: int | None = None

    @property
    def inert(self) -> bool:
        return self.outcome is Outcome.INERT

    def to_json_dict(self) -> dict:
        return {
            "outcome": self.outcome.value,
            "N": self.n_stable,
            "cell": self.cell_index,
            "value": None if self.fixed_value is None else format_rational(self.fixed_value),
            "horizon": self.horizon,
            "certified": self.certified,
        }


def detect_inert_trace(trace: FoldTrace) -> InertVerdict:
    """Judge a finished fold: find the earliest all-constant suffix.

    Returns an observed (uncertified) inert verdict with the smallest N such
    that every partial sum from step N to the end equals the final one; a
    single trailing sample is no evidence, so the constant suffix must have
    at least two steps.  Anything else is NO_VERDICT at the window length.
    """
    steps = trace.steps
    if not steps:
        raise ValueError("cannot judge an empty trace")
    horizon = len(steps)
    final = steps[-1].s
    n = horizon
    while n > 1 and steps[n - 2].s == final:
        n -= 1
    if n < horizon:
        return InertVerdict(Outcome.INERT, n_stable=n, cell_index=steps[-1].s_cell,
                            fixed_value=final, horizon=horizon)
    run = 1
    while run < horizon and steps[horizon - run - 1].s_cell < steps[horizon - run].s_cell:
        run += 1
    return InertVerdict(Outcome.NO_VERDICT, horizon=horizon, increasing_run=run)


def first_absorbing_cell(partition: Partition, policy: Policy, increment_rep,
                         strict: bool = True) -> int | None:
    """Smallest cell index whose upward margin beats a collapsed increment.

    ``strict`` compares with ``>`` (never satisfied by an exact tie);
    non-strict uses ``>=``.  Returns None when no cell ever qualifies, which
    can only happen for bounded-margin families (fixed width, singleton
    grids, max policy, or finite explicit layouts).
    """
    inc = Fraction(increment_rep)
    if inc < 0:
        raise ValueError(f"increment representative must be >= 0, got {inc}")

    def hit(i: int) -> bool:
        m = margin_pos(partition.cell_at(i), policy)
        return m > inc if strict else m >= inc

    if partition.max_index is not None:
        return next((i for i in range(1, partition.max_index + 1) if hit(i)), None)
    spec = partition.spec
    if policy is Policy.MAX or isinstance(spec, (FixedWidth, SingletonGrid)):
        # margins are identical for every cell in these families
        return 1 if hit(1) else None
    if not isinstance(spec, (Fibonacci, EpsilonGrowth)):
        raise ValueError(f"cannot bound the margin scan for {spec!r}")
    # cell widths grow without bound, so under min or median the scan ends
    i = 1
    while not hit(i):
        i += 1
    return i


def detect_inert_stream(ctx: CoarseContext, gen: Callable[[int], Fraction],
                        horizon: int, increment_bound=None) -> InertVerdict:
    """Judge a generated stream, optionally with the margin certificate.

    With ``increment_bound`` b (every generated value is promised to be
    between 0 and b), the certificate applies before any folding: the first
    cell whose upward margin strictly exceeds b's collapsed representative
    absorbs the rest of the stream, and the verdict is certified with that
    cell.  Its step index mirrors the cell index, the natural reading of
    "sums settle once they reach the absorbing cell": one collapsed
    increment per cell climbed.  A tied stream can also pin itself to an
    earlier cell without ever climbing; fold without a bound to observe
    that membership behavior.

    Without a bound (or when no cell qualifies), the stream is folded to the
    horizon and judged by :func:`detect_inert_trace`.
    """
    if horizon < 1:
        raise ValueError(f"horizon must be >= 1, got {horizon}")
    if increment_bound is not None:
        rep_b = ctx.normalize(increment_bound)
        if rep_b < 0:
            raise ValueError(
                f"increment bound must collapse to a nonnegative value, got {rep_b}")
        target = first_absorbing_cell(ctx.partition, ctx.policy, rep_b, strict=True)
        if target is not None:
            value = rep_of_cell(ctx.partition.cell_at(target), ctx.policy)
            return InertVerdict(Outcome.INERT, n_stable=target, cell_index=target,
                                fixed_value=value, horizon=horizon, certified=True)
    trace = ctx.fold(gen(t) for t in range(1, horizon + 1))
    return detect_inert_trace(trace)


# ------------------------------------------------------------ input streams
# Streams are pure functions of the 1-based step index, so reruns and
# continued runs always see identical values.

def constant(value) -> Callable[[int], Fraction]:
    c = parse_rational(value)
    return lambda t: c


def harmonic() -> Callable[[int], Fraction]:
    return lambda t: Fraction(1, t)


def geometric(coefficient, ratio) -> Callable[[int], Fraction]:
    """t -> coefficient * ratio**t for t = 1, 2, 3, ..."""
    c = parse_rational(coefficient)
    r = parse_rational(ratio)
    return lambda t: c * r**t
