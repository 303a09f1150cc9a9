"""Representative maps over cells, and absorption margins.

A representative is the single value a grain collapses to.  The default
policy takes the median, rounding down to the lower of the two central
elements for even-sized integer cells and taking the midpoint for real
interval cells.  The min and max policies pick the cell boundaries instead.

The upward margin of a cell is the headroom between its representative and
its upper boundary; the downward margin is the distance down to its lower
boundary.  A cell absorbs an increment exactly when the increment's own
representative fits inside the upward margin.
"""

from __future__ import annotations

from enum import Enum
from fractions import Fraction

from .partitions import Cell, Domain, Partition


class Policy(Enum):
    MEDIAN_LOWER = "median"
    MIN = "min"
    MAX = "max"


def rep_of_cell(cell: Cell, policy: Policy = Policy.MEDIAN_LOWER) -> Fraction:
    """Representative of a cell; singletons map to their lone value.

    Min on a real cell whose lower bound is open returns the infimum, which
    is not itself a member of the cell; margins still measure the distance
    to that boundary.  Median and max always return a member (upper bounds
    are attained under this package's cell conventions).
    """
    if cell.lower == cell.upper:
        return cell.lower
    if policy is Policy.MIN:
        return cell.lower
    if policy is Policy.MAX:
        return cell.upper
    if policy is not Policy.MEDIAN_LOWER:
        raise ValueError(f"unknown policy {policy!r}")
    if cell.domain is Domain.INTEGERS:
        return cell.lower + (cell.count - 1) // 2
    return (cell.lower + cell.upper) / 2


def rep_of_value(partition: Partition, value, policy: Policy = Policy.MEDIAN_LOWER) -> Fraction:
    """Collapse a value to the representative of its own cell (idempotent)."""
    return rep_of_cell(partition.cell_of(value), policy)


def margin_pos(cell: Cell, policy: Policy = Policy.MEDIAN_LOWER) -> Fraction:
    """Headroom from the representative up to the cell's upper boundary."""
    return cell.upper - rep_of_cell(cell, policy)


def margin_neg(cell: Cell, policy: Policy = Policy.MEDIAN_LOWER) -> Fraction:
    """Distance from the cell's lower boundary up to the representative."""
    return rep_of_cell(cell, policy) - cell.lower
