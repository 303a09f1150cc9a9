"""Coarse addition operators and left-associative coarse folds.

Both operators collapse every operand to its cell representative before
adding, then collapse the exact sum once more:

* value form:  x (+) y  =  rep(rep(x) + rep(y))
* cell form:   i (+) k  =  index of the cell holding rep(cell i) + rep(cell k)

They are commutative but in general not associative, so folds are defined
strictly left to right; the first partial sum is the first raw input,
uncollapsed.  A cell "absorbs" another when their cell sum is the left cell
itself; once the running sum sits in a cell that absorbs every further
increment, it stops moving.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .errors import OutOfRangeError
from .partitions import Partition
from .rationals import format_rational, parse_rational
from .representatives import Policy, rep_of_cell, rep_of_value


@dataclass(frozen=True)
class FoldStep:
    """One step of a coarse fold: raw input, partial sum, and their cells."""

    n: int
    x: Fraction
    x_cell: int
    s: Fraction
    s_cell: int
    absorbed: bool  # True when the sum's cell did not move from step n-1

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "x": format_rational(self.x),
            "x_cell": self.x_cell,
            "s": format_rational(self.s),
            "s_cell": self.s_cell,
            "absorbed": self.absorbed,
        }


_CSV_HEADER = "n,x,x_cell,s,s_cell,absorbed"


@dataclass(frozen=True)
class FoldTrace:
    """The complete record of a left-associative coarse fold."""

    steps: tuple

    def __len__(self) -> int:
        return len(self.steps)

    def __iter__(self):
        return iter(self.steps)

    @property
    def final_sum(self) -> Fraction:
        return self.steps[-1].s

    @property
    def final_cell(self) -> int:
        return self.steps[-1].s_cell

    def to_json_lines(self) -> str:
        return "\n".join(json.dumps(s.to_json_dict()) for s in self.steps)

    def to_csv(self) -> str:
        rows = [_CSV_HEADER]
        for s in self.steps:
            rows.append(
                f"{s.n},{format_rational(s.x)},{s.x_cell},"
                f"{format_rational(s.s)},{s.s_cell},{'true' if s.absorbed else 'false'}")
        return "\n".join(rows)

    @classmethod
    def from_json_lines(cls, text: str) -> "FoldTrace":
        steps = []
        for line in text.splitlines():
            line = line.strip()
            if not line:
                continue
            d = json.loads(line)
            steps.append(FoldStep(
                n=int(d["n"]),
                x=parse_rational(d["x"]),
                x_cell=int(d["x_cell"]),
                s=parse_rational(d["s"]),
                s_cell=int(d["s_cell"]),
                absorbed=bool(d["absorbed"]),
            ))
        return cls(tuple(steps))


@dataclass(frozen=True)
class CoarseContext:
    """A partition plus a representative policy: everything the operators need."""

    partition: Partition
    policy: Policy = Policy.MEDIAN_LOWER

    def normalize(self, value) -> Fraction:
        """rep-of-cell-of: the collapsed form of a value."""
        return rep_of_value(self.partition, value, self.policy)

    def rep_add(self, x, y) -> Fraction:
        """Coarse addition on values: collapse, add exactly, collapse again."""
        return self.normalize(self.normalize(x) + self.normalize(y))

    def cell_add(self, i: int, k: int) -> int:
        """Coarse addition on cell indexes."""
        total = (rep_of_cell(self.partition.cell_at(i), self.policy)
                 + rep_of_cell(self.partition.cell_at(k), self.policy))
        return self.partition.index_of(total)

    def absorbs(self, i: int, k: int) -> bool:
        """Does cell i swallow cell k, leaving the sum in cell i?"""
        return self.cell_add(i, k) == i

    def distorted(self, x, y) -> bool:
        """Does coarse addition disagree with exact addition on this pair?"""
        return self.rep_add(x, y) != Fraction(x) + Fraction(y)

    def fold(self, values: Iterable) -> FoldTrace:
        """Left-associative coarse partial sums over a finite sequence.

        The first partial sum is the first input as given; later steps
        collapse.  Raises on an empty sequence, and range errors surfacing
        mid-fold carry the failing 1-based step index.
        """
        steps = []
        s = None
        prev_cell = None
        for n, raw in enumerate(values, start=1):
            x = Fraction(raw)
            try:
                x_cell = self.partition.index_of(x)
                s = x if n == 1 else self.rep_add(s, x)
                s_cell = self.partition.index_of(s)
            except OutOfRangeError as exc:
                raise OutOfRangeError(f"step {n}: {exc}", step=n) from exc
            steps.append(FoldStep(n, x, x_cell, s, s_cell, absorbed=(s_cell == prev_cell)))
            prev_cell = s_cell
        if not steps:
            raise ValueError("cannot fold an empty sequence")
        return FoldTrace(tuple(steps))


def coarse_fold(ctx: CoarseContext, values: Iterable) -> FoldTrace:
    """Function form of :meth:`CoarseContext.fold`."""
    return ctx.fold(values)
