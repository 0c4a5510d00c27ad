"""
Integer partitions as canonical tuples, plus the rectangular boxes that
bound them.

A partition is a weakly decreasing tuple of positive ints; the empty tuple
is the zero partition.  Every constructor here strips trailing zeros, so two
partitions are equal exactly when their tuples are.

>>> conjugate((3, 1))
(2, 1, 1)
>>> partitions_in_box(Box(3, 3), 4)
[(3, 1), (2, 2), (2, 1, 1)]
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cache
from typing import Iterable, Iterator

Partition = tuple[int, ...]

EMPTY: Partition = ()


class PartitionError(ValueError):
    pass


def make_partition(parts: Iterable[int]) -> Partition:
    """Normalize `parts` to canonical form, dropping zeros.

    Raises PartitionError for negative or increasing entries.
    """
    parts = tuple(int(p) for p in parts)
    if any(p < 0 for p in parts):
        raise PartitionError(f"negative part in {parts}")
    while parts and parts[-1] == 0:
        parts = parts[:-1]
    if any(p == 0 for p in parts):
        raise PartitionError(f"zero part before a positive part in {parts}")
    if any(parts[k] < parts[k + 1] for k in range(len(parts) - 1)):
        raise PartitionError(f"parts of {parts} are not weakly decreasing")
    return parts


def size(lam: Partition) -> int:
    return sum(lam)


def part(lam: Partition, k: int) -> int:
    """The k-th row (0-based), reading missing rows as 0."""
    return lam[k] if k < len(lam) else 0


@cache
def conjugate(lam: Partition) -> Partition:
    if not lam:
        return EMPTY
    return tuple(sum(1 for p in lam if p > c) for c in range(lam[0]))


def contains(outer: Partition, inner: Partition) -> bool:
    """True iff the diagram of `inner` sits inside the diagram of `outer`."""
    if len(inner) > len(outer):
        return False
    return all(p <= q for p, q in zip(inner, outer))


def stack_rectangle(i: int, j: int, lam: Partition) -> Partition:
    """The partition (i^j, lam): j rows of length i on top of lam."""
    if i < 1 or j < 1:
        raise PartitionError(f"rectangle {i}^{j} must have positive sides")
    if lam and lam[0] > i:
        raise PartitionError(f"cannot stack {lam} under rows of length {i}")
    return (i,) * j + tuple(lam)


def order_key(lam: Partition) -> tuple:
    """Graded, then reverse-lexicographic: (), (1), (2), (1,1), (3), (2,1), ..."""
    return (sum(lam), tuple(-p for p in lam))


@dataclass(frozen=True)
class Box:
    """The rectangle with `rows` rows of length `cols`, i.e. cols^rows."""

    rows: int
    cols: int

    def __post_init__(self):
        if self.rows < 1 or self.cols < 1:
            raise PartitionError(f"box dimensions must be positive, got {self.rows}x{self.cols}")

    def fits(self, lam: Partition) -> bool:
        return len(lam) <= self.rows and (not lam or lam[0] <= self.cols)

    @property
    def area(self) -> int:
        return self.rows * self.cols

    def as_partition(self) -> Partition:
        return (self.cols,) * self.rows


def _bounded(total: int, rows: int, cols: int) -> Iterator[Partition]:
    # reverse-lex descending within a fixed size
    if total == 0:
        yield EMPTY
        return
    if rows == 0:
        return
    for first in range(min(total, cols), 0, -1):
        if first * rows < total:
            break
        for rest in _bounded(total - first, rows - 1, first):
            yield (first,) + rest


@cache
def _in_box(rows: int, cols: int, total: int | None) -> tuple[Partition, ...]:
    if total is not None:
        return tuple(_bounded(total, rows, cols))
    out: list[Partition] = []
    for t in range(rows * cols + 1):
        out.extend(_bounded(t, rows, cols))
    return tuple(out)


def partitions_in_box(box: Box, total: int | None = None) -> list[Partition]:
    """All partitions fitting in `box`, optionally of a fixed size.

    Order is graded (by size) and reverse-lexicographic within a size.
    """
    if total is not None and total < 0:
        return []
    return list(_in_box(box.rows, box.cols, total))


def partitions_of(total: int, max_part: int | None = None, max_len: int | None = None) -> list[Partition]:
    """Partitions of `total`, reverse-lexicographic order."""
    if total < 0:
        return []
    cols = total if max_part is None else max_part
    rows = total if max_len is None else max_len
    return list(_bounded(total, rows, cols))


def subpartitions(lam: Partition) -> list[Partition]:
    """Every mu contained in lam, graded order."""
    out = []
    def rec(k: int, cap: int, acc: tuple[int, ...]):
        if k == len(lam):
            out.append(make_partition(acc))
            return
        for p in range(min(cap, lam[k]), -1, -1):
            rec(k + 1, p, acc + (p,))
    rec(0, lam[0] if lam else 0, ())
    return sorted(set(out), key=order_key)


_TEXT = re.compile(r"^\s*\[\s*((?:\d+\s*(?:,\s*\d+\s*)*)?)\]\s*$")


def parse_partition(text: str) -> Partition:
    """Parse the bracketed text form, e.g. ``[3,1]`` or ``[]``."""
    m = _TEXT.match(text)
    if not m:
        raise PartitionError(f"not a partition literal: {text!r}")
    body = m.group(1).strip()
    if not body:
        return EMPTY
    return make_partition(int(x) for x in body.split(","))


def format_partition(lam: Partition) -> str:
    return "[" + ",".join(str(p) for p in lam) + "]"
