"""
Exact linear algebra over Q with Fraction entries.

Rows may be given dense (sequences) or sparse ({column: value}); internally
everything is sparse.  Pivoting takes the first nonzero entry in column
order, so results are reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence, Union

Row = Union[Sequence, Mapping[int, object]]


class DimensionError(ValueError):
    pass


def _sparse(row: Row, ncols: int) -> dict[int, Fraction]:
    if isinstance(row, Mapping):
        items = row.items()
    else:
        if len(row) != ncols:
            raise DimensionError(f"row of length {len(row)} in a matrix with {ncols} columns")
        items = enumerate(row)
    out = {}
    for c, v in items:
        if not 0 <= c < ncols:
            raise DimensionError(f"column {c} outside 0..{ncols - 1}")
        if v:
            out[c] = Fraction(v)
    return out


def _axpy(target: dict, factor: Fraction, source: dict) -> None:
    # target -= factor * source, in place
    for c, v in source.items():
        nv = target.get(c, 0) - factor * v
        if nv:
            target[c] = nv
        else:
            target.pop(c, None)


@dataclass
class Echelon:
    """Reduced row echelon form with the row operations that produced it.

    ``transforms[k]`` expresses ``rows[k]`` as a combination of the input rows;
    the transforms past ``rank`` span the left kernel.
    """

    rows: list[dict[int, Fraction]]
    pivots: list[int]
    transforms: list[dict[int, Fraction]]
    ncols: int

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def left_kernel(self) -> list[dict[int, Fraction]]:
        return self.transforms[self.rank:]


def row_reduce(matrix: Sequence[Row], ncols: int) -> Echelon:
    rows = [_sparse(r, ncols) for r in matrix]
    transforms = [{k: Fraction(1)} for k in range(len(rows))]
    pivots: list[int] = []
    top = 0
    for col in range(ncols):
        if top == len(rows):
            break
        hit = next((r for r in range(top, len(rows)) if col in rows[r]), None)
        if hit is None:
            continue
        rows[top], rows[hit] = rows[hit], rows[top]
        transforms[top], transforms[hit] = transforms[hit], transforms[top]
        inv = 1 / rows[top][col]
        rows[top] = {c: v * inv for c, v in rows[top].items()}
        transforms[top] = {c: v * inv for c, v in transforms[top].items()}
        for r in range(len(rows)):
            if r != top and col in rows[r]:
                f = rows[r][col]
                _axpy(rows[r], f, rows[top])
                _axpy(transforms[r], f, transforms[top])
        pivots.append(col)
        top += 1
    return Echelon(rows, pivots, transforms, ncols)


def rank(matrix: Sequence[Row], ncols: int | None = None) -> int:
    if ncols is None:
        ncols = len(matrix[0]) if matrix and not isinstance(matrix[0], Mapping) else 0
    return row_reduce(matrix, ncols).rank


def transpose(matrix: Sequence[Row], ncols: int) -> list[dict[int, Fraction]]:
    out: list[dict[int, Fraction]] = [{} for _ in range(ncols)]
    for r, row in enumerate(matrix):
        for c, v in _sparse(row, ncols).items():
            out[c][r] = v
    return out


def dense(row: Mapping[int, object], n: int) -> list[Fraction]:
    return [Fraction(row.get(k, 0)) for k in range(n)]


@dataclass
class SpanResult:
    """Outcome of a row-span membership test.

    When ``in_span`` is true, ``coefficients`` satisfies sum_k c_k M_k = v.
    Otherwise ``witness`` is a column vector x with M x = 0 and v . x != 0.
    """

    in_span: bool
    coefficients: list[Fraction] | None = None
    witness: list[Fraction] | None = None
    extra: dict = field(default_factory=dict)


def combine(matrix: Sequence[Row], coefficients: Sequence, ncols: int) -> list[Fraction]:
    """sum_k coefficients[k] * matrix[k], densely."""
    out = [Fraction(0)] * ncols
    for c, row in zip(coefficients, matrix):
        if c:
            for col, v in _sparse(row, ncols).items():
                out[col] += c * v
    return out


def apply(matrix: Sequence[Row], x: Sequence, ncols: int) -> list[Fraction]:
    """M x as a dense vector."""
    return [sum((v * x[c] for c, v in _sparse(row, ncols).items()), Fraction(0)) for row in matrix]


def in_row_span(matrix: Sequence[Row], v: Row, ncols: int, echelon: Echelon | None = None) -> SpanResult:
    """Decide whether v is a rational combination of the rows of `matrix`."""
    target = _sparse(v, ncols)
    ech = echelon if echelon is not None else row_reduce(matrix, ncols)
    if ech.ncols != ncols:
        raise DimensionError("echelon form built for a different column count")
    residual = dict(target)
    coeffs: dict[int, Fraction] = {}
    for k, p in enumerate(ech.pivots):
        f = residual.get(p)
        if f:
            _axpy(residual, f, ech.rows[k])
            for r, t in ech.transforms[k].items():
                coeffs[r] = coeffs.get(r, 0) + f * t
    if not residual:
        return SpanResult(True, coefficients=dense(coeffs, len(matrix)))
    free = min(residual)
    x = {free: Fraction(1)}
    for k, p in enumerate(ech.pivots):
        if free in ech.rows[k]:
            x[p] = -ech.rows[k][free]
    return SpanResult(False, witness=dense(x, ncols))


def solve(matrix: Sequence[Row], rhs: Sequence, ncols: int) -> SpanResult:
    """
    Find x with M x = rhs.  On success ``coefficients`` holds x; otherwise
    ``witness`` holds y with y^T M = 0 and y . rhs != 0.
    """
    if len(rhs) != len(matrix):
        raise DimensionError(f"{len(matrix)} equations but {len(rhs)} right-hand sides")
    aug = []
    for row, b in zip(matrix, rhs):
        s = _sparse(row, ncols)
        if b:
            s[ncols] = Fraction(b)
        aug.append(s)
    ech = row_reduce(aug, ncols + 1)
    if ncols in ech.pivots:
        k = ech.pivots.index(ncols)
        return SpanResult(False, witness=dense(ech.transforms[k], len(matrix)))
    x = {}
    for k, p in enumerate(ech.pivots):
        x[p] = ech.rows[k].get(ncols, Fraction(0))
    return SpanResult(True, coefficients=dense(x, ncols))


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"
