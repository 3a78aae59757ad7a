"""Sparse coefficient matrices C'(lambda) and C(lambda) of a binomial system.

Row k of C'(lambda) holds the coefficients of m*f_j for the k-th row-frame
pair (m, j): parameter a_j lands in the column m*x_j^2 (the paired column, so
a-parameters fill the diagonal of C) and b_j in the column m*m_j.  C(lambda)
is the square block over the non-square-free columns; b-entries whose column
is square-free are dropped with it.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import ValidationError
from .frames import ColumnFrame, RowFrame, build_column_frame, build_row_frame
from .polynomials import RATIONAL, mono_mul
from .systems import BinomialSystem


@dataclass(frozen=True)
class MatrixEntry:
    row: int
    col: int
    kind: str            # 'a' or 'b'
    index: int           # generator index, 1-based
    sign: int = 1        # integer coefficient of the parameter (always +1 here)
    value: Fraction | None = None  # set in specialized mode


@dataclass(frozen=True)
class CoeffMatrix:
    system: BinomialSystem
    lam: int
    order: tuple[int, ...]
    row_frame: RowFrame
    column_frame: ColumnFrame
    entries: tuple[MatrixEntry, ...]
    square: bool  # True for C(lambda), False for C'(lambda)

    @property
    def n(self) -> int:
        return self.system.n

    @property
    def nrows(self) -> int:
        return self.row_frame.size

    @property
    def ncols(self) -> int:
        return self.row_frame.size if self.square else len(self.column_frame.columns)

    @property
    def mode(self) -> str:
        return self.system.mode

    def rows_as_dicts(self) -> list[dict[int, MatrixEntry]]:
        rows: list[dict[int, MatrixEntry]] = [dict() for _ in range(self.nrows)]
        for e in self.entries:
            rows[e.row][e.col] = e
        return rows

    def row_labels(self) -> list[str]:
        from .polynomials import mono_str

        return [f"{mono_str(m)}*f{j}" for m, j in self.row_frame.rows]

    def col_labels(self) -> list[str]:
        from .polynomials import mono_str

        return [mono_str(m) for m in self.column_frame.columns[: self.ncols]]


def _build(system: BinomialSystem, lam: int, order, square: bool) -> CoeffMatrix:
    if lam < 2:
        raise ValidationError("coefficient matrices need lambda >= 2")
    order = tuple(order) if order is not None else system.order
    row_frame = build_row_frame(system.n, lam, order)
    column_frame = build_column_frame(row_frame)
    col_index = {m: k for k, m in enumerate(column_frame.columns)}
    ncols = column_frame.split if square else len(column_frame.columns)
    specialized = system.mode == RATIONAL

    entries = []
    for r, (m, j) in enumerate(row_frame.rows):
        gen = system.generator(j)
        sq = [0] * system.n
        sq[j - 1] = 2
        ca = col_index[mono_mul(m, tuple(sq))]
        cb = col_index[mono_mul(m, gen.cofactor_mono(system.n))]
        if specialized:
            if gen.a != 0:
                entries.append(MatrixEntry(r, ca, "a", j, 1, gen.a))
            if gen.b != 0 and cb < ncols:
                entries.append(MatrixEntry(r, cb, "b", j, 1, gen.b))
        else:
            entries.append(MatrixEntry(r, ca, "a", j))
            if cb < ncols:
                entries.append(MatrixEntry(r, cb, "b", j))
    entries.sort(key=lambda e: (e.row, e.col))
    return CoeffMatrix(system, lam, order, row_frame, column_frame, tuple(entries), square)


def build_cprime(system: BinomialSystem, lam: int, order=None) -> CoeffMatrix:
    """C'(lambda): all columns, including the square-free tail."""
    return _build(system, lam, order, square=False)


def build_c(system: BinomialSystem, lam: int, order=None) -> CoeffMatrix:
    """C(lambda): the square submatrix over the non-square-free columns."""
    return _build(system, lam, order, square=True)
