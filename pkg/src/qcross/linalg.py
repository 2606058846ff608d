"""Dense matrices over F_q: reduced row echelon form, rank, row-space membership.

Rows are tuples of element codes.  Everything here is a pure function of its
inputs; the RREF produced by :func:`rref` is the canonical form used for
subspace identity throughout the package.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import DimensionMismatch
from .gf import FieldSpec

Row = tuple[int, ...]


@dataclass(frozen=True)
class MatrixGF:
    field: FieldSpec
    rows: int
    cols: int
    entries: tuple[Row, ...]

    def __post_init__(self) -> None:
        if len(self.entries) != self.rows:
            raise DimensionMismatch(f"expected {self.rows} rows, got {len(self.entries)}")
        q = self.field.q
        for r in self.entries:
            if len(r) != self.cols:
                raise DimensionMismatch(f"row {r} does not have {self.cols} columns")
            if any(not 0 <= x < q for x in r):
                raise ValueError(f"row {r} has entries outside F_{q}")

    @classmethod
    def from_rows(cls, field: FieldSpec, rows: Iterable[Sequence[int]], cols: int | None = None) -> "MatrixGF":
        entries = tuple(tuple(r) for r in rows)
        if cols is None:
            if not entries:
                raise DimensionMismatch("column count is needed for an empty matrix")
            cols = len(entries[0])
        return cls(field, len(entries), cols, entries)

    @classmethod
    def zeros(cls, field: FieldSpec, rows: int, cols: int) -> "MatrixGF":
        return cls(field, rows, cols, tuple((0,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, field: FieldSpec, size: int) -> "MatrixGF":
        return cls(field, size, size, tuple(tuple(int(i == j) for j in range(size)) for i in range(size)))


def rref_rows(field: FieldSpec, rows: Iterable[Sequence[int]], cols: int) -> tuple[list[list[int]], list[int]]:
    """Row reduce a list of rows in place of a copy.

    Returns ``(nonzero_rows, pivots)``: only the ``rank`` nonzero rows of the
    reduced form are returned, each with a leading 1 at its pivot column.
    """
    add, mul, neg, inv = field.add_table, field.mul_table, field.neg_table, field.inv_table
    m = [list(r) for r in rows]
    pivots: list[int] = []
    rank = 0
    for col in range(cols):
        if rank == len(m):
            break
        piv = next((i for i in range(rank, len(m)) if m[i][col]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        prow = m[rank]
        if prow[col] != 1:
            s = inv[prow[col]]
            srow = mul[s]
            prow = m[rank] = [srow[x] for x in prow]
        for i in range(len(m)):
            if i != rank and m[i][col]:
                c = mul[neg[m[i][col]]]
                ri = m[i]
                m[i] = [add[a][c[b]] for a, b in zip(ri, prow)]
        pivots.append(col)
        rank += 1
    return m[:rank], pivots


def rref(m: MatrixGF) -> tuple[MatrixGF, int, list[int]]:
    """Reduced row echelon form of ``m``.

    The returned matrix has the same shape as ``m``: nonzero rows first, zero
    rows padded at the bottom.
    """
    red, pivots = rref_rows(m.field, m.entries, m.cols)
    rank = len(red)
    entries = tuple(tuple(r) for r in red) + tuple((0,) * m.cols for _ in range(m.rows - rank))
    return MatrixGF(m.field, m.rows, m.cols, entries), rank, pivots


def rank(m: MatrixGF) -> int:
    return len(rref_rows(m.field, m.entries, m.cols)[1])


def row_space_contains(m: MatrixGF, v: Sequence[int]) -> bool:
    if len(v) != m.cols:
        raise DimensionMismatch(f"vector of length {len(v)} against {m.cols} columns")
    base = rank(m)
    return len(rref_rows(m.field, list(m.entries) + [tuple(v)], m.cols)[1]) == base


def nullspace_rows(field: FieldSpec, rows: Sequence[Sequence[int]], cols: int) -> list[list[int]]:
    """Basis of {x : A x = 0} for the matrix whose rows are ``rows``."""
    red, pivots = rref_rows(field, rows, cols)
    free = [c for c in range(cols) if c not in set(pivots)]
    basis = []
    for f in free:
        x = [0] * cols
        x[f] = 1
        for r, p in zip(red, pivots):
            x[p] = field.neg_table[r[f]]
        basis.append(x)
    return basis
