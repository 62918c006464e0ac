"""Exact linear algebra over the rationals, dense rows of Fractions."""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Optional, Sequence

Row = tuple[Fraction, ...]


def _as_row(v: Sequence) -> Row:
    return tuple(Fraction(x) for x in v)


def rref(rows: Iterable[Sequence]) -> list[Row]:
    """Reduced row echelon form; zero rows dropped, rows sorted by pivot."""
    mat = [list(_as_row(r)) for r in rows]
    if not mat:
        return []
    ncols = len(mat[0])
    pivots: dict[int, list[Fraction]] = {}
    for row in mat:
        row = _eliminate(row, pivots)
        p = _first_nonzero(row)
        if p is None:
            continue
        inv = row[p]
        row = [x / inv for x in row]
        for q, other in pivots.items():
            if other[p]:
                c = other[p]
                pivots[q] = [a - c * b for a, b in zip(other, row)]
        pivots[p] = row
    return [tuple(pivots[p]) for p in sorted(pivots)]


def _first_nonzero(row: Sequence[Fraction]) -> Optional[int]:
    for k, x in enumerate(row):
        if x:
            return k
    return None


def _eliminate(row: Sequence[Fraction], pivots: dict[int, list[Fraction]]) -> list[Fraction]:
    row = list(row)
    for p, prow in pivots.items():
        if row[p]:
            c = row[p]
            row = [a - c * b for a, b in zip(row, prow)]
    return row


def reduce_vector(vec: Sequence, rref_rows: Sequence[Row]) -> Row:
    """Residue of vec after elimination against an RREF basis."""
    row = list(_as_row(vec))
    for prow in rref_rows:
        p = _first_nonzero(prow)
        if p is not None and row[p]:
            c = row[p]
            row = [a - c * b for a, b in zip(row, prow)]
    return tuple(row)


def in_span(vec: Sequence, rref_rows: Sequence[Row]) -> bool:
    return not any(reduce_vector(vec, rref_rows))


def rank(rows: Iterable[Sequence]) -> int:
    return len(rref(rows))


def nullspace(rows: Sequence[Sequence]) -> list[Row]:
    """Basis of {x : M x = 0} for the matrix with the given rows."""
    mat = rref(rows)
    if not mat:
        ncols = len(rows[0]) if rows else 0
        return [tuple(Fraction(int(i == k)) for i in range(ncols)) for k in range(ncols)]
    ncols = len(mat[0])
    pivot_cols = [_first_nonzero(r) for r in mat]
    free_cols = [c for c in range(ncols) if c not in pivot_cols]
    out = []
    for fc in free_cols:
        x = [Fraction(0)] * ncols
        x[fc] = Fraction(1)
        for r, pc in zip(mat, pivot_cols):
            x[pc] = -r[fc]
        out.append(tuple(x))
    return out


def intersect_rowspaces(rows_a: Sequence[Row], rows_b: Sequence[Row]) -> list[Row]:
    """Basis (RREF) of the intersection of two row spaces."""
    if not rows_a or not rows_b:
        return []
    stacked = list(rows_a) + list(rows_b)
    # left kernel: c with c . stacked = 0; then c_a . rows_a lies in both spaces
    transposed = list(zip(*stacked))
    kernel = nullspace(transposed)
    na = len(rows_a)
    vecs = []
    for c in kernel:
        v = [Fraction(0)] * len(rows_a[0])
        for coef, row in zip(c[:na], rows_a):
            if coef:
                v = [a + coef * b for a, b in zip(v, row)]
        if any(v):
            vecs.append(tuple(v))
    return rref(vecs)


class SpanSolver:
    """Express vectors as combinations of a fixed list of rows."""

    def __init__(self, rows: Sequence[Sequence]):
        self.rows = [_as_row(r) for r in rows]
        self._pivots: list[tuple[int, Row, Row]] = []  # (pivot col, row, combo)
        n = len(self.rows)
        for k, row in enumerate(self.rows):
            combo = [Fraction(int(i == k)) for i in range(n)]
            row = list(row)
            for p, prow, pcombo in self._pivots:
                if row[p]:
                    c = row[p]
                    row = [a - c * b for a, b in zip(row, prow)]
                    combo = [a - c * b for a, b in zip(combo, pcombo)]
            p = _first_nonzero(row)
            if p is None:
                continue  # dependent row; never used as pivot
            inv = row[p]
            row = [x / inv for x in row]
            combo = [x / inv for x in combo]
            self._pivots.append((p, tuple(row), tuple(combo)))

    def coords(self, vec: Sequence) -> Optional[list[Fraction]]:
        """Coefficients over the original rows, or None if not in the span."""
        row = list(_as_row(vec))
        combo = [Fraction(0)] * len(self.rows)
        for p, prow, pcombo in self._pivots:
            if row[p]:
                c = row[p]
                row = [a - c * b for a, b in zip(row, prow)]
                combo = [a + c * b for a, b in zip(combo, pcombo)]
        if any(row):
            return None
        return combo
