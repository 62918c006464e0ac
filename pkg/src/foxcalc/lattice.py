"""Integer lattices: Hermite normal form and membership."""
from __future__ import annotations

from typing import Sequence


def hermite_normal_form(rows: Sequence[Sequence[int]]) -> list[list[int]]:
    """Row-style HNF of the lattice spanned by the rows (zero rows dropped,
    pivots positive, entries above a pivot reduced into [0, pivot))."""
    mat = [list(map(int, r)) for r in rows if any(r)]
    if not mat:
        return []
    ncols = len(mat[0])
    out: list[list[int]] = []
    row_idx = 0
    for col in range(ncols):
        # find a row with nonzero entry in this column, gcd the rest into it
        pivot = None
        for k in range(row_idx, len(mat)):
            if mat[k][col]:
                pivot = k
                break
        if pivot is None:
            continue
        mat[row_idx], mat[pivot] = mat[pivot], mat[row_idx]
        for k in range(row_idx + 1, len(mat)):
            while mat[k][col]:
                q = mat[row_idx][col] // mat[k][col]
                mat[row_idx] = [a - q * b for a, b in zip(mat[row_idx], mat[k])]
                mat[row_idx], mat[k] = mat[k], mat[row_idx]
        if mat[row_idx][col] < 0:
            mat[row_idx] = [-a for a in mat[row_idx]]
        # reduce the rows above
        for prev in out:
            q = prev[col] // mat[row_idx][col]
            if q:
                for i in range(ncols):
                    prev[i] -= q * mat[row_idx][i]
        out.append(mat[row_idx])
        row_idx += 1
        if row_idx == len(mat):
            break
    return out


def lattice_contains(hnf_rows: Sequence[Sequence[int]], vec: Sequence[int]) -> bool:
    """Membership of an integer vector in the lattice given by HNF rows."""
    v = list(map(int, vec))
    for row in hnf_rows:
        col = next(k for k, x in enumerate(row) if x)
        if v[col]:
            if v[col] % row[col]:
                return False
            q = v[col] // row[col]
            v = [a - q * b for a, b in zip(v, row)]
    return not any(v)
