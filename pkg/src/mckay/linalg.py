"""Exact dense linear algebra over cyclotomic scalars (small matrices)."""

from __future__ import annotations

from .cyclo import CycNum, rational

__all__ = ["matmul", "transpose", "determinant", "rank", "scaled"]


def transpose(m):
    return [list(row) for row in zip(*m)]


def matmul(a, b):
    rows, inner, cols = len(a), len(b), len(b[0])
    out = []
    zero = rational(0)
    for i in range(rows):
        row = []
        for j in range(cols):
            acc = zero
            for k in range(inner):
                x = a[i][k]
                y = b[k][j]
                if not x.is_zero() and not y.is_zero():
                    acc = acc + x * y
            row.append(acc)
        out.append(row)
    return out


def scaled(c, m):
    return [[c * v for v in row] for row in m]


def _eliminate(matrix):
    """Row echelon form by exact division; returns (rows, pivot count, sign)."""
    rows = [list(r) for r in matrix]
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    sign = 1
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if not rows[i][c].is_zero()), None)
        if piv is None:
            continue
        if piv != r:
            rows[r], rows[piv] = rows[piv], rows[r]
            sign = -sign
        inv = rows[r][c].inverse()
        for i in range(r + 1, nrows):
            if rows[i][c].is_zero():
                continue
            f = rows[i][c] * inv
            rows[i] = [
                a - f * b if not b.is_zero() else a for a, b in zip(rows[i], rows[r])
            ]
        r += 1
        if r == nrows:
            break
    return rows, r, sign


def determinant(matrix) -> CycNum:
    n = len(matrix)
    if n == 0:
        return rational(1)
    rows, pivots, sign = _eliminate(matrix)
    if pivots < n:
        return rational(0)
    det = rational(sign)
    col = 0
    for r in range(n):
        while rows[r][col].is_zero():
            col += 1
        det = det * rows[r][col]
    return det


def rank(matrix) -> int:
    if not matrix:
        return 0
    _, pivots, _ = _eliminate(matrix)
    return pivots
