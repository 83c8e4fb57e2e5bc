"""Exact rank and kernels of rational matrices.

Rank uses Bareiss fraction-free elimination on an integer matrix obtained by
clearing each row's denominators, so no intermediate fractions appear.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm


def _integer_rows(rows):
    out = []
    for row in rows:
        row = [Fraction(x) for x in row]
        scale = lcm(*(x.denominator for x in row)) if row else 1
        out.append([int(x * scale) for x in row])
    return out


def rank(matrix) -> int:
    """Exact rank of a matrix given as a list of rows of rationals."""
    M = _integer_rows(matrix)
    if not M or not M[0]:
        return 0
    nrows, ncols = len(M), len(M[0])
    r = 0
    prev = 1
    for c in range(ncols):
        pivot = next((i for i in range(r, nrows) if M[i][c]), None)
        if pivot is None:
            continue
        M[r], M[pivot] = M[pivot], M[r]
        for i in range(r + 1, nrows):
            for j in range(c + 1, ncols):
                # exact division is guaranteed by Sylvester's identity
                M[i][j] = (M[r][c] * M[i][j] - M[i][c] * M[r][j]) // prev
            M[i][c] = 0
        prev = M[r][c]
        r += 1
        if r == nrows:
            break
    return r


def nullspace(matrix, ncols: int | None = None):
    """A basis of the right kernel, as a list of Fraction vectors."""
    rows = [[Fraction(x) for x in row] for row in matrix]
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fcol in free:
        v = [Fraction(0)] * ncols
        v[fcol] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -rows[i][fcol]
        basis.append(v)
    return basis


def in_column_span(matrix, vector) -> bool:
    """Whether ``vector`` lies in the column span of ``matrix``."""
    if not any(Fraction(x) for x in vector):
        return True
    if not matrix or not matrix[0]:
        return False
    augmented = [list(row) + [v] for row, v in zip(matrix, vector)]
    return rank(augmented) == rank(matrix)


def matmul(A, B):
    if not A or not B:
        return [[Fraction(0)] * (len(B[0]) if B else 0) for _ in A]
    return [[sum((Fraction(A[i][k]) * B[k][j] for k in range(len(B))), Fraction(0))
             for j in range(len(B[0]))] for i in range(len(A))]
