"""Small exact linear algebra over Q for the cone computations."""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import combinations
from typing import Sequence

Vector = Sequence[int]


def det(rows: Sequence[Vector]) -> int:
    """Bareiss fraction-free determinant of a square integer matrix."""
    M = [list(map(int, r)) for r in rows]
    n = len(M)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if M[i][k]), None)
            if swap is None:
                return 0
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def row_echelon(rows: Sequence[Vector]) -> tuple[list[list[Fraction]], list[int]]:
    M = [[Fraction(x) for x in r] for r in rows]
    pivots: list[int] = []
    if not M:
        return M, pivots
    top = 0
    for col in range(len(M[0])):
        p = next((i for i in range(top, len(M)) if M[i][col]), None)
        if p is None:
            continue
        M[top], M[p] = M[p], M[top]
        for i in range(len(M)):
            if i != top and M[i][col]:
                f = M[i][col] / M[top][col]
                M[i] = [a - f * b for a, b in zip(M[i], M[top])]
        pivots.append(col)
        top += 1
        if top == len(M):
            break
    return M[:top], pivots


def rank(rows: Sequence[Vector]) -> int:
    return len(row_echelon(rows)[1])


def solve_combination(rows: Sequence[Vector], target: Vector) -> list[Fraction] | None:
    """Coefficients ``lam`` with ``sum(lam_i * rows[i]) == target``.

    ``rows`` must be linearly independent.  Returns ``None`` when the target
    is outside their span.
    """
    k = len(rows)
    n = len(target)
    # augmented system on the transpose: columns are the rows
    aug = [[Fraction(rows[i][j]) for i in range(k)] + [Fraction(target[j])] for j in range(n)]
    ech, piv = row_echelon(aug)
    if k in piv:
        return None
    if len(piv) < k:
        raise ValueError("rows are not linearly independent")
    lam = [Fraction(0)] * k
    for r, c in zip(ech, piv):
        lam[c] = r[k] / r[c]
    return lam


def lattice_index(rows: Sequence[Vector]) -> int:
    """Index of ``span_Z(rows)`` in its saturation: gcd of the maximal minors."""
    k = len(rows)
    if k == 0:
        return 1
    n = len(rows[0])
    g = 0
    for cols in combinations(range(n), k):
        g = math.gcd(g, det([[r[c] for c in cols] for r in rows]))
        if g == 1:
            return 1
    return g


def projection_columns(rows: Sequence[Vector]) -> tuple[int, ...]:
    """Coordinate columns on which the span of ``rows`` projects isomorphically."""
    return tuple(row_echelon(rows)[1])


def project(v: Vector, cols: Sequence[int]) -> list[int]:
    return [v[c] for c in cols]
