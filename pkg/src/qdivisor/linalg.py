"""Exact solution of small dense rational systems by fraction-free elimination."""

from __future__ import annotations

from fractions import Fraction
from math import lcm


class Inconsistent(ArithmeticError):
    pass


def _integer_row(row) -> list[int]:
    den = 1
    for v in row:
        den = lcm(den, Fraction(v).denominator)
    return [int(Fraction(v) * den) for v in row]


def solve_exact(rows, rhs):
    """Solve ``rows @ x == rhs`` exactly.

    Returns ``(x, rank)``; free variables are set to zero. Raises
    :class:`Inconsistent` if no solution exists.
    """
    m = len(rows)
    ncols = len(rows[0]) if rows else 0
    M = [_integer_row(list(r) + [b]) for r, b in zip(rows, rhs)]
    prev = 1
    r = 0
    pivots = []
    for c in range(ncols):
        p = next((i for i in range(r, m) if M[i][c]), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        piv = M[r][c]
        for i in range(r + 1, m):
            mic = M[i][c]
            row_i = M[i]
            row_r = M[r]
            for j in range(c + 1, ncols + 1):
                row_i[j] = (piv * row_i[j] - mic * row_r[j]) // prev
            row_i[c] = 0
        prev = piv
        pivots.append(c)
        r += 1
        if r == m:
            break
    for i in range(r, m):
        if M[i][ncols]:
            raise Inconsistent(f"row {i} reduces to 0 = {M[i][ncols]}")
    x = [Fraction(0)] * ncols
    for k in range(len(pivots) - 1, -1, -1):
        c = pivots[k]
        s = Fraction(M[k][ncols])
        for j in range(c + 1, ncols):
            if M[k][j]:
                s -= M[k][j] * x[j]
        x[c] = s / M[k][c]
    return x, len(pivots)
