"""Exact integer/rational matrix kernels.

Matrices are plain nested lists (or tuples) of ``int`` / ``Fraction``.
Nothing here touches floating point.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import List, Sequence, Tuple

Matrix = List[List[int]]


def ldl_pivots(a: Sequence[Sequence]) -> Tuple[List[List[Fraction]], List[Fraction]]:
    """Return ``(L, D)`` with ``a = L diag(D) L^T`` and ``L`` unit lower triangular.

    Stops early (returning the pivots computed so far) when a pivot is
    not strictly positive; callers only need to inspect the last pivot.
    """
    n = len(a)
    low = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    piv: List[Fraction] = []
    for j in range(n):
        d = Fraction(a[j][j]) - sum(low[j][k] ** 2 * piv[k] for k in range(j))
        piv.append(d)
        if d <= 0:
            break
        for i in range(j + 1, n):
            s = Fraction(a[i][j]) - sum(low[i][k] * low[j][k] * piv[k] for k in range(j))
            low[i][j] = s / d
    return low, piv


def reversed_ldl(a: Sequence[Sequence]) -> Tuple[List[List[Fraction]], List[Fraction]]:
    """Factor ``a = C^T diag(D) C`` with ``C`` unit lower triangular.

    With this ordering the quadratic form splits as
    ``sum_k D[k] * (z[k] + sum_{j<k} C[k][j] z[j])**2`` so coordinate 0 is
    fixed first during enumeration.  ``a`` must be positive definite.
    """
    n = len(a)
    c = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    d = [Fraction(0)] * n
    for k in range(n - 1, -1, -1):
        below = [(m, c[m][k] * d[m]) for m in range(k + 1, n) if c[m][k]]
        d[k] = Fraction(a[k][k]) - sum(cd * c[m][k] for m, cd in below)
        if d[k] <= 0:
            raise ValueError("matrix is not positive definite")
        for j in range(k):
            s = Fraction(a[k][j]) - sum(cd * c[m][j] for m, cd in below if c[m][j])
            if s:
                c[k][j] = s / d[k]
    return c, d


def inverse(a: Sequence[Sequence]) -> List[List[Fraction]]:
    """Exact inverse via fraction-free Gauss-Jordan on integer rows."""
    n = len(a)
    den = lcm(*(Fraction(x).denominator for row in a for x in row)) if n else 1
    m = [[int(Fraction(x) * den) for x in row] + [den * int(i == j) for j in range(n)]
         for i, row in enumerate(a)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col] != 0), None)
        if pivot is None:
            raise ZeroDivisionError("singular matrix")
        m[col], m[pivot] = m[pivot], m[col]
        prow = m[col]
        p = prow[col]
        for r in range(n):
            f = m[r][col]
            if r != col and f != 0:
                row = [p * x - f * y for x, y in zip(m[r], prow)]
                g = gcd(*row)
                m[r] = [x // g for x in row] if g > 1 else row
    return [[Fraction(x, m[i][i]) for x in m[i][n:]] for i in range(n)]


def integer_inverse(a: Sequence[Sequence[int]]) -> Matrix:
    """Inverse of a unimodular integer matrix."""
    inv = inverse(a)
    out = []
    for row in inv:
        if any(x.denominator != 1 for x in row):
            raise ValueError("matrix is not unimodular")
        out.append([int(x) for x in row])
    return out


def det(a: Sequence[Sequence[int]]) -> int:
    """Bareiss fraction-free determinant."""
    n = len(a)
    if n == 0:
        return 1
    m = [list(map(int, row)) for row in a]
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((r for r in range(k + 1, n) if m[r][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def matmul(a, b):
    return [[sum(x * y for x, y in zip(row, col)) for col in zip(*b)] for row in a]


def matvec(a, v):
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def transpose(a):
    return [list(col) for col in zip(*a)]


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_normal_form(a: Sequence[Sequence[int]]) -> Tuple[Matrix, Matrix, Matrix]:
    """Return ``(U, D, V)`` with ``U a V = D`` diagonal, ``d_i | d_{i+1}``, ``d_i >= 0``.

    ``U`` and ``V`` are unimodular.  Works for any rectangular integer matrix.
    """
    m = [list(map(int, row)) for row in a]
    rows, cols = len(m), len(m[0]) if m else 0
    u, v = identity(rows), identity(cols)

    def swap_rows(i, j):
        m[i], m[j] = m[j], m[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for mat in (m, v):
            for row in mat:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, f):  # row_dst += f * row_src
        m[dst] = [x + f * y for x, y in zip(m[dst], m[src])]
        u[dst] = [x + f * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, f):
        for mat in (m, v):
            for row in mat:
                row[dst] += f * row[src]

    for t in range(min(rows, cols)):
        while True:
            nz = [(abs(m[i][j]), i, j) for i in range(t, rows) for j in range(t, cols) if m[i][j]]
            if not nz:
                return u, m, v
            _, i, j = min(nz)
            swap_rows(t, i)
            swap_cols(t, j)
            p = m[t][t]
            clean = True
            for i in range(t + 1, rows):
                q = m[i][t] // p
                if q:
                    add_row(i, t, -q)
                if m[i][t]:
                    clean = False
            for j in range(t + 1, cols):
                q = m[t][j] // p
                if q:
                    add_col(j, t, -q)
                if m[t][j]:
                    clean = False
            if not clean:
                continue
            # divisibility: pivot must divide the remaining block
            bad = next(((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols)
                        if m[i][j] % p), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if m[t][t] < 0:
            m[t] = [-x for x in m[t]]
            u[t] = [-x for x in u[t]]
    return u, m, v
