"""Exact linear algebra over the integers and rationals.

Everything here works on lists of lists of ``int`` or ``Fraction``; no
floating point is used anywhere.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

Matrix = Sequence[Sequence]


def _integer_rows(rows: Matrix) -> list[list[int]]:
    # scale each row by the lcm of its denominators
    out = []
    for row in rows:
        den = 1
        for x in row:
            den = lcm(den, Fraction(x).denominator)
        out.append([int(Fraction(x) * den) for x in row])
    return out


def rank(rows: Matrix) -> int:
    """Rank via fraction-free (Bareiss) elimination."""
    a = _integer_rows(rows)
    if not a:
        return 0
    ncols = len(a[0])
    r = 0
    prev = 1
    for c in range(ncols):
        # partial pivoting on magnitude keeps the entries small
        best = None
        for i in range(r, len(a)):
            if a[i][c] and (best is None or abs(a[i][c]) < abs(a[best][c])):
                best = i
        if best is None:
            continue
        a[r], a[best] = a[best], a[r]
        piv = a[r][c]
        for i in range(r + 1, len(a)):
            f = a[i][c]
            a[i] = [(piv * a[i][j] - f * a[r][j]) // prev for j in range(ncols)]
        prev = piv
        r += 1
        if r == len(a):
            break
    return r


def det(rows: Matrix):
    """Determinant of a square integer or rational matrix (Bareiss)."""
    n = len(rows)
    if n == 0:
        return 1
    scale = Fraction(1)
    a = []
    for row in rows:
        den = 1
        for x in row:
            den = lcm(den, Fraction(x).denominator)
        scale /= den
        a.append([int(Fraction(x) * den) for x in row])
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[k][k] * a[i][j] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    value = sign * a[n - 1][n - 1] * scale
    return int(value) if value.denominator == 1 else value


def rref(rows: Matrix) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q. Returns (matrix, pivot columns)."""
    a = [[Fraction(x) for x in row] for row in rows]
    if not a:
        return a, []
    ncols = len(a[0])
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    return a, pivots


def kernel_basis(rows: Matrix, ncols: int | None = None) -> list[list[Fraction]]:
    """Basis of {v : M v = 0}, one vector per non-pivot column."""
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    if not rows:
        return [[Fraction(int(i == j)) for i in range(ncols)] for j in range(ncols)]
    r, pivots = rref(rows)
    basis = []
    for f in range(ncols):
        if f in pivots:
            continue
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -r[i][f]
        basis.append(v)
    return basis


def solve_affine(rows: Matrix, rhs: Sequence) -> list[Fraction] | None:
    """One solution of M x = b (free variables set to zero), or None."""
    ncols = len(rows[0]) if rows else 0
    aug = [list(row) + [b] for row, b in zip(rows, rhs)]
    r, pivots = rref(aug)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for i, p in enumerate(pivots):
        x[p] = r[i][ncols]
    return x


def independent_rows(rows: Matrix) -> list[list[int]]:
    """A maximal linearly independent subset of the rows, in order."""
    chosen: list = []
    rk = 0
    for row in rows:
        trial = chosen + [list(row)]
        if rank(trial) > rk:
            chosen = trial
            rk += 1
    return chosen


def column_hnf(rows: Matrix) -> tuple[list[list[int]], list[list[int]]]:
    """Column-style Hermite reduction of a full-row-rank integer matrix.

    Returns (H, Uinv) with M U = [H | 0], H square lower triangular and
    Uinv the inverse of the unimodular U.
    """
    a = [list(map(int, row)) for row in rows]
    r = len(a)
    n = len(a[0]) if a else 0
    uinv = [[int(i == j) for j in range(n)] for i in range(n)]
    for i in range(r):
        # euclid on columns i..n-1 of row i
        while True:
            nz = [j for j in range(i, n) if a[i][j]]
            if not nz:
                raise ValueError("matrix does not have full row rank")
            piv = min(nz, key=lambda j: abs(a[i][j]))
            if piv != i:
                for row in a:
                    row[i], row[piv] = row[piv], row[i]
                uinv[i], uinv[piv] = uinv[piv], uinv[i]
            done = True
            for j in range(i + 1, n):
                if a[i][j]:
                    q = a[i][j] // a[i][i]
                    for row in a:
                        row[j] -= q * row[i]
                    # col_j -= q col_i  <=>  row_i(Uinv) += q row_j(Uinv)
                    uinv[i] = [x + q * y for x, y in zip(uinv[i], uinv[j])]
                    if a[i][j]:
                        done = False
            if done:
                break
        if a[i][i] < 0:
            for row in a:
                row[i] = -row[i]
            uinv[i] = [-x for x in uinv[i]]
    h = [row[:r] for row in a]
    return h, uinv


def lattice_index(rows: Matrix) -> int:
    """Index of the integer row span in its saturation (rows independent)."""
    if not rows:
        return 1
    h, _ = column_hnf(rows)
    out = 1
    for i in range(len(h)):
        out *= h[i][i]
    return abs(out)


def saturation_basis(rows: Matrix) -> list[list[int]]:
    """Integer basis of span_Q(rows) ∩ Z^n."""
    ind = independent_rows(_integer_rows(rows))
    if not ind:
        return []
    _, uinv = column_hnf(ind)
    return [list(r) for r in uinv[: len(ind)]]


def primitive(v: Sequence[int]) -> list[int]:
    g = 0
    for x in v:
        g = gcd(g, x)
    return [x // g for x in v] if g else list(v)
