"""Independent brute-force reference implementations used by the tests.

Nothing here imports the algorithms under test; only plain data types.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations, permutations, product


def leibniz_det(M) -> Fraction:
    n = len(M)
    total = Fraction(0)
    for perm in permutations(range(n)):
        inv = sum(1 for a in range(n) for b in range(a + 1, n) if perm[a] > perm[b])
        term = Fraction(-1 if inv % 2 else 1)
        for i in range(n):
            term *= M[i][perm[i]]
        total += term
    return total


def gauss_rank(M) -> int:
    rows = [[Fraction(x) for x in r] for r in M]
    rank, ncols = 0, len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((r for r in range(rank, len(rows)) if rows[r][c]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for r in range(len(rows)):
            if r != rank and rows[r][c]:
                f = rows[r][c] / rows[rank][c]
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[rank])]
        rank += 1
    return rank


def solve_square(A, b):
    """Unique solution of A x = b over the rationals, or None."""
    n = len(A)
    rows = [[Fraction(x) for x in r] + [Fraction(y)] for r, y in zip(A, b)]
    for c in range(n):
        piv = next((r for r in range(c, n) if rows[r][c]), None)
        if piv is None:
            return None
        rows[c], rows[piv] = rows[piv], rows[c]
        for r in range(n):
            if r != c and rows[r][c]:
                f = rows[r][c] / rows[c][c]
                rows[r] = [a - f * q for a, q in zip(rows[r], rows[c])]
    return [rows[i][n] / rows[i][i] for i in range(n)]


def _cells(lam, mu):
    return {(i + 1, c) for i in range(len(lam)) for c in range(mu[i] + 1, lam[i] + 1)}


def _normalize_cells(cells):
    rows = sorted({i for i, _ in cells})
    cols = sorted({c for _, c in cells})
    return {(rows.index(i), cols.index(c)) for i, c in cells}, len(rows), len(cols)


def brute_subdiagram(big, small) -> bool:
    """Try every pair of increasing row and column maps."""
    bc, bn, bm = _normalize_cells(_cells(*big))
    sc, sn, sm = _normalize_cells(_cells(*small))
    if not sc:
        return True
    for rs in combinations(range(bn), sn):
        for cs in combinations(range(bm), sm):
            if all((rs[i], cs[j]) in bc for i, j in sc):
                return True
    return False


def _pairs(m, n):
    """(larger, smaller) index pairs of the interlacing inequalities, rows bottom first."""
    out = []
    for i in range(m - 1):
        for j in range(n):
            out.append(((i + 1, j), (i, j)))
            if j + 1 < n:
                out.append(((i, j), (i + 1, j + 1)))
    return out


def brute_tableaux(lam, mu, weight):
    """All semistandard fillings of lam/mu with the given content multiplicities."""
    cells = sorted(_cells(lam, mu))
    contents = [c for c, mult in enumerate(weight, start=1) for _ in range(mult)]
    if len(contents) != len(cells):
        return []
    out = set()
    for perm in set(permutations(contents)):
        fill = dict(zip(cells, perm))
        ok = all(fill[(i, c)] <= fill[(i, c + 1)] for i, c in cells if (i, c + 1) in fill) and \
            all(fill[(i, c)] < fill[(i + 1, c)] for i, c in cells if (i + 1, c) in fill)
        if ok:
            out.add(tuple(sorted(fill.items())))
    return sorted(out)


def tableau_pattern(lam, mu, fill, m):
    """Bottom-first pattern rows from a filling given as ((row, col), content) pairs."""
    n = len(lam)
    rows = []
    for i in range(m):
        rows.append(tuple(mu[j] + sum(1 for (r, _), x in fill if r == j + 1 and x <= i)
                          for j in range(n)))
    return tuple(rows)


def brute_lattice_points(lam, mu, weight):
    m = len(weight) + 1
    return sorted(tableau_pattern(lam, mu, f, m) for f in brute_tableaux(lam, mu, weight))


def brute_vertices(lam, mu, weight):
    """Vertices via tight inequality subsets (tiny instances only)."""
    n, m = len(lam), len(weight) + 1
    free = [(i, j) for i in range(1, m - 1) for j in range(n)]
    idx = {c: k for k, c in enumerate(free)}
    d = len(free)
    fixed = {}
    for j in range(n):
        fixed[(0, j)] = Fraction(mu[j])
        fixed[(m - 1, j)] = Fraction(lam[j])

    def lin(cell):
        v = [Fraction(0)] * d
        if cell in idx:
            v[idx[cell]] = Fraction(1)
            return v, Fraction(0)
        return v, fixed[cell]

    ineqs = []  # a.x + c >= 0
    for hi, lo in _pairs(m, n):
        a1, c1 = lin(hi)
        a2, c2 = lin(lo)
        ineqs.append(([x - y for x, y in zip(a1, a2)], c1 - c2))
    eqs = []
    total = sum(mu)
    for i in range(1, m - 1):
        total += weight[i - 1]
        a = [Fraction(0)] * d
        for j in range(n):
            a[idx[(i, j)]] = Fraction(1)
        eqs.append((a, Fraction(total)))
    if sum(mu) + sum(weight) != sum(lam):
        return []
    if d == 0:
        p = tuple(tuple(fixed[(i, j)] for j in range(n)) for i in range(m))
        return [p] if all(a_c[1] >= 0 for a_c in ineqs) else []
    found = set()
    for tight in combinations(range(len(ineqs)), max(0, d - len(eqs))):
        A = [e[0] for e in eqs] + [ineqs[t][0] for t in tight]
        b = [e[1] for e in eqs] + [-ineqs[t][1] for t in tight]
        if gauss_rank(A) < d:
            continue
        # pick d independent rows
        rows, rhs = [], []
        for a, y in zip(A, b):
            if gauss_rank(rows + [a]) > len(rows):
                rows.append(a)
                rhs.append(y)
            if len(rows) == d:
                break
        x = solve_square(rows, rhs)
        if x is None:
            continue
        if any(sum(p * q for p, q in zip(a, x)) != y for a, y in zip(A, b)):
            continue
        if all(sum(p * q for p, q in zip(a, x)) + c >= 0 for a, c in ineqs):
            pat = tuple(tuple(x[idx[(i, j)]] if (i, j) in idx else fixed[(i, j)]
                              for j in range(n)) for i in range(m))
            found.add(pat)
    return sorted(found)


def exhaustive_decomposes(point, base, k) -> bool:
    """Is ``point`` (a flat tuple) a sum of k members of ``base``?"""
    for combo in product(base, repeat=k):
        if tuple(sum(v) for v in zip(*combo)) == point:
            return True
    return False
