"""Constructive decompositions of dilated lattice points, and contingency matrices."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .core import (DomainError, GTPattern, SkewShape, SkewTableau, concat_tableaux,
                   empty_tableau, format_rational)
from .shapes import is_union_of_rows


def _rows_used(shape: SkewShape) -> int:
    used = [i for i in range(shape.n) if shape.lam[i] > shape.mu[i]]
    return used[-1] + 1 if used else 0


def _undilate(shape: SkewShape, k: int) -> SkewShape:
    if k < 1 or any(x % k for x in shape.lam + shape.mu):
        raise DomainError(f"shape {shape} is not a {k}-fold dilation")
    return SkewShape(tuple(x // k for x in shape.lam), tuple(x // k for x in shape.mu))


def _check_recompose(parts: Sequence[SkewTableau], t: SkewTableau) -> None:
    acc = parts[0]
    for p in parts[1:]:
        acc = concat_tableaux(acc, p)
    if acc.rows != t.rows or acc.shape != t.shape:
        raise AssertionError("components do not recompose the tableau")


def _hook_arm(shape: SkewShape) -> tuple[int, int] | None:
    """(h, l) when the shape is the hook (h, 1^(l-1)) with empty inner shape."""
    if any(shape.mu):
        return None
    lam = [x for x in shape.lam if x]
    if not lam or any(x != 1 for x in lam[1:]):
        return None
    return lam[0], len(lam)


def _standard_weight(t: SkewTableau, k: int, boxes: int) -> None:
    if t.content_counts(boxes) != (k,) * boxes or t.max_content() > boxes:
        raise DomainError(f"tableau does not have weight {k}*(1,...,1)")


def hook_decompose(t: SkewTableau, k: int) -> tuple[SkewTableau, SkewTableau]:
    """Split a tableau of shape k*hook into a standard hook tableau plus the rest.

    The first column together with one one-box column for each content it
    misses (leftmost such column first) forms the standard part.
    """
    small = _undilate(t.shape, k)
    arm = _hook_arm(small)
    if arm is None:
        raise DomainError(f"{small} is not a hook")
    if k == 1:
        return t, empty_tableau(t.shape.dilate(0))
    h, l = arm
    boxes = h + l - 1
    _standard_weight(t, k, boxes)
    first = [t.rows[r][0] for r in range(l)]
    missing = sorted(set(range(1, boxes + 1)) - set(first))
    top = t.rows[0]
    # one-box columns: those of the first row beyond column k (beyond 1 for a single row)
    start = k if l > 1 else 1
    taken = []
    for j in missing:
        pos = next((c for c in range(start, len(top)) if top[c] == j and c not in taken), None)
        if pos is None:
            raise AssertionError(f"no one-box column holds content {j}")
        taken.append(pos)
    taken.sort()
    rows_p = [tuple([top[0]] + [top[c] for c in taken])] + [(x,) for x in first[1:]]
    drop = {0} | set(taken)
    rows_r = [tuple(x for c, x in enumerate(top) if c not in drop)] + \
        [t.rows[r][1:] for r in range(1, l)]
    tp = SkewTableau(small, tuple(rows_p))
    tr = SkewTableau(small.dilate(k - 1), tuple(rows_r))
    _check_recompose([tp, tr], t)
    return tp, tr


def _rotate(t: SkewTableau, width: int, top_content: int) -> SkewTableau:
    """Turn the tableau by a half turn inside a box of the given width."""
    n = _rows_used(t.shape)
    lam = tuple(width - t.shape.mu[r] for r in range(n - 1, -1, -1))
    mu = tuple(width - t.shape.lam[r] for r in range(n - 1, -1, -1))
    rows = tuple(tuple(top_content + 1 - x for x in reversed(t.rows[r]))
                 for r in range(n - 1, -1, -1))
    return SkewTableau(SkewShape(lam, mu), rows)


def _reverse_hook_arm(shape: SkewShape) -> tuple[int, int] | None:
    n = _rows_used(shape)
    lam, mu = shape.lam[:n], shape.mu[:n]
    if n == 0:
        return None
    h = lam[0]
    if any(x != h for x in lam) or any(x != h - 1 for x in mu[:-1]) or mu[-1] != 0:
        return None
    return h, n


def reverse_hook_decompose(t: SkewTableau, k: int) -> tuple[SkewTableau, SkewTableau]:
    """Same as hook_decompose for (h^l)/((h-1)^(l-1)), by a half turn onto a hook."""
    small = _undilate(t.shape, k)
    arm = _reverse_hook_arm(small)
    if arm is None:
        raise DomainError(f"{small} is not a reverse hook")
    if k == 1:
        return t, empty_tableau(t.shape.dilate(0))
    h, l = arm
    boxes = h + l - 1
    _standard_weight(t, k, boxes)
    tp, tr = hook_decompose(_rotate(t, k * h, boxes), k)
    out = (_rotate(tp, h, boxes), _rotate(tr, (k - 1) * h, boxes))
    out = tuple(SkewTableau(s, x.rows) for s, x in zip((small, small.dilate(k - 1)), out))
    _check_recompose(out, t)
    return out


def _full(step, t: SkewTableau, k: int) -> list[SkewTableau]:
    out = []
    while k > 1:
        tp, t = step(t, k)
        out.append(tp)
        k -= 1
    out.append(t)
    return out


def hook_decompose_full(t: SkewTableau, k: int) -> list[SkewTableau]:
    return _full(hook_decompose, t, k)


def reverse_hook_decompose_full(t: SkewTableau, k: int) -> list[SkewTableau]:
    return _full(reverse_hook_decompose, t, k)


def column_split(t: SkewTableau, k: int) -> list[SkewTableau]:
    """k tableaux of shape lam/mu from one of shape k*(lam/mu).

    Columns come in blocks of k; the j-th output takes the j-th column of
    every block.
    """
    small = _undilate(t.shape, k)
    out = []
    for j in range(1, k + 1):
        rows = []
        for r in range(small.n):
            row = []
            for b in range(small.mu[r] + 1, small.lam[r] + 1):
                row.append(t.entry(r + 1, (b - 1) * k + j))
            rows.append(tuple(row))
        out.append(SkewTableau(small, tuple(rows)))
    for part in out:
        if not part.is_semistandard():
            raise AssertionError("column split produced a non-semistandard tableau")
    _check_recompose(out, t)
    return out


# contingency matrices -------------------------------------------------------------

def box_counts(p: GTPattern) -> tuple[tuple[Fraction, ...], ...]:
    """a[i][j]: boxes (possibly fractional) with content j+1 in row i+1."""
    return tuple(tuple(p.rows[j + 1][i] - p.rows[j][i] for j in range(p.m - 1))
                 for i in range(p.n))


@dataclass(frozen=True)
class ContingencyMatrix:
    entries: tuple[tuple[int, ...], ...]
    mu: tuple[int, ...]  # inner shape, needed to invert
    columns: int  # number of contents, kept for the 0-row case

    @property
    def row_sums(self) -> tuple[int, ...]:
        return tuple(sum(r) for r in self.entries)

    @property
    def col_sums(self) -> tuple[int, ...]:
        return tuple(sum(r[j] for r in self.entries) for j in range(self.columns))

    def to_json(self):
        return {"entries": [list(r) for r in self.entries], "mu": list(self.mu),
                "columns": self.columns,
                "row_sums": list(self.row_sums), "col_sums": list(self.col_sums)}


def to_contingency(p: GTPattern) -> ContingencyMatrix:
    """Lattice point over a disjoint union of rows -> its box-count matrix."""
    shape = p.shape()
    if not is_union_of_rows(shape):
        raise DomainError(f"{shape} is not a disjoint union of rows")
    if not p.is_integral():
        raise DomainError("contingency matrices are taken of integral patterns")
    n = _rows_used(shape)
    a = box_counts(p)[:n]
    mu = tuple(shape.mu)
    while mu and not mu[-1]:
        mu = mu[:-1]
    return ContingencyMatrix(tuple(tuple(int(x) for x in r) for r in a), mu, p.m - 1)


def from_contingency(c: ContingencyMatrix, n: int | None = None) -> GTPattern:
    """Inverse of to_contingency; ``n`` pads the pattern with zero columns."""
    if any(x < 0 for r in c.entries for x in r):
        raise DomainError("contingency entries are non-negative")
    rows_used = len(c.entries)
    need = max(rows_used, len(c.mu))
    width = need if n is None else n
    if width < need:
        raise DomainError("too few columns for the matrix")
    ncontents = c.columns
    mu = list(c.mu) + [0] * (width - len(c.mu))
    rows = [tuple(mu)]
    for j in range(ncontents):
        prev = rows[-1]
        rows.append(tuple(prev[i] + (c.entries[i][j] if i < rows_used else 0)
                          for i in range(width)))
    return GTPattern(tuple(rows))


def format_matrix(a) -> list[list]:
    return [[format_rational(Fraction(x)) for x in r] for r in a]
