"""Tilings of GT-patterns and the face-dimension certificate.

Neighbours of x^i_j are x^{i+1}_j, x^{i+1}_{j+1}, x^{i-1}_j and
x^{i-1}_{j-1}; entries next to each other in one row are not neighbours.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from . import linalg
from .core import DomainError, GTPattern

Cell = tuple[int, int]  # 1-based (row, col)


class _DSU:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b):
        a, b = self.find(a), self.find(b)
        if a != b:
            self.parent[max(a, b)] = min(a, b)


def up_neighbours(m: int, n: int, i: int, j: int) -> list[Cell]:
    """Neighbours in the row above: x^{i+1}_j and x^{i+1}_{j+1}."""
    if i >= m:
        return []
    return [(i + 1, j)] + ([(i + 1, j + 1)] if j < n else [])


@dataclass(frozen=True)
class Tile:
    cells: tuple[Cell, ...]
    content: Fraction
    fixed: bool


@dataclass(frozen=True)
class Tiling:
    m: int
    n: int
    tile_of: dict
    tiles: tuple[Tile, ...]

    @property
    def free(self) -> list[int]:
        return [k for k, t in enumerate(self.tiles) if not t.fixed]

    def to_json(self):
        from .core import format_rational
        return [{"cells": [list(c) for c in t.cells],
                 "content": format_rational(t.content),
                 "fixed": t.fixed} for t in self.tiles]


def _scan_order(m: int, n: int) -> list[Cell]:
    # top row first, left to right
    return [(i, j) for i in range(m, 0, -1) for j in range(1, n + 1)]


def tiling_from_groups(p: GTPattern, groups: Sequence[Sequence[Cell]]) -> Tiling:
    """Build a Tiling object from an explicit partition of the cells."""
    order = {c: k for k, c in enumerate(_scan_order(p.m, p.n))}
    groups = sorted((sorted(g, key=order.get) for g in groups), key=lambda g: order[g[0]])
    tile_of = {}
    tiles = []
    for k, g in enumerate(groups):
        for c in g:
            tile_of[c] = k
        fixed = any(i in (1, p.m) for i, _ in g)
        tiles.append(Tile(tuple(g), p[g[0]], fixed))
    return Tiling(p.m, p.n, tile_of, tuple(tiles))


def compute_tiling(p: GTPattern) -> Tiling:
    m, n = p.m, p.n
    dsu = _DSU(m * n)
    idx = lambda i, j: (i - 1) * n + (j - 1)
    for i in range(1, m):
        for j in range(1, n + 1):
            for (a, b) in up_neighbours(m, n, i, j):
                if p[i, j] == p[a, b]:
                    dsu.union(idx(i, j), idx(a, b))
    groups: dict[int, list[Cell]] = {}
    for i in range(1, m + 1):
        for j in range(1, n + 1):
            groups.setdefault(dsu.find(idx(i, j)), []).append((i, j))
    return tiling_from_groups(p, list(groups.values()))


def tiling_matrix(t: Tiling) -> tuple[tuple[int, ...], ...]:
    """m x s matrix; matrix row r counts cells in pattern row m - r."""
    free = t.free
    rows = []
    for r in range(t.m):
        prow = t.m - r
        rows.append(tuple(sum(1 for (i, _) in t.tiles[k].cells if i == prow) for k in free))
    return tuple(rows)


def _ncols(M) -> int | None:
    return len(M[0]) if M else None


def kernel_dimension(M, ncols: int | None = None) -> int:
    s = _ncols(M) if ncols is None else ncols
    if not s:
        return 0
    return s - linalg.rank(M)


def kernel_basis(M, ncols: int | None = None) -> list[list[Fraction]]:
    s = _ncols(M) if ncols is None else ncols
    if not s:
        return []
    return linalg.kernel_basis(M, s)


def face_dimension(p: GTPattern, weighted: bool = True) -> int:
    """Dimension of the minimal face containing ``p``.

    With fixed row sums this is the nullity of the tiling matrix; without
    them every free tile moves independently.
    """
    t = compute_tiling(p)
    if not weighted:
        return len(t.free)
    return kernel_dimension(tiling_matrix(t), len(t.free))


def _check_member(p: GTPattern, spec) -> None:
    from .polytope import contains
    if not contains(spec, p):
        raise DomainError("pattern is not in the polytope")


def minimal_face_dimension(p: GTPattern, spec) -> int:
    _check_member(p, spec)
    return face_dimension(p, weighted=spec.weight is not None)


def is_vertex(p: GTPattern, spec) -> bool:
    return minimal_face_dimension(p, spec) == 0


def _adjacent_pairs(m: int, n: int):
    """(larger, smaller) cell pairs of every interlacing inequality."""
    for i in range(1, m):
        for j in range(1, n + 1):
            yield (i + 1, j), (i, j)
            if j < n:
                yield (i, j), (i + 1, j + 1)


def _merge_new_ties(p: GTPattern, before: GTPattern, t: Tiling) -> Tiling:
    # keep the given partition; join only pairs that just became equal
    dsu = _DSU(len(t.tiles))
    for hi, lo in _adjacent_pairs(p.m, p.n):
        if p[hi] == p[lo] and before[hi] != before[lo]:
            dsu.union(t.tile_of[hi], t.tile_of[lo])
    groups: dict[int, list[Cell]] = {}
    for k, tile in enumerate(t.tiles):
        groups.setdefault(dsu.find(k), []).extend(tile.cells)
    return tiling_from_groups(p, list(groups.values()))


def _max_step(p: GTPattern, t: Tiling, move: dict) -> Fraction | None:
    """Largest s >= 0 keeping every inequality; None when unbounded."""
    best = None
    for hi, lo in _adjacent_pairs(p.m, p.n):
        a, b = t.tile_of[hi], t.tile_of[lo]
        if a == b:
            continue
        rate = move.get(a, 0) - move.get(b, 0)
        if rate < 0:
            s = (p[hi] - p[lo]) / -rate
            if best is None or s < best:
                best = s
    return best


def push_to_vertex(p: GTPattern, spec=None, tiling: Tiling | None = None) -> GTPattern:
    """Walk along tiling-kernel directions until the tiling matrix has full rank.

    Another partition into equal-valued groups (for instance one inherited
    from a shorter pattern) may be supplied as ``tiling``; it is then kept,
    joined with newly created ties, for the whole walk.
    When no direction of the supplied partition can move, the walk falls
    back to the true tiling.
    """
    if spec is not None:
        _check_member(p, spec)
    weighted = spec is None or spec.weight is not None
    t = tiling if tiling is not None else compute_tiling(p)
    while True:
        free = t.free
        M = tiling_matrix(t)
        if weighted:
            basis = kernel_basis(M, len(free))
        else:
            basis = [[Fraction(int(a == b)) for a in range(len(free))] for b in range(len(free))]
        if not basis:
            return p
        moved = False
        for vec in basis:
            for sign in (1, -1):
                move = {k: sign * v for k, v in zip(free, vec) if v}
                step = _max_step(p, t, move)
                if step is None:
                    raise DomainError("unbounded direction; the polytope is not bounded")
                if step > 0:
                    rows = [list(r) for r in p.rows]
                    for k, v in move.items():
                        for (i, j) in t.tiles[k].cells:
                            rows[i - 1][j - 1] += step * v
                    new = GTPattern(tuple(tuple(r) for r in rows))
                    t = _merge_new_ties(new, p, t)
                    p = new
                    moved = True
                    break
            if moved:
                break
        if not moved:
            true = compute_tiling(p)
            if len(true.tiles) == len(t.tiles):
                raise AssertionError("stuck walk on the true tiling")
            t = true


def maximal_minors(M):
    """Yield every r x r minor of M where r = rank(M)."""
    if not M or not M[0]:
        return
    r = linalg.rank(M)
    rows = [k for k, row in enumerate(M) if any(row)]
    for rs in combinations(rows, r):
        for cs in combinations(range(len(M[0])), r):
            yield linalg.det([[M[a][b] for b in cs] for a in rs])


def unimodular_minor_certificate(M) -> bool:
    """True iff every maximal-rank minor lies in {-1, 0, 1}."""
    return all(d in (-1, 0, 1) for d in maximal_minors(M))
