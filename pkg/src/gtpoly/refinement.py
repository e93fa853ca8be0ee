"""Weight refinement: row insertion, vertex lifting, box refinement and the poset."""
from __future__ import annotations

import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .core import (DomainError, GTPattern, SkewShape, SkewTableau, format_rational,
                   to_rational)
from .polytope import (PolytopeSpec, contains, count_lattice_points, idp_check, is_empty,
                       is_integral, is_unimodular_simplex)
from .tiling import Tiling, compute_tiling, face_dimension, push_to_vertex, tiling_from_groups


def is_refinement(wp: Sequence[int], w: Sequence[int]) -> bool:
    """True iff ``wp`` cuts into consecutive blocks summing to the parts of ``w``."""
    k = 0
    for part in w:
        acc = 0
        while acc < part and k < len(wp):
            acc += wp[k]
            k += 1
        if acc != part:
            return False
    return k == len(wp)


@dataclass(frozen=True)
class RefinementStep:
    """Split part ``position`` (1-based) of a weight as ``a + b``."""

    position: int
    a: int
    b: int

    def __post_init__(self):
        if self.position < 1:
            raise DomainError("positions are 1-based")
        if self.a < 1 or self.b < 1:
            raise DomainError("both parts of a split must be positive")

    def apply(self, w: Sequence[int]) -> tuple[int, ...]:
        i = self.position
        if i > len(w) or w[i - 1] != self.a + self.b:
            raise DomainError(f"cannot split part {i} of {tuple(w)} as {self.a}+{self.b}")
        return tuple(w[:i - 1]) + (self.a, self.b) + tuple(w[i:])


def covering_steps(w: Sequence[int]) -> list[RefinementStep]:
    return [RefinementStep(i + 1, a, x - a) for i, x in enumerate(w) for a in range(1, x)]


# row insertion ----------------------------------------------------------------

def _frac_gcd(values) -> Fraction:
    nums = [v.numerator for v in values if v]
    if not nums:
        return Fraction(1)
    dens = [v.denominator for v in values if v]
    return Fraction(math.gcd(*nums), math.lcm(*dens))


def row_links(top: Sequence, bottom: Sequence) -> set[tuple[int, int]]:
    """Pairs (i, j), 1-based, with top_i and bottom_j in one tile of the two-row pattern."""
    g = GTPattern((tuple(bottom), tuple(top)))
    t = compute_tiling(g)
    n = len(top)
    return {(i, j) for i in range(1, n + 1) for j in range(1, n + 1)
            if t.tile_of[2, i] == t.tile_of[1, j]}


def _interlaces(upper, lower) -> bool:
    n = len(upper)
    return all(upper[j] >= lower[j] for j in range(n)) and \
        all(lower[j] >= upper[j + 1] for j in range(n - 1))


def insert_row(top: Sequence, bottom: Sequence, t, links=None) -> tuple[Fraction, ...]:
    """A row ``nu`` with sum ``t`` squeezed between ``top`` and ``bottom``.

    Every pair in ``links`` (top index, bottom index, 1-based) stays in one
    tile of the three-row pattern; by default all tile links of the two-row
    pattern are kept.  Starting from ``nu = bottom`` one entry is raised by
    delta at a time, where delta is the largest rational making every entry
    and ``t`` integer multiples.  An entry strictly between its bounds is
    raised first (smallest index), then an entry equal to the bottom one but
    above the next top entry (smallest index), otherwise the rightmost entry
    that can move without splitting a linked tile.
    """
    lam = tuple(to_rational(x) for x in top)
    mu = tuple(to_rational(x) for x in bottom)
    t = to_rational(t)
    n = len(lam)
    if len(mu) != n:
        raise DomainError("top and bottom rows differ in length")
    if not _interlaces(lam, mu):
        raise DomainError("the top row does not interlace the bottom row")
    if not sum(mu) <= t <= sum(lam):
        raise DomainError(f"row sum {t} outside [{sum(mu)}, {sum(lam)}]")
    if links is None:
        links = row_links(lam, mu)
    links = {(int(i), int(j)) for i, j in links}
    for i, j in links:
        if not (1 <= i <= n and 1 <= j <= n) or lam[i - 1] != mu[j - 1]:
            raise DomainError(f"link {(i, j)} joins unequal entries")
    delta = _frac_gcd(list(lam) + list(mu) + [t])
    nu = list(mu)

    def keeps_links(cand) -> bool:
        tl = compute_tiling(GTPattern((mu, tuple(cand), lam)))
        return all(tl.tile_of[3, i] == tl.tile_of[1, j] for i, j in links)

    def movable(i) -> bool:
        v = nu[i] + delta
        if v > lam[i] or (i > 0 and v > mu[i - 1]):
            return False
        cand = list(nu)
        cand[i] = v
        return keeps_links(cand)

    steps = int((t - sum(mu)) / delta)
    for _ in range(steps):
        ok = [i for i in range(n) if movable(i)]
        case1 = [i for i in ok if lam[i] > nu[i] > mu[i]]
        case2 = [i for i in ok if i < n - 1 and lam[i] > nu[i] == mu[i] and nu[i] > lam[i + 1]]
        if case1:
            i = case1[0]
        elif case2:
            i = case2[0]
        elif ok:
            i = ok[-1]
        else:
            raise AssertionError("no admissible entry; the row insertion argument failed")
        nu[i] += delta
    return tuple(nu)


# lifting non-integral vertices --------------------------------------------------

@dataclass(frozen=True)
class LiftTrace:
    spec: PolytopeSpec
    inserted: GTPattern  # before the kernel walk
    tiling: Tiling  # inherited from the shorter pattern
    vertex: GTPattern
    adjustment: tuple[tuple[int, Fraction], ...]  # (tile index in ``tiling``, change)

    def to_json(self):
        return {"spec": self.spec.to_json(), "inserted": self.inserted.to_json(),
                "vertex": self.vertex.to_json(),
                "adjustment": [[k, format_rational(d)] for k, d in self.adjustment]}


def _inherited_tiling(g: GTPattern, gp: GTPattern, row: int) -> Tiling:
    """Tiles of ``g`` carried into ``gp``, which has a new row at 1-based index ``row``.

    A new-row cell joins an old tile only when that tile crosses between the
    two rows it was inserted between; otherwise it is a tile of its own.
    """
    old = compute_tiling(g)
    shift = lambda c: (c[0] + 1, c[1]) if c[0] >= row else c
    crossing = {k for k, tile in enumerate(old.tiles)
                if {i for i, _ in tile.cells} >= {row - 1, row}}
    groups = {k: [shift(c) for c in tile.cells] for k, tile in enumerate(old.tiles)}
    owner = {shift(c): k for k, tile in enumerate(old.tiles) for c in tile.cells}
    n = gp.n
    parent = {k: k for k in groups}

    def find(k):
        while parent[k] != k:
            k = parent[k]
        return k

    for j in range(1, n + 1):
        cell = (row, j)
        near = [(row + 1, j), (row + 1, j + 1), (row - 1, j), (row - 1, j - 1)]
        joined = None
        for c in near:
            if c in owner and owner[c] in crossing and gp[c] == gp[cell]:
                k = find(owner[c])
                if joined is None:
                    joined = k
                    groups[k].append(cell)
                elif k != joined:
                    parent[k] = joined
        if joined is None:
            key = ("new", j)
            parent[key] = key
            groups[key] = [cell]
    merged: dict = {}
    for k, cells in groups.items():
        merged.setdefault(find(k), []).extend(cells)
    return tiling_from_groups(gp, list(merged.values()))


def lift_trace(spec: PolytopeSpec, g: GTPattern, step: RefinementStep) -> LiftTrace:
    if spec.weight is None:
        raise DomainError("lifting needs a weighted polytope")
    if not contains(spec, g) or g.is_integral() or face_dimension(g) != 0:
        raise DomainError("G is not a non-integral vertex of the polytope")
    wp = step.apply(spec.weight)
    newspec = PolytopeSpec(spec.shape, wp, spec.dilation)
    i = step.position
    lower, upper = g.rows[i - 1], g.rows[i]
    nu = insert_row(upper, lower, sum(lower) + spec.dilation * step.a)
    gp = GTPattern(g.rows[:i] + (nu,) + g.rows[i:])
    inherited = _inherited_tiling(g, gp, i + 1)
    gpp = push_to_vertex(gp, tiling=inherited)
    adj = []
    for k, tile in enumerate(inherited.tiles):
        d = gpp[tile.cells[0]] - gp[tile.cells[0]]
        if d and all(gpp[c] - gp[c] == d for c in tile.cells):
            adj.append((k, d))
    if not contains(newspec, gpp) or face_dimension(gpp) != 0 or gpp.is_integral():
        raise AssertionError("the lifted pattern is not a non-integral vertex")
    return LiftTrace(newspec, gp, inherited, gpp, tuple(adj))


def lift_nonintegral_vertex(spec: PolytopeSpec, g: GTPattern,
                            step: RefinementStep) -> tuple[PolytopeSpec, GTPattern]:
    """Non-integral vertex of the refined polytope keeping the free tiles of ``g``."""
    tr = lift_trace(spec, g, step)
    return tr.spec, tr.vertex


# box refinement of tableaux --------------------------------------------------------

def _content_cells(t: SkewTableau, c: int) -> list[tuple[int, int]]:
    out = []
    for r, row in enumerate(t.rows):
        for off, x in enumerate(row):
            if x == c:
                out.append((t.shape.mu[r] + off + 1, r))
    return sorted(out)


def box_refine_tableau(t: SkewTableau, k: int, step: RefinementStep) -> SkewTableau:
    """Shift contents above ``i`` up by one, then relabel the k*b rightmost i's as i+1."""
    i = step.position
    cells = _content_cells(t, i)
    if len(cells) != k * (step.a + step.b):
        raise DomainError(f"expected {k * (step.a + step.b)} boxes of content {i}, "
                          f"found {len(cells)}")
    if len({c for c, _ in cells}) != len(cells):
        raise DomainError(f"two boxes of content {i} share a column")
    rows = [[x + 1 if x > i else x for x in row] for row in t.rows]
    for col, r in cells[len(cells) - k * step.b:]:
        rows[r][col - t.shape.mu[r] - 1] = i + 1
    return SkewTableau(t.shape, tuple(tuple(r) for r in rows))


def box_unrefine_tableau(t: SkewTableau, step: RefinementStep) -> SkewTableau:
    """Inverse relabelling: i+1 becomes i and larger contents drop by one."""
    i = step.position
    rows = tuple(tuple(x - 1 if x > i else x for x in row) for row in t.rows)
    return SkewTableau(t.shape, rows)


# the refinement poset ----------------------------------------------------------------

def partitions(total: int, largest: int | None = None) -> list[tuple[int, ...]]:
    """Partitions of ``total`` in reverse lexicographic order."""
    if largest is None:
        largest = total
    if total == 0:
        return [()]
    out = []
    for first in range(min(total, largest), 0, -1):
        out += [(first,) + rest for rest in partitions(total - first, first)]
    return out


def _permutations(p: tuple[int, ...]) -> list[tuple[int, ...]]:
    from itertools import permutations
    return sorted(set(permutations(p)), reverse=True)


@dataclass(frozen=True)
class NodeStatus:
    weight: tuple[int, ...]
    empty: bool
    integral: bool = False
    unimodular_simplex: bool = False
    idp_up_to: int = 0
    lattice_points: int = 0

    @property
    def style(self) -> str:
        if self.unimodular_simplex:
            return "solid"
        return "dashed" if self.integral else "dotted"

    def to_json(self):
        return {"weight": list(self.weight), "empty": self.empty, "integral": self.integral,
                "unimodular_simplex": self.unimodular_simplex, "idp_up_to": self.idp_up_to,
                "lattice_points": self.lattice_points, "style": self.style}


def node_label(w: Sequence[int]) -> str:
    if all(x < 10 for x in w):
        return "".join(map(str, w))
    return ",".join(map(str, w))


@dataclass(frozen=True)
class RefinementPoset:
    shape: SkewShape
    max_k: int
    nodes: tuple[NodeStatus, ...]  # non-empty weights only
    edges: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]  # coarse -> fine
    hidden: tuple[NodeStatus, ...] = field(default=())  # empty weights
    hidden_edges: tuple = field(default=())  # edges touching an empty weight

    def status(self, w) -> NodeStatus:
        w = tuple(w)
        for s in self.nodes + self.hidden:
            if s.weight == w:
                return s
        raise KeyError(w)

    def to_dot(self) -> str:
        lines = ["digraph poset {", "  node [shape=box];"]
        for s in self.nodes:
            lab = node_label(s.weight)
            lines.append(f'  "{lab}" [label="{lab}", style={s.style}];')
        for a, b in self.edges:
            lines.append(f'  "{node_label(a)}" -> "{node_label(b)}";')
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_json(self):
        return {"shape": self.shape.to_json(), "max_k": self.max_k,
                "nodes": [s.to_json() for s in self.nodes],
                "edges": [[list(a), list(b)] for a, b in self.edges]}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True) + "\n"


def node_status(spec: PolytopeSpec, max_k: int) -> NodeStatus:
    w = spec.weight
    if is_empty(spec):
        return NodeStatus(w, True)
    npts = count_lattice_points(spec)
    if not is_integral(spec):
        return NodeStatus(w, False, lattice_points=npts)
    idp = 1
    if max_k >= 2:
        v = idp_check(spec, max_k)
        idp = max_k if v.holds else v.k - 1
    return NodeStatus(w, False, True, is_unimodular_simplex(spec), idp, npts)


def build_poset(lam: Sequence[int], mu: Sequence[int] = (), max_k_for_idp: int = 1,
                permutations: bool = False, threads: int = 1) -> RefinementPoset:
    """Weights of |lam/mu| ordered by single-part splits, each annotated with its polytope."""
    shape = SkewShape(tuple(lam), tuple(mu))
    weights = partitions(shape.size)
    if permutations:
        weights = [c for p in weights for c in _permutations(p)]
    specs = [PolytopeSpec(shape, w) for w in weights]
    run = lambda sp: node_status(sp, max_k_for_idp)
    if threads > 1:
        with ThreadPoolExecutor(threads) as ex:
            stats = list(ex.map(run, specs))
    else:
        stats = [run(sp) for sp in specs]
    known = {s.weight: s for s in stats}
    edges = set()
    for w in weights:
        for st in covering_steps(w):
            wp = st.apply(w)
            if not permutations:
                wp = tuple(sorted(wp, reverse=True))
            edges.add((w, wp))
    order = {w: k for k, w in enumerate(weights)}
    ordered = sorted(edges, key=lambda e: (order[e[0]], order[e[1]]))
    shown = tuple(e for e in ordered if not known[e[0]].empty and not known[e[1]].empty)
    hidden_edges = tuple(e for e in ordered if e not in set(shown))
    return RefinementPoset(shape, max_k_for_idp,
                           tuple(s for s in stats if not s.empty), shown,
                           tuple(s for s in stats if s.empty), hidden_edges)


def monotonicity_violations(poset: RefinementPoset) -> list[tuple[tuple, tuple, str]]:
    """Edges w -> w' breaking one of the four refinement monotonicity properties."""
    bad = []
    for a, b in poset.edges + poset.hidden_edges:
        s, sp = poset.status(a), poset.status(b)
        if sp.lattice_points < s.lattice_points:
            bad.append((a, b, "lattice points"))
        if sp.empty and not s.empty:
            bad.append((a, b, "emptiness"))
        if s.empty:
            continue  # an empty polytope is vacuously integral with the IDP
        if sp.integral and not s.integral:
            bad.append((a, b, "integrality"))
        if sp.integral and s.idp_up_to < sp.idp_up_to:
            bad.append((a, b, "decomposition"))
    return bad
