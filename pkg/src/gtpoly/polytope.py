"""The GT-polytope of a skew shape and weight, and queries on it.

Only the interior rows 2..m-1 carry variables; entries pinned by the
boundary rows (lower bound equals upper bound) are dropped as well.
Vertices come from the double description method of cddlib run in exact
rational mode.
"""
from __future__ import annotations

import functools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

import cdd
import numpy as np

from . import linalg
from .core import DomainError, GTPattern, SkewShape, is_valid
from .tiling import face_dimension


@dataclass(frozen=True)
class PolytopeSpec:
    """P^k_{lambda/mu, w}; ``weight=None`` gives the weightless polytope with ``rows`` rows."""

    shape: SkewShape
    weight: tuple[int, ...] | None = None
    dilation: int = 1
    rows: int | None = None

    def __post_init__(self):
        if self.dilation < 0:
            raise DomainError("dilation must be non-negative")
        if self.weight is not None:
            w = tuple(int(x) for x in self.weight)
            if any(x < 0 for x in w):
                raise DomainError("weights are non-negative")
            object.__setattr__(self, "weight", w)
            if self.rows is not None and self.rows != len(w) + 1:
                raise DomainError("rows is implied by the weight")
            object.__setattr__(self, "rows", len(w) + 1)
        elif self.rows is None or self.rows < 1:
            raise DomainError("the weightless polytope needs a row count")

    @property
    def m(self) -> int:
        return self.rows

    @property
    def n(self) -> int:
        return self.shape.n

    @property
    def lam(self) -> tuple[int, ...]:
        return tuple(self.dilation * x for x in self.shape.lam)

    @property
    def mu(self) -> tuple[int, ...]:
        return tuple(self.dilation * x for x in self.shape.mu)

    @property
    def scaled_weight(self) -> tuple[int, ...] | None:
        if self.weight is None:
            return None
        return tuple(self.dilation * x for x in self.weight)

    def dilate(self, k: int) -> "PolytopeSpec":
        return PolytopeSpec(self.shape, self.weight, self.dilation * k, self.rows)

    def key(self):
        return (self.shape.lam, self.shape.mu, self.weight, self.dilation, self.rows)

    def __hash__(self):
        return hash(self.key())

    def __eq__(self, other):
        return isinstance(other, PolytopeSpec) and self.key() == other.key()

    def to_json(self):
        return {"shape": self.shape.to_json(),
                "weight": None if self.weight is None else list(self.weight),
                "dilation": self.dilation, "rows": self.rows}


def weight_spec(lam, weight, mu=(), k: int = 1) -> PolytopeSpec:
    return PolytopeSpec(SkewShape(tuple(lam), tuple(mu)), tuple(weight), k)


def contains(spec: PolytopeSpec, p: GTPattern) -> bool:
    if p.n != spec.n:
        raise DomainError(f"pattern has {p.n} columns, the polytope {spec.n}")
    if p.m != spec.m:
        return False
    if tuple(p.top) != spec.lam or tuple(p.bottom) != spec.mu:
        return False
    if not is_valid(p):
        return False
    if spec.weight is not None:
        sums = p.row_sums()
        if any(b - a != w for a, b, w in zip(sums, sums[1:], spec.scaled_weight)):
            return False
    return True


class Geometry:
    """H-description in reduced coordinates."""

    def __init__(self, spec: PolytopeSpec):
        self.spec = spec
        m, n = spec.m, spec.n
        lam, mu = spec.lam, spec.mu
        self.m, self.n = m, n
        self.empty = False
        self.row_sums = None
        if spec.weight is not None:
            w = spec.scaled_weight
            if sum(w) != sum(lam) - sum(mu):
                self.empty = True
            acc = [sum(mu)]
            for x in w:
                acc.append(acc[-1] + x)
            self.row_sums = acc
        if m == 1 and lam != mu:
            self.empty = True
        lo, hi = {}, {}
        for i in range(1, m + 1):
            for j in range(1, n + 1):
                if i == 1:
                    lo[i, j] = hi[i, j] = mu[j - 1]
                elif i == m:
                    lo[i, j] = hi[i, j] = lam[j - 1]
                else:
                    a = mu[j - 1]
                    if j + m - i <= n:
                        a = max(a, lam[j + m - i - 1])
                    b = lam[j - 1]
                    if j - i + 1 >= 1:
                        b = min(b, mu[j - i])
                    lo[i, j], hi[i, j] = a, b
                if lo[i, j] > hi[i, j]:
                    self.empty = True
        self.lo, self.hi = lo, hi
        self.var = {}
        self.fixed = {}
        for i in range(1, m + 1):
            for j in range(1, n + 1):
                if lo[i, j] == hi[i, j]:
                    self.fixed[i, j] = Fraction(lo[i, j])
                else:
                    self.var[i, j] = len(self.var)
        self.cells = list(self.var)
        d = len(self.var)
        self.dim_ambient = d
        # inequalities c + a.z >= 0 from up >= lo pairs
        self.ineqs: list[tuple[Fraction, tuple[Fraction, ...]]] = []
        seen = set()
        for i in range(1, m):
            for j in range(1, n + 1):
                ups = [(i + 1, j)] + ([(i + 1, j + 1)] if j < n else [])
                for up, low in [(u, (i, j)) for u in ups]:
                    # x^{i+1}_j >= x^i_j ; x^i_j >= x^{i+1}_{j+1}
                    a, b = (up, low) if up[1] == j else (low, up)
                    c, coef = self._affine(a, b)
                    if not any(coef):
                        if c < 0:
                            self.empty = True
                        continue
                    key = (c, coef)
                    if key not in seen:
                        seen.add(key)
                        self.ineqs.append(key)
        self.eqs: list[tuple[Fraction, tuple[Fraction, ...]]] = []
        if self.row_sums is not None:
            for i in range(2, m):
                coef = [Fraction(0)] * d
                const = Fraction(-self.row_sums[i - 1])
                for j in range(1, n + 1):
                    if (i, j) in self.var:
                        coef[self.var[i, j]] += 1
                    else:
                        const += self.fixed[i, j]
                if not any(coef):
                    if const != 0:
                        self.empty = True
                    continue
                self.eqs.append((const, tuple(coef)))
            if m >= 2 and sum(lam) != self.row_sums[-1]:
                self.empty = True

    def _affine(self, a, b):
        """x_a - x_b as (const, coefficients)."""
        coef = [Fraction(0)] * len(self.var)
        const = Fraction(0)
        for cell, sgn in ((a, 1), (b, -1)):
            if cell in self.var:
                coef[self.var[cell]] += sgn
            else:
                const += sgn * self.fixed[cell]
        return const, tuple(coef)

    def to_pattern(self, z: Sequence) -> GTPattern:
        rows = []
        for i in range(1, self.m + 1):
            rows.append(tuple(Fraction(z[self.var[i, j]]) if (i, j) in self.var
                              else self.fixed[i, j] for j in range(1, self.n + 1)))
        return GTPattern(tuple(rows))

    def to_vars(self, p: GTPattern) -> tuple:
        return tuple(p[c] for c in self.cells)

    def tight(self, z) -> int:
        mask = 0
        for k, (c, a) in enumerate(self.ineqs):
            if c + sum(x * y for x, y in zip(a, z) if x) == 0:
                mask |= 1 << k
        return mask


@functools.lru_cache(maxsize=512)
def geometry(spec: PolytopeSpec) -> Geometry:
    return Geometry(spec)


def _cdd_matrix(g: Geometry):
    d = g.dim_ambient
    rows = [[c] + list(a) for c, a in g.ineqs] or [[1] + [0] * d]
    mat = cdd.Matrix(rows, number_type="fraction")
    mat.rep_type = cdd.RepType.INEQUALITY
    lin = [[c] + list(a) for c, a in g.eqs]
    if lin:
        mat.extend(lin, linear=True)
    return mat


def _dd_vertices(g: Geometry) -> list[tuple[Fraction, ...]]:
    if g.empty:
        return []
    if g.dim_ambient == 0:
        return [()]
    mat = _cdd_matrix(g)
    # the diagonal inequalities are often implied; dropping them first
    # keeps the exact double description from blowing up
    mat.canonicalize()
    gens = cdd.Polyhedron(mat).get_generators()
    out = []
    for k in range(gens.row_size):
        row = gens[k]
        if row[0] != 1 or k in gens.lin_set:
            raise DomainError("the polytope is unbounded")
        out.append(tuple(Fraction(x) for x in row[1:]))
    return out


def _lp_vertex(g: Geometry, objective) -> tuple[Fraction, ...] | None:
    """Exact simplex optimum (a basic solution, hence a vertex), None if infeasible."""
    if g.empty:
        return None
    if g.dim_ambient == 0:
        return ()
    mat = _cdd_matrix(g)
    mat.obj_type = cdd.LPObjType.MAX
    mat.obj_func = [0] + list(objective)
    lp = cdd.LinProg(mat)
    lp.solve()
    if lp.status != cdd.LPStatusType.OPTIMAL:
        return None
    return tuple(Fraction(x) for x in lp.primal_solution)


@functools.lru_cache(maxsize=512)
def _vertices(spec: PolytopeSpec) -> tuple[GTPattern, ...]:
    g = geometry(spec)
    pats = [g.to_pattern(z) for z in _dd_vertices(g)]
    pats = sorted(set(pats), key=lambda p: p.rows)
    return tuple(pats)


def enumerate_vertices(spec: PolytopeSpec) -> list[GTPattern]:
    return list(_vertices(spec))


@functools.lru_cache(maxsize=512)
def is_empty(spec: PolytopeSpec) -> bool:
    g = geometry(spec)
    return _lp_vertex(g, [0] * g.dim_ambient) is None


PROBES = 8


def probe_nonintegral_vertex(spec: PolytopeSpec, probes: int = PROBES) -> GTPattern | None:
    """Optimize a few fixed pseudo-random objectives; return a fractional optimum.

    Cheap evidence against integrality: on polytopes with thousands of
    vertices one of these optima is usually fractional already.
    """
    g = geometry(spec)
    rng = random.Random(2024)
    for _ in range(probes):
        z = _lp_vertex(g, [rng.randint(-97, 97) for _ in range(g.dim_ambient)])
        if z is None:
            return None
        if any(x.denominator != 1 for x in z):
            p = g.to_pattern(z)
            if face_dimension(p, spec.weight is not None) == 0:
                return p
    return None


@functools.lru_cache(maxsize=512)
def is_integral(spec: PolytopeSpec) -> bool:
    if is_empty(spec):
        return False
    if probe_nonintegral_vertex(spec) is not None:
        return False
    return all(v.is_integral() for v in _vertices(spec))


def nonintegral_vertices(spec: PolytopeSpec) -> list[GTPattern]:
    return [v for v in _vertices(spec) if not v.is_integral()]


def nonintegral_witness(spec: PolytopeSpec) -> GTPattern | None:
    p = probe_nonintegral_vertex(spec)
    if p is not None:
        return p
    bad = nonintegral_vertices(spec)
    return bad[0] if bad else None


def dimension(spec: PolytopeSpec) -> int:
    """Affine dimension, -1 for the empty polytope."""
    vs = _vertices(spec)
    if not vs:
        return -1
    g = geometry(spec)
    zs = [g.to_vars(v) for v in vs]
    return linalg.rank([[a - b for a, b in zip(z, zs[0])] for z in zs[1:]]) if len(zs) > 1 else 0


# lattice points -------------------------------------------------------------

def _row_choices(lo, hi, total):
    """Integer vectors x with lo <= x <= hi (entrywise), weakly decreasing
    handled by the bounds, and sum ``total`` (None = any)."""
    n = len(lo)
    suffix_lo = [0] * (n + 1)
    suffix_hi = [0] * (n + 1)
    for j in range(n - 1, -1, -1):
        suffix_lo[j] = suffix_lo[j + 1] + lo[j]
        suffix_hi[j] = suffix_hi[j + 1] + hi[j]
    cur = [0] * n

    def rec(j, remaining):
        if j == n:
            if total is None or remaining == 0:
                yield tuple(cur)
            return
        a, b = lo[j], hi[j]
        if total is not None:
            a = max(a, remaining - suffix_hi[j + 1])
            b = min(b, remaining - suffix_lo[j + 1])
        for x in range(a, b + 1):
            cur[j] = x
            yield from rec(j + 1, None if total is None else remaining - x)

    yield from rec(0, total)


def _ceil(x):
    return -((-x) // 1)


def lattice_rows(spec: PolytopeSpec) -> Iterator[tuple[tuple[int, ...], ...]]:
    """Integral patterns as tuples of int rows, lexicographically by rows bottom-up."""
    g = geometry(spec)
    if g.empty:
        return
    m, n = g.m, g.n
    lam, mu = spec.lam, spec.mu
    if m == 1:
        yield (tuple(lam),)
        return
    rows: list[tuple[int, ...]] = [tuple(mu)]

    def rec(i):
        # choose row i (1-based) above rows[-1]
        below = rows[-1]
        if i == m:
            if all(lam[j] >= below[j] for j in range(n)) and \
                    all(below[j] >= lam[j + 1] for j in range(n - 1)):
                if g.row_sums is None or sum(lam) == g.row_sums[-1]:
                    yield tuple(rows) + (tuple(lam),)
            return
        lo = [max(below[j], int(g.lo[i, j + 1])) for j in range(n)]
        hi = [int(g.hi[i, j + 1]) for j in range(n)]
        for j in range(1, n):
            hi[j] = min(hi[j], below[j - 1])
        if any(a > b for a, b in zip(lo, hi)):
            return
        total = None if g.row_sums is None else g.row_sums[i - 1]
        for row in _row_choices(lo, hi, total):
            rows.append(row)
            yield from rec(i + 1)
            rows.pop()

    yield from rec(2)


def enumerate_lattice_points(spec: PolytopeSpec) -> list[GTPattern]:
    return [GTPattern(r) for r in lattice_rows(spec)]


def count_lattice_points(spec: PolytopeSpec) -> int:
    return sum(1 for _ in lattice_rows(spec))


def weightless_points(shape: SkewShape, m: int, bound: int | None = None) -> list[GTPattern]:
    if bound is not None and shape.n and bound < shape.lam[0]:
        raise DomainError("bound must be at least lambda_1")
    return enumerate_lattice_points(PolytopeSpec(shape, None, 1, m))


# integer decomposition -------------------------------------------------------

@dataclass(frozen=True)
class IDPVerdict:
    holds: bool
    max_k: int
    k: int | None = None
    counterexample: GTPattern | None = None

    def to_json(self):
        out = {"holds": self.holds, "max_k": self.max_k}
        if not self.holds:
            out["k"] = self.k
            out["counterexample"] = self.counterexample.to_json()
        return out


def _flat(rows) -> tuple[int, ...]:
    return tuple(x for r in rows for x in r)


def _pairs(m, n):
    out = []
    for i in range(m - 1):
        for j in range(n):
            out.append(((i + 1) * n + j, i * n + j))
            if j + 1 < n:
                out.append((i * n + j, (i + 1) * n + j + 1))
    return out


def idp_check(spec: PolytopeSpec, max_k: int) -> IDPVerdict:
    """Search decompositions of every lattice point of P^k, 2 <= k <= max_k."""
    if spec.dilation != 1:
        raise DomainError("idp_check expects an undilated spec")
    if not is_integral(spec):
        raise DomainError("the integer decomposition property is checked on integral polytopes")
    m, n = spec.m, spec.n
    pairs = _pairs(m, n)
    base = [_flat(r) for r in lattice_rows(spec)]
    base_set = set(base)
    # z = x - y interlaces iff x[a] - x[b] >= y[a] - y[b] for every pair (a, b)
    hi = np.array([a for a, _ in pairs], dtype=np.intp)
    lo = np.array([b for _, b in pairs], dtype=np.intp)
    arr = np.array(base, dtype=np.int64).reshape(len(base), m * n)
    gaps = arr[:, hi] - arr[:, lo]
    memo: dict = {}

    def decomposable(x, k):
        if k == 1:
            return x in base_set
        key = (x, k)
        if key in memo:
            return memo[key]
        xv = np.array(x, dtype=np.int64)
        fits = np.flatnonzero(np.all(gaps <= xv[hi] - xv[lo], axis=1))
        res = False
        for idx in fits:  # canonical enumeration order
            z = tuple(a - b for a, b in zip(x, base[idx]))
            if decomposable(z, k - 1):
                res = True
                break
        memo[key] = res
        return res

    for k in range(2, max_k + 1):
        for rows in lattice_rows(spec.dilate(k)):
            if not decomposable(_flat(rows), k):
                return IDPVerdict(False, max_k, k, GTPattern(rows))
    return IDPVerdict(True, max_k)


# pulling triangulations ------------------------------------------------------

@dataclass(frozen=True)
class FaceDescriptor:
    tight: frozenset
    dimension: int
    vertices: frozenset


@dataclass(frozen=True)
class Simplex:
    vertices: tuple[GTPattern, ...]
    normalized_volume: int


class _Complex:
    """Vertex/facet incidences of an integral polytope in reduced coordinates."""

    def __init__(self, spec: PolytopeSpec):
        if not is_integral(spec):
            raise DomainError("pulling triangulations are taken of integral polytopes")
        g = geometry(spec)
        self.g = g
        self.patterns = list(_vertices(spec))
        self.z = [tuple(int(x) for x in g.to_vars(p)) for p in self.patterns]
        nv = len(self.z)
        self.full = (1 << nv) - 1
        # slack of inequality k at vertex v, and bitmasks of where it is 0 / >= 2
        self.slack = [[int(c + sum(x * y for x, y in zip(a, z) if x)) for z in self.z]
                      for c, a in g.ineqs]
        self.masks = [sum(1 << v for v, s in enumerate(row) if s == 0) for row in self.slack]
        self.big = [sum(1 << v for v, s in enumerate(row) if s >= 2) for row in self.slack]
        self.ineq_sets = sorted({s for s in self.masks if s}, key=lambda s: -s.bit_count())
        self._cuts: dict = {}
        self.dim = dimension(spec)
        self._facets: dict = {}
        self._basis: dict = {}

    def members(self, face: int) -> list[int]:
        out = []
        v = 0
        while face:
            if face & 1:
                out.append(v)
            face >>= 1
            v += 1
        return out

    def facets(self, face: int) -> list[int]:
        if face in self._facets:
            return self._facets[face]
        cuts: dict[int, list[int]] = {}
        for k, s in enumerate(self.masks):
            f = face & s
            if f and f != face:
                cuts.setdefault(f, []).append(k)
        cands = sorted(cuts, key=lambda s: -s.bit_count())
        out = []
        for c in cands:
            if not any(c & o == c for o in out):
                out.append(c)
        self._facets[face] = out
        self._cuts[face] = {f: cuts[f] for f in out}
        return out

    def cutting(self, face: int, facet: int) -> list[int]:
        """Inequalities whose zero set meets ``face`` exactly in ``facet``."""
        self.facets(face)
        return self._cuts[face][facet]

    def all_heights_one(self, face: int) -> bool:
        """Sufficient test that every pulled height below ``face`` is 1.

        If each facet K of F is cut out by an integral inequality h with
        0 <= h <= 1 on F, then every facet of every face F' of F is F' cut
        with such an h, and a lattice point off it has h = 1, so its height
        (a positive integer dividing h) is 1.  This holds for any order.
        """
        return all(any(face & self.big[k] == 0 for k in self.cutting(face, f))
                   for f in self.facets(face))

    def lattice_basis(self, face: int) -> list[list[int]]:
        if face not in self._basis:
            vs = self.members(face)
            z0 = self.z[vs[0]]
            diffs = [[a - b for a, b in zip(self.z[v], z0)] for v in vs[1:]]
            self._basis[face] = linalg.saturation_basis(diffs) if diffs else []
        return self._basis[face]

    def height(self, p: int, facet: int, face: int | None = None) -> int:
        if face is not None and any(self.slack[k][p] == 1 for k in self.cutting(face, facet)):
            return 1
        base = self.lattice_basis(facet)
        g0 = self.z[self.members(facet)[0]]
        return linalg.lattice_index(base + [[a - b for a, b in zip(self.z[p], g0)]])

    def descriptor(self, face: int, dim: int) -> FaceDescriptor:
        vs = self.members(face)
        tight = frozenset(k for k, (c, a) in enumerate(self.g.ineqs)
                          if all(c + sum(x * y for x, y in zip(a, self.z[v]) if x) == 0 for v in vs))
        return FaceDescriptor(tight, dim, frozenset(vs))


def vertex_order(spec: PolytopeSpec, order: str | Sequence[int] = "lex", seed: int = 0) -> list[int]:
    """Indices into enumerate_vertices; the last one is pulled first."""
    nv = len(_vertices(spec))
    if order == "lex":
        return list(range(nv))
    if order == "revlex":
        return list(range(nv - 1, -1, -1))
    if order == "shuffle":
        out = list(range(nv))
        random.Random(seed).shuffle(out)
        return out
    out = [int(x) for x in order]
    if sorted(out) != list(range(nv)):
        raise DomainError("vertex order must be a permutation of the vertex indices")
    return out


def _pulled(face: int, rank: list[int]) -> int:
    best, v = -1, 0
    f = face
    idx = -1
    while f:
        if f & 1 and rank[v] > best:
            best, idx = rank[v], v
        f >>= 1
        v += 1
    return idx


def pulling_triangulation(spec: PolytopeSpec, order: str | Sequence[int] = "lex",
                          seed: int = 0) -> list[Simplex]:
    """Materialize the pulling triangulation (use on small polytopes)."""
    cx = _Complex(spec)
    perm = vertex_order(spec, order, seed)
    rank = [0] * len(perm)
    for pos, v in enumerate(perm):
        rank[v] = pos
    memo: dict = {}

    def tri(face, dim):
        if face in memo:
            return memo[face]
        if dim == 0:
            res = [(cx.members(face)[0],)]
        else:
            p = _pulled(face, rank)
            res = []
            for f in cx.facets(face):
                if not f >> p & 1:
                    res += [s + (p,) for s in tri(f, dim - 1)]
        memo[face] = res
        return res

    out = []
    for s in tri(cx.full, cx.dim):
        z0 = cx.z[s[0]]
        diffs = [[a - b for a, b in zip(cx.z[v], z0)] for v in s[1:]]
        vol = linalg.lattice_index(diffs) if diffs else 1
        out.append(Simplex(tuple(cx.patterns[v] for v in sorted(s)), vol))
    return out


@dataclass(frozen=True)
class PullingCheck:
    unimodular: bool
    faces_visited: int
    bad_face: FaceDescriptor | None = None


def pulling_is_unimodular(spec: PolytopeSpec, order: str | Sequence[int] = "lex",
                          seed: int = 0, prune: bool = True) -> PullingCheck:
    """Decide whether every simplex of the pulling triangulation is unimodular.

    The pyramid over a facet G with apex p has volume height(p, G) times
    the volume of G, so the triangulation is unimodular exactly when every
    pulled vertex sits at lattice height one over each facet it is coned
    over, all the way down.  Faces are memoized, so the simplices are
    never listed.  With ``prune`` a face passing ``all_heights_one`` is
    accepted without descending.
    """
    cx = _Complex(spec)
    perm = vertex_order(spec, order, seed)
    rank = [0] * len(perm)
    for pos, v in enumerate(perm):
        rank[v] = pos
    memo: dict = {}
    bad: list = []

    def check(face, dim):
        if dim == 0:
            return True
        hit = memo.get(face)
        if hit is not None:
            return hit
        if prune and cx.all_heights_one(face):
            memo[face] = True
            return True
        p = _pulled(face, rank)
        res = True
        for f in cx.facets(face):
            if f >> p & 1:
                continue
            if cx.height(p, f, face) != 1:
                bad.append((face, dim))
                res = False
                break
            if not check(f, dim - 1):
                res = False
                break
        memo[face] = res
        return res

    ok = check(cx.full, cx.dim)
    desc = cx.descriptor(*bad[0]) if bad else None
    return PullingCheck(ok, len(memo), desc)


def normalized_volume(spec: PolytopeSpec, order="lex") -> int:
    return sum(s.normalized_volume for s in pulling_triangulation(spec, order))


def is_unimodular_simplex(spec: PolytopeSpec) -> bool:
    if not is_integral(spec):
        return False
    vs = _vertices(spec)
    if len(vs) != dimension(spec) + 1:
        return False
    g = geometry(spec)
    zs = [g.to_vars(v) for v in vs]
    diffs = [[int(a - b) for a, b in zip(z, zs[0])] for z in zs[1:]]
    return (linalg.lattice_index(diffs) if diffs else 1) == 1


def lattice_points_are_vertices(spec: PolytopeSpec) -> bool:
    weighted = spec.weight is not None
    return all(face_dimension(GTPattern(r), weighted) == 0 for r in lattice_rows(spec))
