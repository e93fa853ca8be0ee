"""Skew-diagram algebra and the integral-shape classifier."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .core import DomainError, GTPattern, SkewShape, strip_zeros, weight_of, is_valid

INTEGRAL_TAGS = frozenset({
    "EmptyShape", "UnionOfRows", "TwoByTwoBox", "Hook", "HookCornerMissing",
    "ReverseHook", "ReverseHookCornerMissing",
})


def _trim(s: SkewShape) -> SkewShape:
    lam, mu = s.key()
    return SkewShape(lam, mu)


def normalize_shape(s: SkewShape) -> tuple[SkewShape, list[tuple[str, int]]]:
    """Drop empty rows, then empty columns.

    The transcript lists ("row", i) / ("col", c) removals, 1-based and
    relative to the shape at the moment of removal.  Trailing padding rows
    are dropped silently.
    """
    lam, mu = list(s.key()[0]), list(s.key()[1])
    transcript: list[tuple[str, int]] = []
    i = 0
    while i < len(lam):
        if lam[i] == mu[i]:
            transcript.append(("row", i + 1))
            del lam[i], mu[i]
        else:
            i += 1
    c = 1
    width = lam[0] if lam else 0
    while c <= width:
        if not any(m < c <= l for l, m in zip(lam, mu)):
            transcript.append(("col", c))
            lam = [l - 1 if m >= c else l for l, m in zip(lam, mu)]
            mu = [m - 1 if m >= c else m for m in mu]
            width -= 1
        else:
            c += 1
    return SkewShape(tuple(lam), tuple(mu)), transcript


def apply_transcript(p: GTPattern, transcript) -> GTPattern:
    """Carry a pattern of the original shape to the normalized shape.

    Removing empty row j deletes pattern column j; removing empty column c
    lowers by one every pattern column whose row lies above that column.
    """
    rows = [list(r) for r in p.rows]
    # trailing padding columns are constant zero
    n = len(strip_zeros(p.top))
    lam_mu = [(p.top[j], p.bottom[j]) for j in range(p.n)]
    while len(lam_mu) > n and lam_mu[-1] == (0, 0):
        lam_mu.pop()
        for r in rows:
            r.pop()
    for kind, idx in transcript:
        if kind == "row":
            for r in rows:
                del r[idx - 1]
            del lam_mu[idx - 1]
        else:
            upper = [mu >= idx for _, mu in lam_mu]
            for r in rows:
                for j, up in enumerate(upper):
                    if up:
                        r[j] -= 1
            lam_mu = [(l - 1, m - 1) if up else (l, m)
                      for (l, m), up in zip(lam_mu, upper)]
    if rows and not rows[0]:
        return _empty_width(len(rows))
    return GTPattern(tuple(tuple(r) for r in rows))


def _empty_width(m: int) -> GTPattern:
    # zero columns cannot be stored; keep one zero column as padding
    return GTPattern(tuple((Fraction(0),) for _ in range(m)))


def disjoint_union(a: SkewShape, b: SkewShape) -> SkewShape:
    """Place ``a`` above and to the right of ``b``: (v1+lam, nu)/(v1+mu, tau)."""
    a, b = _trim(a), _trim(b)
    v1 = b.lam[0] if b.n else 0
    return SkewShape(tuple(x + v1 for x in a.lam) + b.lam,
                     tuple(x + v1 for x in a.mu) + b.mu)


def _cellset(s: SkewShape) -> set[tuple[int, int]]:
    return set(s.cells())


def _occupied(s: SkewShape):
    cells = _cellset(s)
    rows = sorted({i for i, _ in cells})
    cols = sorted({c for _, c in cells})
    return cells, rows, cols


@dataclass(frozen=True)
class Embedding:
    rows: tuple[int, ...]
    cols: tuple[int, ...]

    def to_json(self):
        return {"rows": list(self.rows), "cols": list(self.cols)}


def contains_subdiagram(big: SkewShape, small: SkewShape) -> Embedding | None:
    """Order-preserving row/column injections carrying cells to cells.

    Rows are tried as combinations in lexicographic order; for fixed rows
    the columns are chosen greedily, leftmost first.
    """
    bcells, brows, bcols = _occupied(big)
    scells, srows, scols = _occupied(small)
    if not scells:
        return Embedding((), ())
    if len(srows) > len(brows) or len(scols) > len(bcols):
        return None
    by_col: dict[int, list[int]] = {}
    for i, c in scells:
        by_col.setdefault(c, []).append(i)
    for rsel in combinations(brows, len(srows)):
        rmap = dict(zip(srows, rsel))
        cmap = []
        last = 0
        for c in scols:
            need = [rmap[i] for i in by_col[c]]
            pick = next((bc for bc in bcols if bc > last
                         and all((r, bc) in bcells for r in need)), None)
            if pick is None:
                break
            cmap.append(pick)
            last = pick
        else:
            return Embedding(tuple(rsel), tuple(cmap))
    return None


# (lambda, mu) of the seven finite forbidden diagrams and the smallest
# members of the three column families; every larger family member
# contains its smallest member, so these ten decide avoidance.
FORBIDDEN = {
    "forbidden-1": SkewShape((3, 2), (1,)),
    "forbidden-2": SkewShape((2, 2, 1), (1,)),
    "forbidden-3": SkewShape((3, 2, 1), (2,)),
    "forbidden-4": SkewShape((3, 2, 1), (1, 1)),
    "forbidden-5": SkewShape((3, 2, 2), (2, 1)),
    "forbidden-6": SkewShape((3, 3, 1), (2, 1)),
    "forbidden-7": SkewShape((2, 2, 1, 1), (1, 1)),
    "column-family-1": SkewShape((3, 2, 1, 1), (2, 1)),
    "column-family-2": SkewShape((3, 2, 2, 1), (2, 1, 1)),
    "column-family-3": SkewShape((3, 3, 2, 1), (2, 2, 1)),
}


def column_family_shape(family: int, length: int) -> SkewShape:
    """Member of a column family whose stretched column has ``length`` boxes."""
    if length < 2:
        raise DomainError("column families need a column of at least two boxes")
    if family == 1:
        return SkewShape((3, 2) + (1,) * length, (2, 1))
    if family == 2:
        return SkewShape((3,) + (2,) * length + (1,), (2,) + (1,) * length)
    if family == 3:
        return SkewShape((3,) * length + (2, 1), (2,) * length + (1,))
    raise DomainError(f"no column family {family}")


@dataclass(frozen=True)
class ShapeClass:
    tag: str
    witness: str | None = None
    embedding: Embedding | None = field(default=None)

    @property
    def integral(self) -> bool:
        return self.tag in INTEGRAL_TAGS

    def to_json(self):
        out = {"tag": self.tag, "integral": self.integral}
        if self.witness is not None:
            out["witness"] = {"diagram": self.witness,
                              "shape": FORBIDDEN[self.witness].to_json(),
                              "embedding": self.embedding.to_json()}
        return out


def is_union_of_rows(s: SkewShape) -> bool:
    lam, mu = s.lam, s.mu
    return all(mu[i] >= lam[i + 1] for i in range(s.n - 1))


def _family(s: SkewShape) -> str | None:
    lam, mu = s.key()
    l = len(lam)
    mu = mu + (0,) * (l - len(mu))
    if l == 0:
        return "EmptyShape"
    if is_union_of_rows(SkewShape(lam, mu)):
        return "UnionOfRows"
    if lam == (2, 2) and not any(mu):
        return "TwoByTwoBox"
    h = lam[0]
    if all(x == 1 for x in lam[1:]):
        if not any(mu):
            return "Hook"
        if mu[0] == 1 and not any(mu[1:]):
            return "HookCornerMissing"
    if l >= 2 and mu == (h - 1,) * (l - 1) + (0,):
        if lam == (h,) * l:
            return "ReverseHook"
        if lam == (h,) * (l - 1) + (h - 1,):
            return "ReverseHookCornerMissing"
    return None


def find_forbidden(s: SkewShape) -> tuple[str, Embedding] | None:
    for name, small in FORBIDDEN.items():
        emb = contains_subdiagram(s, small)
        if emb is not None:
            return name, emb
    return None


def classify_shape(s: SkewShape) -> ShapeClass:
    norm, _ = normalize_shape(s)
    tag = _family(norm)
    if tag is not None:
        return ShapeClass(tag)
    found = find_forbidden(norm)
    if found is None:
        # would contradict the characterization; surface it loudly
        raise AssertionError(f"{norm} is in no integral family and avoids every forbidden diagram")
    return ShapeClass("NonIntegralWitness", found[0], found[1])


def enumerate_normalized_shapes(boxes: int) -> list[SkewShape]:
    """Every skew shape with ``boxes`` cells and no empty rows or columns.

    Built bottom-up from row lengths: the bottom row starts in column 1 and
    each row above may not leave a gap column, i.e. mu_i <= lam_{i+1}.
    """
    out = []

    def compositions(total):
        if total == 0:
            yield ()
            return
        for first in range(1, total + 1):
            for rest in compositions(total - first):
                yield (first,) + rest

    def grow(lengths, lam, mu):
        # bottom row first
        if len(lam) == len(lengths):
            out.append(SkewShape(tuple(reversed(lam)), tuple(reversed(mu))))
            return
        r = lengths[len(lam)]
        for m in range(max(mu[-1], lam[-1] - r), lam[-1] + 1):
            grow(lengths, lam + [m + r], mu + [m])

    if boxes == 0:
        return [SkewShape(())]
    for lengths in compositions(boxes):
        grow(lengths, [lengths[0]], [0])
    return sorted(out, key=lambda s: s.key())


# five half-integral vertices, rows bottom first
_H = Fraction(1, 2)
_SIX = [
    ((3, 2), (1,), [(1, 0), (3 * _H, _H), (3 * _H, 3 * _H), (5 * _H, 3 * _H), (3, 2)]),
    ((2, 2, 1), (1,), [(1, 0, 0), (3 * _H, _H, 0), (2, _H, _H), (2, 3 * _H, _H), (2, 2, 1)]),
    ((3, 2, 1), (2,), [(2, 0, 0), (5 * _H, _H, 0), (3, _H, _H), (3, 3 * _H, _H), (3, 2, 1)]),
    ((3, 2, 2), (2, 1), [(2, 1, 0), (2, 3 * _H, _H), (2, 3 * _H, 3 * _H), (5 * _H, 2, 3 * _H), (3, 2, 2)]),
    ((2, 2, 1, 1), (1, 1), [(1, 1, 0, 0), (3 * _H, 1, _H, 0), (2, 1, _H, _H), (2, 3 * _H, 1, _H), (2, 2, 1, 1)]),
]


def gen_six_shape_vertices() -> list[tuple[SkewShape, GTPattern]]:
    return [(SkewShape(l, m), GTPattern(tuple(tuple(r) for r in rows)))
            for l, m, rows in _SIX]


def gen_three_column_vertex(k: int) -> GTPattern:
    """Vertex for (3,2,1^k)/(2,1): first column of k boxes, n = k + 2 rows."""
    if k < 2:
        raise DomainError("the three-column family starts at k = 2")
    b = k + 2
    rows = []
    for r in range(b + 1):  # r = 0 is the top row
        first = 3 if r <= b - 2 else (_H * 5 if r == b - 1 else 2)
        second = 2 if r == 0 else (3 * _H if r == 1 else 1)
        row = [Fraction(first), Fraction(second)]
        for p in range(3, b + 1):
            q = p + r - b
            row.append(Fraction(1) if q <= 0 else (_H if q <= 2 else Fraction(0)))
        rows.append(tuple(row))
    return GTPattern(tuple(reversed(rows)))


def is_nonintegral_vertex(p: GTPattern) -> bool:
    from .tiling import face_dimension
    return is_valid(p) and not p.is_integral() and face_dimension(p) == 0


def extend_nonintegral(shape: SkewShape, vertex: GTPattern, mode: str, row: int):
    """Grow a non-integral weight-1 vertex by one box.

    ``mode`` is "add" (box added to lambda at ``row``, new top row) or
    "remove" (box removed from mu at ``row``, new bottom row).
    """
    if not is_nonintegral_vertex(vertex) or any(w != 1 for w in weight_of(vertex)):
        raise DomainError("input is not a non-integral vertex of a weight-1 polytope")
    if vertex.shape() != shape:
        raise DomainError("vertex does not belong to the given shape")
    p = vertex
    if mode == "add":
        if row == p.n + 1:
            p = p.with_zero_column()
        if not 1 <= row <= p.n:
            raise DomainError(f"row {row} out of range")
        top = list(p.top)
        top[row - 1] += 1
        if row > 1 and top[row - 2] < top[row - 1]:
            raise DomainError(f"adding a box in row {row} breaks the partition")
        new = GTPattern(p.rows + (tuple(top),))
    elif mode == "remove":
        if not 1 <= row <= p.n:
            raise DomainError(f"row {row} out of range")
        bottom = list(p.bottom)
        bottom[row - 1] -= 1
        if bottom[row - 1] < 0 or (row < p.n and bottom[row - 1] < bottom[row]):
            raise DomainError(f"removing a box from mu in row {row} breaks the partition")
        new = GTPattern((tuple(bottom),) + p.rows)
    else:
        raise DomainError(f"unknown mode {mode!r}")
    return new.shape(), new
