"""Partitions, skew shapes, GT-patterns, skew tableaux and the bijection
between integral patterns and semistandard tableaux.

Patterns are stored bottom row first: ``rows[0]`` is mu and ``rows[-1]``
is lambda.  Row ``i`` in the mathematical 1-based numbering is
``rows[i - 1]``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

Rational = Fraction


class MalformedInput(ValueError):
    """Input that cannot even be interpreted (ragged rows, bad numbers)."""


class DomainError(ValueError):
    """Well-formed input outside the domain of an operation."""


def to_rational(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise MalformedInput(f"not a number: {x!r}")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError):
            raise MalformedInput(f"not a rational: {x!r}") from None
    raise MalformedInput(f"not a rational: {x!r}")


def format_rational(x: Fraction):
    """Integers print as ints, everything else as a reduced "p/q" string."""
    x = Fraction(x)
    if x.denominator == 1:
        return x.numerator
    return f"{x.numerator}/{x.denominator}"


def strip_zeros(parts: Sequence[int]) -> tuple[int, ...]:
    parts = tuple(parts)
    end = len(parts)
    while end and parts[end - 1] == 0:
        end -= 1
    return parts[:end]


def as_partition(parts: Iterable[int]) -> tuple[int, ...]:
    out = []
    for p in parts:
        if isinstance(p, bool) or int(p) != p:
            raise MalformedInput(f"partition parts must be integers: {p!r}")
        out.append(int(p))
    if any(p < 0 for p in out):
        raise MalformedInput(f"negative part in {out}")
    if any(a < b for a, b in zip(out, out[1:])):
        raise MalformedInput(f"not weakly decreasing: {out}")
    return tuple(out)


def composition_length(w: Sequence) -> int:
    """Index of the last non-zero entry."""
    return len(strip_zeros(w))


@dataclass(frozen=True, eq=False)
class SkewShape:
    """lambda/mu, both padded to a common length ``n``."""

    lam: tuple[int, ...]
    mu: tuple[int, ...] = ()

    def __post_init__(self):
        lam = as_partition(self.lam)
        mu = as_partition(self.mu)
        n = max(len(lam), len(mu))
        lam = lam + (0,) * (n - len(lam))
        mu = mu + (0,) * (n - len(mu))
        if any(a < b for a, b in zip(lam, mu)):
            raise MalformedInput(f"mu {mu} is not contained in lambda {lam}")
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "mu", mu)

    @property
    def n(self) -> int:
        return len(self.lam)

    @property
    def size(self) -> int:
        return sum(self.lam) - sum(self.mu)

    def key(self):
        k = max(len(strip_zeros(self.lam)), len(strip_zeros(self.mu)))
        return self.lam[:k], self.mu[:k]

    def __eq__(self, other):
        if not isinstance(other, SkewShape):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        lam, mu = self.key()
        if any(mu):
            return f"SkewShape({lam}/{strip_zeros(mu)})"
        return f"SkewShape({lam})"

    def padded(self, n: int) -> "SkewShape":
        if n < len(strip_zeros(self.lam)):
            raise DomainError(f"cannot fit {self} into {n} rows")
        lam = (self.lam + (0,) * n)[:n]
        mu = (self.mu + (0,) * n)[:n]
        return SkewShape(lam, mu)

    def dilate(self, k: int) -> "SkewShape":
        return SkewShape(tuple(k * x for x in self.lam), tuple(k * x for x in self.mu))

    def cells(self) -> list[tuple[int, int]]:
        """1-based (row, column) cells, row by row."""
        return [(i + 1, c) for i in range(self.n)
                for c in range(self.mu[i] + 1, self.lam[i] + 1)]

    def to_json(self):
        return {"lambda": list(self.lam), "mu": list(self.mu)}

    @classmethod
    def from_json(cls, obj) -> "SkewShape":
        if isinstance(obj, list):
            return cls(tuple(obj))
        try:
            return cls(tuple(obj["lambda"]), tuple(obj.get("mu", ())))
        except (KeyError, TypeError, AttributeError):
            raise MalformedInput(f"not a skew shape: {obj!r}") from None


@dataclass(frozen=True)
class GTPattern:
    rows: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(to_rational(x) for x in row) for row in self.rows)
        if not rows:
            raise MalformedInput("a pattern needs at least one row")
        if len({len(r) for r in rows}) != 1:
            raise MalformedInput("ragged pattern rows")
        object.__setattr__(self, "rows", rows)

    @property
    def m(self) -> int:
        return len(self.rows)

    @property
    def n(self) -> int:
        return len(self.rows[0])

    @property
    def top(self):
        return self.rows[-1]

    @property
    def bottom(self):
        return self.rows[0]

    def __getitem__(self, ij):
        """1-based access ``p[i, j]`` to x^i_j."""
        i, j = ij
        return self.rows[i - 1][j - 1]

    def is_integral(self) -> bool:
        return all(x.denominator == 1 for row in self.rows for x in row)

    def row_sums(self) -> tuple[Fraction, ...]:
        return tuple(sum(r, Fraction(0)) for r in self.rows)

    def shape(self) -> SkewShape:
        if any(x.denominator != 1 for x in self.top + self.bottom):
            raise DomainError("boundary rows must be integral")
        return SkewShape(tuple(int(x) for x in self.top),
                         tuple(int(x) for x in self.bottom))

    def with_zero_column(self) -> "GTPattern":
        return GTPattern(tuple(r + (Fraction(0),) for r in self.rows))

    def to_json(self):
        return [[format_rational(x) for x in row] for row in self.rows]

    @classmethod
    def from_json(cls, obj) -> "GTPattern":
        if not isinstance(obj, list) or not all(isinstance(r, list) for r in obj):
            raise MalformedInput("a pattern is a list of rows")
        return cls(tuple(tuple(r) for r in obj))

    def __str__(self):
        width = max(len(str(format_rational(x))) for r in self.rows for x in r)
        lines = [" ".join(str(format_rational(x)).rjust(width) for x in r)
                 for r in reversed(self.rows)]
        return "\n".join(lines)


def pattern(rows) -> GTPattern:
    """Convenience constructor from nested sequences (bottom row first)."""
    return GTPattern(tuple(tuple(r) for r in rows))


@dataclass(frozen=True)
class Violation:
    """``upper`` should be >= ``lower``; both are 1-based (row, col)."""

    upper: tuple[int, int]
    lower: tuple[int, int]
    kind: str

    def __str__(self):
        (a, b), (c, d) = self.upper, self.lower
        return f"x^{a}_{b} >= x^{c}_{d} fails ({self.kind})"


def validate_pattern(p: GTPattern) -> Violation | None:
    """First violated inequality, or None when ``p`` is a GT-pattern."""
    rows = p.rows
    for i in range(p.m - 1):
        lo, hi = rows[i], rows[i + 1]
        for j in range(p.n):
            if hi[j] < lo[j]:
                return Violation((i + 2, j + 1), (i + 1, j + 1), "column")
            if j + 1 < p.n and lo[j] < hi[j + 1]:
                return Violation((i + 1, j + 1), (i + 2, j + 2), "diagonal")
    return None


def is_valid(p: GTPattern) -> bool:
    return validate_pattern(p) is None


def weight_of(p: GTPattern) -> tuple[Fraction, ...]:
    s = p.row_sums()
    return tuple(b - a for a, b in zip(s, s[1:]))


def add_patterns(a: GTPattern, b: GTPattern) -> GTPattern:
    if (a.m, a.n) != (b.m, b.n):
        raise DomainError(f"dimension mismatch {a.m}x{a.n} vs {b.m}x{b.n}")
    return GTPattern(tuple(tuple(x + y for x, y in zip(r, s))
                           for r, s in zip(a.rows, b.rows)))


@dataclass(frozen=True)
class SkewTableau:
    """Semistandard filling; ``rows[j]`` lists contents of row j+1, left to right."""

    shape: SkewShape
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in r) for r in self.rows)
        n = self.shape.n
        rows = rows + ((),) * (n - len(rows))
        if len(rows) != n:
            raise MalformedInput("more tableau rows than shape rows")
        for i, r in enumerate(rows):
            if len(r) != self.shape.lam[i] - self.shape.mu[i]:
                raise MalformedInput(f"row {i + 1} has {len(r)} cells, shape wants "
                                     f"{self.shape.lam[i] - self.shape.mu[i]}")
            if any(x < 1 for x in r):
                raise MalformedInput("contents must be positive")
        object.__setattr__(self, "rows", rows)

    def entry(self, i: int, c: int) -> int | None:
        """Content at 1-based (row, column), None outside the shape."""
        if not 1 <= i <= self.shape.n:
            return None
        mu, lam = self.shape.mu[i - 1], self.shape.lam[i - 1]
        if mu < c <= lam:
            return self.rows[i - 1][c - mu - 1]
        return None

    def is_semistandard(self) -> bool:
        for i, r in enumerate(self.rows):
            if any(a > b for a, b in zip(r, r[1:])):
                return False
            for c in range(self.shape.mu[i] + 1, self.shape.lam[i] + 1):
                below = self.entry(i + 2, c)
                if below is not None and below <= self.entry(i + 1, c):
                    return False
        return True

    def max_content(self) -> int:
        return max((x for r in self.rows for x in r), default=0)

    def content_counts(self, upto: int | None = None) -> tuple[int, ...]:
        top = self.max_content() if upto is None else upto
        counts = [0] * top
        for r in self.rows:
            for x in r:
                counts[x - 1] += 1
        return tuple(counts)

    def to_json(self):
        return {"shape": self.shape.to_json(), "rows": [list(r) for r in self.rows]}

    @classmethod
    def from_json(cls, obj) -> "SkewTableau":
        try:
            return cls(SkewShape.from_json(obj["shape"]),
                       tuple(tuple(r) for r in obj["rows"]))
        except (KeyError, TypeError):
            raise MalformedInput(f"not a tableau: {obj!r}") from None


def pattern_to_tableau(p: GTPattern) -> SkewTableau:
    if not p.is_integral():
        raise DomainError("only integral patterns correspond to tableaux")
    if not is_valid(p):
        raise DomainError(f"not a GT-pattern: {validate_pattern(p)}")
    rows = []
    for j in range(p.n):
        row: list[int] = []
        for i in range(p.m - 1):
            row += [i + 1] * int(p.rows[i + 1][j] - p.rows[i][j])
        rows.append(tuple(row))
    return SkewTableau(p.shape(), tuple(rows))


def tableau_to_pattern(t: SkewTableau, m: int) -> GTPattern:
    if not t.is_semistandard():
        raise DomainError("tableau is not semistandard")
    if t.max_content() > m - 1:
        raise DomainError(f"content {t.max_content()} needs more than {m} rows")
    rows = []
    for i in range(m):
        rows.append(tuple(t.shape.mu[j] + sum(1 for x in t.rows[j] if x <= i)
                          for j in range(t.shape.n)))
    return GTPattern(tuple(rows))


def _parallel(u: Sequence[int], v: Sequence[int]) -> bool:
    return all(u[i] * v[j] == u[j] * v[i] for i in range(len(u)) for j in range(len(u)))


def concat_tableaux(a: SkewTableau, b: SkewTableau) -> SkewTableau:
    """Row-wise multiset union; the tableau side of pattern addition."""
    n = max(a.shape.n, b.shape.n)
    sa, sb = a.shape.padded(n), b.shape.padded(n)
    if not _parallel(sa.lam + sa.mu, sb.lam + sb.mu):
        raise DomainError(f"shapes {a.shape} and {b.shape} are not dilates of one shape")
    ra = a.rows + ((),) * (n - len(a.rows))
    rb = b.rows + ((),) * (n - len(b.rows))
    shape = SkewShape(tuple(x + y for x, y in zip(sa.lam, sb.lam)),
                      tuple(x + y for x, y in zip(sa.mu, sb.mu)))
    return SkewTableau(shape, tuple(tuple(sorted(r + s)) for r, s in zip(ra, rb)))


def empty_tableau(shape: SkewShape) -> SkewTableau:
    return SkewTableau(shape, ((),) * shape.n)


def parse_young(rows: Sequence[str], n: int | None = None) -> SkewTableau:
    """Tableau from compact row strings: ':' marks an inner-shape cell, digits are contents."""
    lam, mu, body = [], [], []
    for r in rows:
        k = len(r) - len(r.lstrip(":"))
        rest = r[k:]
        if not rest.isdigit() and rest:
            raise MalformedInput(f"bad tableau row {r!r}")
        lam.append(len(r))
        mu.append(k)
        body.append(tuple(int(c) for c in rest))
    width = len(rows) if n is None else n
    if width < len(rows):
        raise MalformedInput("more rows than n")
    pad = width - len(rows)
    return SkewTableau(SkewShape(tuple(lam) + (0,) * pad, tuple(mu) + (0,) * pad),
                       tuple(body) + ((),) * pad)


def young_rows(t: SkewTableau) -> list[str]:
    """Inverse of parse_young (contents above 9 have no single-character form)."""
    if t.max_content() > 9:
        raise DomainError("contents above 9 do not fit the compact form")
    out = [":" * t.shape.mu[i] + "".join(map(str, r)) for i, r in enumerate(t.rows)]
    while out and not out[-1]:
        out.pop()
    return out
