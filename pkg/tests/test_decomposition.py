from itertools import permutations

import pytest

from gtpoly.core import (DomainError, SkewShape, SkewTableau, concat_tableaux, parse_young,
                         pattern_to_tableau, tableau_to_pattern, young_rows)
from gtpoly.decomposition import (ContingencyMatrix, column_split, from_contingency,
                                  hook_decompose, hook_decompose_full, reverse_hook_decompose,
                                  reverse_hook_decompose_full, to_contingency)
from gtpoly.polytope import PolytopeSpec, enumerate_lattice_points, weightless_points


def _standard(t: SkewTableau, boxes: int) -> bool:
    return t.is_semistandard() and t.content_counts(boxes) == (1,) * boxes


def _recompose(parts):
    acc = parts[0]
    for p in parts[1:]:
        acc = concat_tableaux(acc, p)
    return acc


def test_hook_example():
    t = parse_young(["1123", "23"])
    tp, tr = hook_decompose(t, 2)
    assert young_rows(tp) == ["13", "2"]
    assert young_rows(tr) == ["12", "3"]
    assert concat_tableaux(tp, tr) == t


def test_hook_k_one_is_identity():
    t = parse_young(["13", "2"])
    tp, tr = hook_decompose(t, 1)
    assert tp == t and tr.shape.size == 0


def test_hook_rejects_non_hook():
    with pytest.raises(DomainError):
        hook_decompose(parse_young(["1122", "23", "34"]), 2)


def _hooks(max_boxes):
    for h in range(1, max_boxes + 1):
        for l in range(1, max_boxes + 2 - h):
            yield h, l


def test_hook_sweep():
    checked = 0
    for h, l in _hooks(5):
        boxes = h + l - 1
        hook = SkewShape((h,) + (1,) * (l - 1))
        for k in (1, 2, 3):
            for p in enumerate_lattice_points(PolytopeSpec(hook, (1,) * boxes, k)):
                t = pattern_to_tableau(p)
                parts = hook_decompose_full(t, k)
                assert len(parts) == k
                assert all(x.shape == hook and _standard(x, boxes) for x in parts)
                assert _recompose(parts) == t
                checked += 1
    assert checked > 100


def test_reverse_hook_example():
    t = parse_young(["::12", "1233"])
    a, b = reverse_hook_decompose(t, 2)
    small = SkewShape((2, 2), (1,))
    assert a.shape == small and b.shape == small
    assert _standard(a, 3) and _standard(b, 3)
    assert concat_tableaux(a, b) == t


def test_reverse_hook_sweep():
    for h, l in _hooks(4):
        boxes = h + l - 1
        shape = SkewShape((h,) * l, (h - 1,) * (l - 1))
        for k in (2, 3):
            for p in enumerate_lattice_points(PolytopeSpec(shape, (1,) * boxes, k)):
                t = pattern_to_tableau(p)
                parts = reverse_hook_decompose_full(t, k)
                assert all(x.shape == shape and _standard(x, boxes) for x in parts)
                assert _recompose(parts) == t


def test_reverse_hook_rejects_hook():
    with pytest.raises(DomainError):
        reverse_hook_decompose(parse_young(["1123", "23"]), 2)


def test_column_split_display():
    t = parse_young(["::::::111115", ":::111333", "122222445", "245"])
    parts = column_split(t, 3)
    assert [young_rows(x) for x in parts] == [["::11", ":13", "124", "2"],
                                            ["::11", ":13", "224", "4"],
                                            ["::15", ":13", "225", "5"]]
    assert _recompose(parts) == t


def test_column_split_k_one():
    t = parse_young([":12", "3"])
    assert column_split(t, 1) == [t]


def test_column_split_on_weightless_points():
    shape = SkewShape((3, 2, 2), (1, 1))  # every column has at most two cells
    for k in (2, 3):
        for p in weightless_points(shape.dilate(k), 4):
            t = pattern_to_tableau(p)
            parts = column_split(t, k)
            assert all(x.shape == shape and x.is_semistandard() for x in parts)
            assert _recompose(parts) == t


def test_column_split_rejects_non_dilation():
    with pytest.raises(DomainError):
        column_split(parse_young(["111", "2"]), 2)


def test_contingency_example():
    p = tableau_to_pattern(parse_young([":13", "2"]), 4)
    c = to_contingency(p)
    assert c.entries == ((1, 0, 1), (0, 1, 0))
    assert c.row_sums == (2, 1) and c.col_sums == (1, 1, 1)
    assert from_contingency(c, p.n) == p


def test_birkhoff_polytope_points():
    shape = SkewShape((3, 2, 1), (2, 1))
    pts = enumerate_lattice_points(PolytopeSpec(shape, (1, 1, 1)))
    mats = {to_contingency(p).entries for p in pts}
    perms = {tuple(tuple(int(perm[i] == j) for j in range(3)) for i in range(3))
             for perm in permutations(range(3))}
    assert len(pts) == 6 and mats == perms


def test_contingency_round_trip():
    shape = SkewShape((5, 3, 1), (3, 1))
    for p in enumerate_lattice_points(PolytopeSpec(shape, (2, 1, 2))):
        c = to_contingency(p)
        assert c.row_sums == (2, 2, 1) and c.col_sums == (2, 1, 2)
        assert from_contingency(c, p.n) == p


def test_contingency_of_empty_shape():
    shape = SkewShape((2, 1), (2, 1))
    (p,) = enumerate_lattice_points(PolytopeSpec(shape, (0, 0)))
    c = to_contingency(p)
    assert c.entries == () and c.columns == 2
    assert from_contingency(c, 2) == p


def test_contingency_rejects_other_shapes():
    p = enumerate_lattice_points(PolytopeSpec(SkewShape((2, 2)), (2, 2)))[0]
    with pytest.raises(DomainError):
        to_contingency(p)
    with pytest.raises(DomainError):
        from_contingency(ContingencyMatrix(((1, -1),), (0,), 2))
