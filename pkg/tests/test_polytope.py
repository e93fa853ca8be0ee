from fractions import Fraction as F
from itertools import combinations_with_replacement, product

import pytest

from gtpoly.core import DomainError, GTPattern, SkewShape, add_patterns, is_valid
from gtpoly.polytope import (PolytopeSpec, contains, count_lattice_points, dimension,
                             enumerate_lattice_points, enumerate_vertices, idp_check, is_empty,
                             is_integral, is_unimodular_simplex, lattice_points_are_vertices,
                             nonintegral_witness, normalized_volume, probe_nonintegral_vertex,
                             pulling_is_unimodular, pulling_triangulation, vertex_order,
                             weight_spec, weightless_points)
from gtpoly.shapes import enumerate_normalized_shapes, gen_six_shape_vertices

from oracles import brute_tableaux, brute_vertices, exhaustive_decomposes

h = F(1, 2)
G = GTPattern(((0,) * 5, (1, 0, 0, 0, 0), (5 * h, h, 0, 0, 0), (5 * h, 5 * h, 0, 0, 0),
               (4, 5 * h, 3 * h, 0, 0), (4, 4, 2, 1, 0)))


def test_contains_worked_example():
    assert contains(weight_spec((4, 4, 2, 1, 0), (1, 2, 2, 3, 3)), G)
    assert not contains(weight_spec((4, 4, 2, 1, 0), (1, 2, 2, 2, 1, 3)), G)


def test_contains_column_mismatch_raises():
    with pytest.raises(DomainError):
        contains(weight_spec((2, 1), (1, 2)), GTPattern(((0,), (1,), (3,))))


def test_minkowski_sums_stay_inside():
    for lam, mu, w in [((4, 3, 1), (), (2, 2, 2, 2)), ((3, 2), (1,), (1, 1, 2))]:
        spec = weight_spec(lam, w, mu)
        one = enumerate_lattice_points(spec)
        two = enumerate_lattice_points(spec.dilate(2))
        for a, b in combinations_with_replacement(one, 2):
            assert contains(spec.dilate(2), add_patterns(a, b))
        for a, b in product(one, two):
            assert contains(spec.dilate(3), add_patterns(a, b))


def test_point_counts():
    assert count_lattice_points(weight_spec((4, 3, 1), (1,) * 8)) == 70
    assert count_lattice_points(weight_spec((2, 2), (1, 1, 1), (1,))) == 2
    assert count_lattice_points(weight_spec((2, 2), (1, 1))) == 0


def test_enumeration_is_sorted_and_unique():
    pts = enumerate_lattice_points(weight_spec((4, 2, 1), (2, 2, 2, 1)))
    rows = [p.rows for p in pts]
    assert rows == sorted(rows) and len(set(rows)) == len(rows)


@pytest.mark.parametrize("lam,mu,w", [((3, 2), (1,), (1, 1, 1, 1)), ((2, 2), (), (1, 1, 1, 1)),
                                      ((3, 1), (), (2, 1, 1)), ((2, 2, 1), (1,), (2, 1, 1)),
                                      ((5, 3), (), (2, 2, 1, 2, 1))])
def test_vertices_match_tight_subset_oracle(lam, mu, w):
    s = SkewShape(lam, mu)
    got = sorted(v.rows for v in enumerate_vertices(PolytopeSpec(s, w)))
    assert got == brute_vertices(s.lam, s.mu, w)


def test_vertex_examples():
    vs = enumerate_vertices(weight_spec((2, 2), (1, 1, 1, 1)))
    assert len(vs) == 2 and all(v.is_integral() for v in vs)
    s, p = gen_six_shape_vertices()[0]
    assert p in enumerate_vertices(PolytopeSpec(s, (1,) * 4))
    assert len(enumerate_vertices(PolytopeSpec(SkewShape((2, 1), (2, 1)), (0, 0)))) == 1


def test_emptiness():
    assert is_empty(weight_spec((4, 3, 1), (8,)))
    assert not is_empty(weight_spec((4, 3, 1), (4, 2, 2)))
    assert not is_integral(weight_spec((4, 3, 1), (8,)))


def test_integrality_pair():
    assert is_integral(weight_spec((5, 3), (2, 2, 2, 1, 1)))
    spec = weight_spec((5, 3), (2, 2, 1, 2, 1))
    assert not is_integral(spec)
    w = nonintegral_witness(spec)
    assert w is not None and not w.is_integral() and w in enumerate_vertices(spec)


def test_probe_finds_only_genuine_vertices():
    spec = weight_spec((5, 3), (2, 2, 1, 2, 1))
    p = probe_nonintegral_vertex(spec)
    assert p is None or p in enumerate_vertices(spec)
    assert probe_nonintegral_vertex(weight_spec((5, 3), (2, 2, 2, 1, 1))) is None


def test_idp_examples():
    assert idp_check(weight_spec((3, 1, 1), (1,) * 5), 3).holds
    assert idp_check(weight_spec((2, 2), (1,) * 4), 3).holds


def test_idp_weightless_example():
    spec = PolytopeSpec(SkewShape((4, 3, 3, 1), (2, 1)), None, 1, 5)
    assert idp_check(spec, 3).holds


def test_idp_rejects_non_integral():
    with pytest.raises(DomainError):
        idp_check(weight_spec((5, 3), (2, 2, 1, 2, 1)), 2)


def test_idp_agrees_with_exhaustive_search():
    for lam, mu, w in [((2, 2), (), (1, 1, 1, 1)), ((3, 1), (), (2, 1, 1)), ((3, 2), (2,), (1, 1, 1))]:
        spec = weight_spec(lam, w, mu)
        base = [tuple(x for r in p.rows for x in r) for p in enumerate_lattice_points(spec)]
        for k in (2, 3):
            for p in enumerate_lattice_points(spec.dilate(k)):
                assert exhaustive_decomposes(tuple(x for r in p.rows for x in r), base, k)
        assert idp_check(spec, 3).holds


def test_idp_is_reproducible():
    spec = weight_spec((4, 2), (2, 2, 2))
    assert idp_check(spec, 3) == idp_check(spec, 3)


def test_triangulation_examples():
    tri = pulling_triangulation(weight_spec((2, 2), (1,) * 4))
    assert len(tri) == 1 and tri[0].normalized_volume == 1 and len(tri[0].vertices) == 2
    spec = weight_spec((4, 3, 1), (4, 2, 2))
    tri = pulling_triangulation(spec)
    assert [len(s.vertices) for s in tri] == [dimension(spec) + 1]
    assert set(tri[0].vertices) == set(enumerate_vertices(spec))


def test_triangulation_rejects_non_integral():
    with pytest.raises(DomainError):
        pulling_triangulation(weight_spec((5, 3), (2, 2, 1, 2, 1)))


@pytest.mark.parametrize("lam,mu,w", [((4, 3, 1), (), (2, 2, 2, 2)), ((3, 3), (1,), (1, 1, 1, 1, 1)),
                                      ((3, 2, 1), (), (2, 2, 1, 1))])
def test_volume_is_order_independent(lam, mu, w):
    spec = weight_spec(lam, w, mu)
    if not is_integral(spec):
        pytest.skip("non-integral")
    vols = {normalized_volume(spec, o) for o in ("lex", "revlex")}
    vols.add(sum(s.normalized_volume for s in pulling_triangulation(spec, "shuffle", seed=3)))
    assert len(vols) == 1


def test_vertex_order_file_permutation():
    spec = weight_spec((4, 3, 1), (2, 2, 2, 2))
    n = len(enumerate_vertices(spec))
    assert vertex_order(spec, list(reversed(range(n)))) == vertex_order(spec, "revlex")
    with pytest.raises(DomainError):
        vertex_order(spec, [0] * n)


def test_pruned_and_unpruned_checks_agree():
    cases = 0
    for n in range(2, 6):
        for s in enumerate_normalized_shapes(n):
            spec = PolytopeSpec(s, (1,) * n)
            if not is_integral(spec):
                continue
            for order in ("lex", "revlex", "shuffle"):
                a = pulling_is_unimodular(spec, order, seed=1, prune=True).unimodular
                b = pulling_is_unimodular(spec, order, seed=1, prune=False).unimodular
                assert a == b
                cases += 1
    for lam, w in [((4, 3, 1), (2, 2, 2, 2)), ((5, 3, 2), (3, 3, 2, 2)), ((4, 3, 1), (3, 2, 2, 1))]:
        spec = weight_spec(lam, w)
        if is_integral(spec):
            for order in ("lex", "revlex"):
                tri = pulling_triangulation(spec, order)
                full = all(x.normalized_volume == 1 for x in tri)
                assert pulling_is_unimodular(spec, order).unimodular == full
                assert pulling_is_unimodular(spec, order, prune=False).unimodular == full
                cases += 1
    assert cases > 50


def test_unimodular_simplex_examples():
    assert is_unimodular_simplex(weight_spec((4, 3, 1), (4, 2, 2)))
    spec = weight_spec((4, 3, 1), (2, 2, 2, 2))
    assert is_integral(spec) and not is_unimodular_simplex(spec)
    assert is_unimodular_simplex(PolytopeSpec(SkewShape((2, 1), (2, 1)), (0, 0)))


def test_weight_one_lattice_points_are_vertices():
    for n in range(1, 6):
        for s in enumerate_normalized_shapes(n):
            spec = PolytopeSpec(s, (1,) * n)
            if is_integral(spec):
                assert lattice_points_are_vertices(spec)
                assert {v.rows for v in enumerate_vertices(spec)} == \
                    {p.rows for p in enumerate_lattice_points(spec)}


def test_integral_vertices_are_lattice_points():
    for lam, w in [((4, 3, 1), (2, 2, 1, 2, 1)), ((5, 3), (2, 2, 1, 2, 1)), ((4, 2), (2, 2, 2))]:
        spec = weight_spec(lam, w)
        pts = {p.rows for p in enumerate_lattice_points(spec)}
        for v in enumerate_vertices(spec):
            if v.is_integral():
                assert v.rows in pts


def _brute_weightless(lam, mu, m):
    total = 0
    size = sum(lam) - sum(mu)
    for w in product(range(size + 1), repeat=m - 1):
        if sum(w) == size:
            total += len(brute_tableaux(lam, mu, w))
    return total


def test_weightless_points():
    assert len(weightless_points(SkewShape((1,)), 2)) == 1
    pts = weightless_points(SkewShape((2, 1)), 3)
    assert len(pts) == _brute_weightless((2, 1), (0, 0), 3)
    assert all(is_valid(p) for p in pts)
    assert len(weightless_points(SkewShape((3, 1), (1,)), 4)) == _brute_weightless((3, 1), (1, 0), 4)
    with pytest.raises(DomainError):
        weightless_points(SkewShape((2, 1)), 3, bound=1)


def test_dilation_is_a_spec_transformation():
    spec = weight_spec((3, 1), (2, 1, 1), k=2)
    assert spec.lam == (6, 2) and spec.scaled_weight == (4, 2, 2)
    assert count_lattice_points(spec) == count_lattice_points(weight_spec((6, 2), (4, 2, 2)))
