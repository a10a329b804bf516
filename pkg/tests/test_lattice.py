from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from ehrhart import families as fam
from ehrhart.errors import (CenterNotInterior, DegenerateInput, DimensionTooLarge, NotUnimodular,
                            Unbounded)
from ehrhart.lattice import (LatticePolytope, apply_unimodular, convex_hull_halfspaces, det,
                             flatten_facet, interior_lattice_points, lattice_points, polar_dual,
                             unimodular_completion, unimodular_equivalent,
                             vertices_from_halfspaces)
from oracles import _hull, float_volume
from strategies import polytopes, unimodular


def test_cube_facets_and_volume():
    C = fam.make_unit_cube(3, symmetric=True)
    assert len(C.halfspaces) == 6
    assert all(h.rhs == 1 for h in C.halfspaces)
    assert C.volume == 8


def test_non_extreme_points_are_dropped():
    P = LatticePolytope.from_points([(0, 0), (2, 0), (0, 2), (1, 1), (1, 0)])
    assert P.vertices == ((0, 0), (0, 2), (2, 0))


def test_constructor_rejects_non_vertex():
    with pytest.raises(DegenerateInput):
        LatticePolytope(2, ((0, 0), (2, 0), (0, 2), (1, 0)))


@pytest.mark.parametrize("pts", [[(0, 0), (1, 1), (2, 2)], [(0, 0, 0), (1, 0, 0), (0, 1, 0)], [(1, 2)]])
def test_lower_dimensional_input(pts):
    with pytest.raises(DegenerateInput):
        LatticePolytope.from_points(pts)


def test_dimension_cap():
    pts = [tuple(int(i == j) for j in range(7)) for i in range(7)] + [(0,) * 7]
    with pytest.raises(DimensionTooLarge):
        convex_hull_halfspaces(pts)


def test_unbounded_halfspaces():
    with pytest.raises(Unbounded):
        vertices_from_halfspaces([(-1, 0), (0, -1)], [0, 0])


def test_non_lattice_vertex():
    with pytest.raises(DegenerateInput):
        LatticePolytope.from_halfspaces([(-1, 0), (0, -1), (2, 2)], [0, 0, 1])


@given(polytopes(dims=(2, 3)))
def test_facets_match_scipy(P):
    assert len(P.halfspaces) == len({tuple(round(x, 9) for x in row) for row in _hull(P.vertices)})
    assert float(P.volume) == pytest.approx(float_volume(P.vertices), rel=1e-9)


@given(polytopes())
def test_vertices_are_tight_and_points_inside(P):
    for h in P.halfspaces:
        assert min(h.slack(v) for v in P.vertices) == 0
    for v in P.vertices:
        assert P.contains(v) and not P.contains(v, strict=True)


@given(polytopes())
def test_halfspace_roundtrip(P):
    normals = [h.normal for h in P.halfspaces]
    rhs = [h.rhs for h in P.halfspaces]
    Q = LatticePolytope.from_halfspaces(normals, rhs)
    assert Q.vertices == P.vertices


@given(polytopes(dims=(2, 3)), st.data())
def test_unimodular_image_preserves_volume_and_points(P, data):
    U = data.draw(unimodular(P.dim))
    t = data.draw(st.lists(st.integers(-3, 3), min_size=P.dim, max_size=P.dim))
    Q = apply_unimodular(P, U, t)
    assert Q.volume == P.volume
    assert len(lattice_points(Q)) == len(lattice_points(P))
    assert len(interior_lattice_points(Q)) == len(interior_lattice_points(P))


def test_apply_rejects_non_unimodular():
    with pytest.raises(NotUnimodular):
        apply_unimodular(fam.make_unit_simplex(2), [[2, 0], [0, 1]])


@given(st.lists(st.integers(-9, 9), min_size=1, max_size=5))
def test_unimodular_completion(a):
    from math import gcd
    from functools import reduce
    if reduce(gcd, a, 0) != 1:
        with pytest.raises(ValueError):
            unimodular_completion(a)
        return
    U = unimodular_completion(a)
    assert abs(det(U)) == 1
    assert U[-1] == list(a)


@given(polytopes(dims=(2, 3)))
def test_facet_flattening_preserves_lattice_points(P):
    for h in P.halfspaces:
        F = flatten_facet(P, h)
        on_facet = [x for x in lattice_points(P) if h.slack(x) == 0]
        assert len(lattice_points(F)) == len(on_facet)


def test_polar_dual_of_cube_is_cross():
    C = fam.make_unit_cube(3, symmetric=True)
    dual = polar_dual(C, (0, 0, 0))
    assert sorted(dual) == sorted(fam.make_std_cross(3).vertices)
    with pytest.raises(CenterNotInterior):
        polar_dual(C, (1, 0, 0))


def test_polar_dual_non_integral():
    S = fam.make_Sn(2, 2)
    dual = polar_dual(S, (0, 0))
    assert any(x.denominator != 1 for v in dual for x in v)


def test_json_roundtrip():
    P = fam.make_reeve(3)
    assert LatticePolytope.from_json(P.to_json()) == P
    with pytest.raises(DegenerateInput):
        LatticePolytope.from_json({"dim": 2, "vertices": [[0, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1]]})


def test_dilate_and_translate():
    S = fam.make_unit_simplex(3)
    assert S.dilate(2).volume == 8 * S.volume
    assert S.translate((1, 2, 3)).vertices[0] == (1, 2, 3)


def test_unimodular_equivalence():
    S = fam.make_Sn(3, 1)
    U = [[1, 1, 0], [0, 1, 0], [0, 0, -1]]
    assert unimodular_equivalent(apply_unimodular(S, U, (4, 0, 1)), S)
    assert not unimodular_equivalent(fam.make_reeve(2), fam.make_reeve(3))
    assert not unimodular_equivalent(fam.make_Sn(2, 1), LatticePolytope(2, ((0, 0), (3, 0), (0, 1))))


def test_reeve_volume():
    for k in (1, 5, 17):
        assert fam.make_reeve(k).volume == Fraction(k, 6)
