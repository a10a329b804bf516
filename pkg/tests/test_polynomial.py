from fractions import Fraction
from math import comb, factorial

import pytest
from hypothesis import given, strategies as st

from ehrhart import families as fam
from ehrhart.counting import count_interior, count_points
from ehrhart.errors import CountMismatch, NegativeEntry, NonIntegral, NotASimplex
from ehrhart.lattice import LatticePolytope
from ehrhart.polynomial import (EhrhartPolynomial, HStarVector, from_hstar, hibi_checks,
                                hstar_simplex_oracle, interpolate, interpolate_counts,
                                parallelepiped_points, to_hstar)
from oracles import brute_count, brute_parallelepiped, hstar_from_counts, sympy_interpolate
from strategies import polytopes

F = Fraction


def test_sn1_in_three_dimensions():
    E = interpolate(fam.make_Sn(3, 1))
    assert E.coeffs == (1, F(7, 3), 1, F(2, 3))
    assert to_hstar(E).a == (1, 1, 1, 1)


def test_e1_and_e2_polynomials():
    assert interpolate(fam.make_E1()).coeffs == (1, F(15, 2), 21, 27, F(27, 2))
    assert interpolate(fam.make_E2()).coeffs == (1, F(4, 3), F(8, 3), F(8, 3), F(4, 3))
    assert interpolate(fam.make_E1())(1) == 70
    assert interpolate(fam.make_E2())(1) == 9


@pytest.mark.parametrize("k", [1, 2, 7, 34])
def test_reeve(k):
    assert interpolate(fam.make_reeve(k)).coeffs == (1, F(12 - k, 6), 1, F(k, 6))


@given(polytopes(dims=(1, 2, 3)))
def test_interpolation_matches_sympy_on_scanned_counts(P):
    counts = [brute_count(P.vertices, k) for k in range(P.dim + 1)]
    E = interpolate(P)
    assert list(E.coeffs) == sympy_interpolate(counts)
    assert E.volume == P.volume


@given(polytopes(dims=(1, 2, 3)))
def test_hstar_matches_alternating_sum_oracle(P):
    counts = [brute_count(P.vertices, k) for k in range(P.dim + 1)]
    assert list(to_hstar(interpolate(P))) == hstar_from_counts(counts)


@given(polytopes(dims=(2, 3)))
def test_hstar_identities_and_reciprocity(P):
    E = interpolate(P)
    h = to_hstar(E)
    n = P.dim
    assert h[0] == 1
    assert h[1] == count_points(P) - n - 1
    assert h[n] == count_interior(P)
    assert sum(h) == factorial(n) * P.volume
    for k in range(1, n + 2):
        assert count_interior(P, k) == (-1) ** n * E(-k)
    assert from_hstar(h) == E


@given(st.integers(1, 4).flatmap(
    lambda n: st.tuples(st.just(1), *[st.integers(0, 6)] * n)))
def test_hstar_roundtrip_arbitrary_vectors(a):
    assert to_hstar(from_hstar(a)).a == a


@given(polytopes(dims=(2, 3), max_size=4))
def test_simplex_oracle(P):
    if not P.is_simplex:
        return
    assert hstar_simplex_oracle(P) == to_hstar(interpolate(P))
    assert parallelepiped_points(P) == sorted(brute_parallelepiped(P.vertices))


def test_oracle_rejects_non_simplex():
    with pytest.raises(NotASimplex):
        hstar_simplex_oracle(fam.make_unit_cube(2))


def test_hstar_of_the_cube_is_eulerian():
    assert to_hstar(interpolate(fam.make_unit_cube(4))).a == (1, 11, 11, 1, 0)


def test_binomial_basis_definition():
    h = to_hstar(interpolate(fam.make_cross_star(3, 2)))
    E = from_hstar(h)
    for k in range(6):
        assert E(k) == sum(a * comb(k + 3 - i, 3) for i, a in enumerate(h))


def test_mismatched_counts_are_caught(monkeypatch):
    import ehrhart.polynomial as poly
    real = poly.count_points
    monkeypatch.setattr(poly, "count_points", lambda P, k, cap=None: real(P, k) + (k == P.dim + 1))
    with pytest.raises(CountMismatch):
        interpolate(fam.make_Sn(2))


def test_value_type_validation():
    with pytest.raises(ValueError):
        EhrhartPolynomial((2, 1))
    with pytest.raises(NonIntegral):
        EhrhartPolynomial((1, 1, F(1, 3)))
    with pytest.raises(NegativeEntry):
        HStarVector((1, -1))
    with pytest.raises(NonIntegral):
        to_hstar(EhrhartPolynomial((1, F(1, 3), F(1, 2))))


def test_interpolate_counts_degree():
    assert interpolate_counts([1, 4, 9]).coeffs == (1, 2, 1)


def test_json_roundtrip():
    E = interpolate(fam.make_E2())
    assert EhrhartPolynomial.from_json(E.to_json()) == E


def test_hibi_checks():
    rep = hibi_checks(HStarVector((1, 3, 2, 1)), True, "x")
    assert rep["hibi_lower_bound"].status == "fail"
    assert rep["symmetric"].status == "fail"
    rep = hibi_checks(HStarVector((1, 2, 2, 1)), True, "y")
    assert rep["hibi_lower_bound"].status == "pass" and rep["symmetric"].status == "pass"
    assert hibi_checks(HStarVector((1, 3, 2, 0)), False)["hibi_lower_bound"].status == "n/a"
