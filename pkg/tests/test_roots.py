import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from ehrhart import families as fam
from ehrhart.errors import NoConvergence, WrongDegree
from ehrhart.polynomial import from_hstar, interpolate, to_hstar
from ehrhart.roots import (TAGS, braun_disc_check, classify_3d, critical_line_check, find_roots,
                           mean_identities_check, reconstruct, sn1_max_root_asymptotic,
                           sn1_polynomial, sn1_spectrum)
from oracles import numpy_roots
from strategies import polytopes

F = Fraction


def _match_numpy(R, coeffs, tol):
    ours = sorted(R.as_complex(), key=lambda z: (round(z.real, 6), round(z.imag, 6)))
    ref = sorted(numpy_roots(coeffs), key=lambda z: (round(z.real, 6), round(z.imag, 6)))
    for a in ours:
        assert min(abs(a - b) for b in ref) <= tol


@given(st.integers(1, 5).flatmap(lambda n: st.tuples(st.just(1), *[st.integers(0, 8)] * n)))
def test_roots_match_companion_matrix(h):
    E = from_hstar(h)
    R = find_roots(E)
    assert R.degree == E.n
    assert max(R.residuals) <= 1e-9
    _match_numpy(R, E.coeffs, 1e-5)


@given(polytopes(dims=(2, 3)))
def test_reconstruction(P):
    E = interpolate(P)
    R = find_roots(E)
    for c, g in zip(reconstruct(R), E.coeffs):
        assert abs(c - float(g)) <= 1e-9 * max(1, abs(float(g)))
    assert mean_identities_check(E, R).status == "pass"


def test_conjugate_pairs_and_order():
    R = find_roots(interpolate(fam.make_reeve(7)))
    cplx = R.complex_roots
    assert len(cplx) == 2 and cplx[0][0] == cplx[1][0] and cplx[0][1] == -cplx[1][1]


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_multiple_roots(n):
    R = find_roots(interpolate(fam.make_unit_cube(n)))
    assert R.roots == ((F(-1), F(0)),) and R.multiplicities == (n,)


def test_multiple_root_of_high_degree():
    R = find_roots([1, 8, 24, 32, 16, 0])  # (2s+1)^4
    assert R.multiplicities == (4,) and R.roots[0] == (F(-1, 2), 0)


def test_exact_rational_roots():
    R = find_roots(interpolate(fam.make_unit_simplex(3)))
    assert sorted(R.real_roots) == [-3, -2, -1]
    R = find_roots(interpolate(fam.make_pyramid_P(1)))
    assert -2 in R.real_roots


def test_degree_errors():
    with pytest.raises(WrongDegree):
        find_roots([1])
    with pytest.raises(WrongDegree):
        classify_3d(find_roots(interpolate(fam.make_Sn(2))), 1)


def test_no_convergence_is_reported():
    with pytest.raises(NoConvergence) as info:
        find_roots(sn1_polynomial(12), max_iter=1, prec=24)
    assert info.value.residuals


@pytest.mark.parametrize("n", [1, 2, 5, 10, 25])
def test_sn1_roots_on_critical_line(n):
    R = find_roots(sn1_polynomial(n))
    assert critical_line_check(R)
    assert braun_disc_check(R, max(n, 2))
    assert all(abs(float(a) + 0.5) <= 1e-9 for a, _ in R.roots)


def test_sn1_polynomial_is_the_simplex():
    for n in (1, 2, 3, 4):
        assert sn1_polynomial(n) == interpolate(fam.make_Sn(n, 1))


@pytest.mark.parametrize("n", [3, 8, 15])
def test_sn1_spectrum_matches_roots(n):
    R = find_roots(sn1_polynomial(n))
    ims = sorted((float(b) for _, b in R.roots if b >= 0), reverse=True)
    spectrum = sn1_spectrum(n)
    assert spectrum == sorted(spectrum, reverse=True)
    assert len(ims) == len(spectrum)
    assert max(abs(a - b) for a, b in zip(ims, spectrum)) <= 1e-8


def test_sn1_spectrum_against_numpy():
    b = sn1_spectrum(6)[0]
    ref = max(z.imag for z in numpy_roots(sn1_polynomial(6).coeffs))
    assert b == pytest.approx(ref, rel=1e-8)


def test_asymptotic_ratio():
    rows = sn1_max_root_asymptotic([3, 100, 400])
    ratio = {n: r for n, _, r in rows}
    assert 0.95 <= ratio[100] <= 1.05
    assert abs(ratio[400] - 1) < abs(ratio[100] - 1)
    n, b, _ = rows[0]
    assert b == pytest.approx(math.sqrt(11) / 2, rel=1e-12)


def test_braun_radius_in_dimension_two():
    # the unit triangle's root -2 sits 3/2 from -1/2, outside radius n(n-1)/2 = 1
    R = find_roots(interpolate(fam.make_unit_simplex(2)))
    assert not braun_disc_check(R, 2)
    assert braun_disc_check(find_roots(interpolate(fam.make_unit_simplex(3))), 3)


def test_critical_line_false_for_reeve():
    assert not critical_line_check(find_roots(interpolate(fam.make_reeve(2))))
    assert critical_line_check(find_roots(interpolate(fam.make_unit_cube(3, True))))


def test_classify_witnesses():
    for k, b2 in {2: 2, 3: 1, 4: F(1, 2), 5: F(1, 5)}.items():
        R = find_roots(interpolate(fam.make_realpart_minus1_witness(k)))
        v = classify_3d(R, 0)
        assert v.inside
        cplx = [(a, b) for a, b in R.roots if b]
        assert all(abs(a + 1) <= 1e-12 and abs(b * b - b2) <= 1e-12 for a, b in cplx)
        assert v.tags.count("real_part_minus1") == 2


def test_classify_tags_and_outside():
    v = classify_3d(find_roots(interpolate(fam.make_Sn(3))), 1)
    assert v.tags.count("real_part_minus_half") == 2
    assert set(v.tags) <= set(TAGS)
    # (s+1/2)(s^2 + s + 5) has |z|^2 = 5 > 3
    fake = find_roots([F(5, 2), F(11, 2), F(3, 2), 1])
    assert not classify_3d(fake, 1).inside
    assert "outside" in classify_3d(fake, 1).tags
    csv = classify_3d(fake, 1).to_csv().splitlines()
    assert csv[0] == "re,im,tag" and len(csv) == 4


def test_classify_semicircle():
    R = find_roots(interpolate(fam.make_reeve(10)))
    assert "boundary_semicircle" in classify_3d(R, 0).tags


def test_roots_json_uses_decimal_strings():
    doc = find_roots(interpolate(fam.make_Sn(3))).to_json()
    assert doc["roots"][0]["im"].startswith("-1.658312395177")
    assert all(isinstance(r["re"], str) for r in doc["roots"])


def test_deterministic():
    a = find_roots(sn1_polynomial(9)).to_json()
    b = find_roots(sn1_polynomial(9)).to_json()
    assert a == b


@given(polytopes(dims=(3,), bound=3))
def test_three_dimensional_region(P):
    E = interpolate(P)
    v = classify_3d(find_roots(E), to_hstar(E)[3])
    assert v.inside
