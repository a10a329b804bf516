"""Acceptance gate: ten criteria at their stated tolerances and time limits.

Each test prints one ``criterion N: PASS|FAIL`` line (visible with ``-s``
or in the terminal summary) before asserting.
"""

import math
import random
import time
from fractions import Fraction
from math import comb, factorial

import pytest

from ehrhart import families as fam
from ehrhart.counting import count_interior, count_points
from ehrhart.polynomial import hstar_simplex_oracle, interpolate, to_hstar
from ehrhart.reflexive import critical_line_conditions, critical_line_criterion, reflexivity_report
from ehrhart.roots import (classify_3d, critical_line_check, find_roots, sn1_max_root_asymptotic,
                           sn1_polynomial, sn1_spectrum)
from ehrhart.verify import (RandomPolytopeConfig, _extremal_fixtures, fixtures, generate_random,
                            reflexive_fixtures, run_all, summarize, verify_facet_coefficient,
                            verify_lemma_dim3, verify_prop_general_k)

F = Fraction
TOL = 1e-9
RESULTS: dict[int, str] = {}


@pytest.fixture
def gate(capsys):
    def record(number: int, ok: bool, elapsed: float, limit: float | None, detail: str = ""):
        timed = limit is None or elapsed < limit
        status = "PASS" if ok and timed else "FAIL"
        limit_txt = f" (limit {limit:g}s)" if limit else ""
        line = f"criterion {number}: {status} in {elapsed:.2f}s{limit_txt} {detail}".rstrip()
        RESULTS[number] = line
        with capsys.disabled():
            print("\n" + line)
        assert ok, line
        assert timed, line
    return record


def _random(dim, count, seed, **kw):
    return generate_random(RandomPolytopeConfig(dim=dim, count=count, seed=seed,
                                                num_points=kw.pop("num_points", dim + 3), **kw))


def test_criterion_1_exact_polynomials(gate):
    t = time.perf_counter()
    ok = interpolate(fam.make_Sn(3, 1)).coeffs == (1, F(7, 3), 1, F(2, 3))
    ok &= to_hstar(interpolate(fam.make_Sn(3, 1))).a == (1, 1, 1, 1)
    for k in range(2, 35):
        ok &= interpolate(fam.make_reeve(k)).coeffs == (1, F(12 - k, 6), 1, F(k, 6))
    ok &= interpolate(fam.make_E1()).coeffs == (1, F(15, 2), 21, 27, F(27, 2))
    ok &= interpolate(fam.make_E2()).coeffs == (1, F(4, 3), F(8, 3), F(8, 3), F(4, 3))
    gate(1, ok, time.perf_counter() - t, 10)


def test_criterion_2_sn1_critical_line(gate):
    t = time.perf_counter()
    worst_line, worst_spec = 0.0, 0.0
    for n in range(1, 26):
        R = find_roots(sn1_polynomial(n), TOL)
        worst_line = max([worst_line] + [abs(float(a) + 0.5) for a, _ in R.expanded()])
        ims = sorted((float(b) for a, b in R.expanded() if b >= 0), reverse=True)
        spectrum = sn1_spectrum(n)
        assert len(ims) == len(spectrum), n
        worst_spec = max([worst_spec] + [abs(x - y) for x, y in zip(ims, spectrum)])
    ok = worst_line <= 1e-9 and worst_spec <= 1e-8
    gate(2, ok, time.perf_counter() - t, 30,
         f"max |re + 1/2| = {worst_line:.1e}, max spectrum gap = {worst_spec:.1e}")


def test_criterion_3_asymptotic_magnitude(gate):
    t = time.perf_counter()
    rows = {n: r for n, _, r in sn1_max_root_asymptotic([100, 400])}
    ok = 0.95 <= rows[100] <= 1.05 and abs(rows[400] - 1) < abs(rows[100] - 1)
    gate(3, ok, time.perf_counter() - t, 5, f"ratio(100) = {rows[100]:.6f}, ratio(400) = {rows[400]:.6f}")


def test_criterion_4_boundary_pairs(gate):
    t = time.perf_counter()
    hits = []
    for k in range(1, 101):
        cplx = find_roots(interpolate(fam.make_reeve(k)), TOL).complex_roots
        if cplx and all(abs(float((a + 1) ** 2 + b * b) - 2) <= TOL for a, b in cplx):
            hits.append(k)
    ok = hits == list(range(2, 35))
    expected = {2: math.sqrt(2), 3: 1.0, 4: 1 / math.sqrt(2), 5: 1 / math.sqrt(5)}
    for k, b in expected.items():
        got = sorted((complex(float(x), float(y)) for x, y in
                      find_roots(interpolate(fam.make_realpart_minus1_witness(k)), TOL).complex_roots),
                     key=lambda z: z.imag)
        want = [complex(-1, -b), complex(-1, b)]
        ok &= len(got) == 2 and all(abs(g - w) <= TOL for g, w in zip(got, want))
    gate(4, ok, time.perf_counter() - t, 10, f"{len(hits)} boundary pairs, k = {hits[0]}..{hits[-1]}")


def test_criterion_5_region_containment(gate):
    t = time.perf_counter()
    batch = _random(3, 200, seed=20240501, coord_bound=3, num_points=6)
    outside, extremal_bad, interior_instances = [], [], 0
    for P in batch:
        E = interpolate(P)
        h = to_hstar(E)
        R = find_roots(E, TOL)
        if not classify_3d(R, h[3], TOL).inside:
            outside.append(P.vertices)
        if h[3] >= 1:
            interior_instances += 1
            if any(abs(float(a * a + b * b) - 3) <= TOL for a, b in R.complex_roots) and h.a != (1, 1, 1, 1):
                extremal_bad.append(P.vertices)
    # the norm-3 case itself
    R = find_roots(interpolate(fam.make_Sn(3, 1)), TOL)
    norm3 = all(abs(float(a * a + b * b) - 3) <= TOL for a, b in R.complex_roots)
    ok = not outside and not extremal_bad and norm3 and len(batch) == 200
    gate(5, ok, time.perf_counter() - t, 300,
         f"{len(batch)} polytopes, {interior_instances} with interior points, {len(outside)} outside")


def test_criterion_6_volume_bound_and_uniqueness(gate):
    t = time.perf_counter()
    rng = random.Random(6)
    insts = list(_extremal_fixtures(6, 4))
    for dim in (2, 3, 4):
        insts += _random(dim, 60, rng.randrange(2**31), coord_bound=3 if dim < 4 else 2,
                         require_interior=True)
    violations, equality, bad_equality = 0, 0, 0
    for P in insts:
        h = to_hstar(interpolate(P))
        n, l = P.dim, h[P.dim]
        lhs = factorial(n) * P.volume
        violations += lhs < n * l + 1
        if lhs == n * l + 1:
            equality += 1
            bad_equality += h.a != (1,) + (l,) * n
    ok = violations == 0 and bad_equality == 0 and equality > 0
    gate(6, ok, time.perf_counter() - t, None,
         f"{len(insts)} instances, {equality} attain equality, {violations} violations")


def test_criterion_7_symmetric_inequalities(gate):
    t = time.perf_counter()
    rng = random.Random(7)
    bad = 0
    sym = []
    for i in range(100):
        dim = 2 + i % 3
        sym += _random(dim, 1, rng.randrange(2**31), symmetric=True, coord_bound=2,
                       num_points=2 * dim + 2 * (i % 2))
    for P in sym:
        h = to_hstar(interpolate(P))
        bad += any(h[i] < comb(P.dim, i) for i in range(P.dim + 1))
    cross = [_random(2 + i % 3, 1, rng.randrange(2**31), kind="cross", coord_bound=2)[0] for i in range(100)]
    for P in cross:
        h = to_hstar(interpolate(P))
        n = P.dim
        bad += any(h[i] + h[n - i] < comb(n, i) * (h[n] + h[0]) for i in range(n + 1))
    for n in range(1, 5):
        for l in range(1, 4):
            h = to_hstar(interpolate(fam.make_cross_star(n, l)))
            want = tuple(comb(n, i) + (comb(n - 1, i - 1) if i else 0) * (2 * l - 2) for i in range(n + 1))
            bad += h.a != want
    bases = 0
    while bases < 20:
        d = 1 + bases % 3
        Q = _random(d, 1, rng.randrange(2**31), coord_bound=2, require_interior=True)[0]
        inner = [x for x in _lattice(Q) if Q.contains(x, strict=True)]
        c = inner[rng.randrange(len(inner))]
        Q = Q.translate(tuple(-x for x in c))
        hq = to_hstar(interpolate(Q))
        hp = to_hstar(interpolate(fam.bipyramid(Q)))
        want = tuple((hq[i] if i <= d else 0) + (hq[i - 1] if i else 0) for i in range(d + 2))
        bad += hp.a != want
        bases += 1
    gate(7, bad == 0, time.perf_counter() - t, None,
         f"{len(sym)} symmetric, {len(cross)} crosspolytopes, 12 closed forms, {bases} bipyramids")


def _lattice(P):
    from ehrhart.lattice import lattice_points
    return lattice_points(P)


def test_criterion_8_reflexive_criteria(gate):
    t = time.perf_counter()
    ok = True
    for P in reflexive_fixtures(4):
        ok &= reflexivity_report(P).is_reflexive
        ok &= critical_line_criterion(P) == critical_line_check(find_roots(interpolate(P), TOL), TOL)
    e1, e2 = critical_line_conditions(fam.make_E1()), critical_line_conditions(fam.make_E2())
    ok &= e1.discriminant and e1.mu_guard and not e1.doubled_hibi
    ok &= not e2.discriminant and e2.doubled_hibi and e2.mu_guard
    prod = fam.product(fam.make_triangle_S(), fam.make_Sn(2))
    ok &= reflexivity_report(prod).is_reflexive and prod.volume < 16
    ok &= not critical_line_check(find_roots(interpolate(prod), TOL), TOL)
    gate(8, ok, time.perf_counter() - t, None, f"{len(reflexive_fixtures(4))} reflexive fixtures")


def test_criterion_9_oracle_equivalence(gate):
    t = time.perf_counter()
    rng = random.Random(9)
    simplices = [_random(2 + i % 3, 1, rng.randrange(2**31), kind="simplex",
                         coord_bound=4 if i % 3 < 2 else 3)[0] for i in range(100)]
    mismatches = sum(hstar_simplex_oracle(S) != to_hstar(interpolate(S)) for S in simplices)
    gate(9, mismatches == 0, time.perf_counter() - t, None, f"{len(simplices)} simplices, {mismatches} mismatches")


def test_criterion_10_identity_suite(gate):
    t = time.perf_counter()
    rng = random.Random(10)
    insts = fixtures(4)
    for i in range(200):
        dim = 2 + i % 3
        insts += _random(dim, 1, rng.randrange(2**31), coord_bound=3 if dim < 4 else 2)
    failures = []
    for P in insts:
        E = interpolate(P)
        h = to_hstar(E)
        n = P.dim
        ok = all(count_interior(P, k) == (-1) ** n * E(-k) for k in range(1, n + 2))
        ok &= h[0] == 1 and h[1] == count_points(P) - n - 1 and h[n] == count_interior(P)
        ok &= sum(h) == factorial(n) * P.volume
        zs = find_roots(E, TOL).as_complex()
        prod_g = math.prod(-z for z in zs)
        ok &= abs(prod_g - 1 / float(E.volume)) * float(E.volume) <= TOL
        ok &= abs(-sum(zs) - float(E[n - 1] / E.volume)) / max(1, float(E[n - 1] / E.volume)) <= TOL
        if n >= 2:
            ok &= verify_facet_coefficient(P).status == "pass"
        ok &= verify_prop_general_k(P).status == "pass"
        if n == 3 and h[3] >= 1:
            ok &= verify_lemma_dim3(P).status == "pass"
        if not ok:
            failures.append(P.label or P.vertices)
    t_suite = time.perf_counter()
    summary = summarize(run_all(seed=0, sizes=20, dim_max=4))
    suite_time = time.perf_counter() - t_suite
    ok = not failures and summary["failures"] == 0 and suite_time < 600
    gate(10, ok, time.perf_counter() - t, None,
         f"{len(insts)} instances, {len(failures)} failures; verify --suite all: "
         f"{summary['failures']} failures, {summary['discoveries']} discoveries in {suite_time:.1f}s")


def test_zz_summary(capsys):
    with capsys.disabled():
        print("\nacceptance summary:")
        for n in sorted(RESULTS):
            print("  " + RESULTS[n])
