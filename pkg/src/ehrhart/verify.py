"""Seeded property suites that tie each registered claim to executable checks.

Every suite takes ``(seed, trials, dim_max)`` and returns a list of
:class:`~ehrhart.report.VerificationReport`.  Random instances are drawn
from ``random.Random`` streams derived from the seed and the claim id, so a
suite's output depends on nothing else.
"""

from __future__ import annotations

import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial, pi
from typing import Callable, Iterable, Sequence

from . import families as fam
from .counting import count_interior, count_points, min_dilate_with_interior
from .errors import DegenerateInput, EhrhartError, ExhaustedAttempts, UnknownClaim
from .lattice import (LatticePolytope, apply_unimodular, det, flatten_facet, rank,
                      unimodular_equivalent)
from .polynomial import (EhrhartPolynomial, HStarVector, from_hstar, hibi_checks,
                         hstar_simplex_oracle, interpolate, to_hstar)
from .reflexive import (critical_line_conditions, critical_line_criterion,
                        doubled_polytope_bridge, reflexivity_report)
from .report import CLAIMS, VerificationReport, check, make_report
from .roots import (braun_disc_check, classify_3d, critical_line_check, find_roots,
                    mean_identities_check, reconstruct, sn1_max_root_asymptotic,
                    sn1_polynomial, sn1_spectrum)

TOL = 1e-9


# ---------------------------------------------------------------------------
# random instances


@dataclass(frozen=True)
class RandomPolytopeConfig:
    """How to draw random lattice polytopes.

    ``kind`` is ``hull`` (hull of ``num_points`` points), ``simplex``
    (``dim + 1`` points) or ``cross`` (``±v_1, ..., ±v_dim``).  With
    ``symmetric`` a hull is mirrored through the origin.
    """

    dim: int
    coord_bound: int = 3
    num_points: int = 6
    seed: int = 0
    count: int = 1
    symmetric: bool = False
    require_interior: bool = False
    kind: str = "hull"
    max_dim: int = 4
    max_coord: int = 5

    def __post_init__(self):
        if min(self.dim, self.coord_bound, self.num_points, self.count) < 1 or self.seed < 0:
            raise ValueError("config fields must be positive")
        if self.dim > self.max_dim or self.coord_bound > self.max_coord:
            raise ValueError(f"dim <= {self.max_dim} and coord_bound <= {self.max_coord} required")
        if self.kind not in ("hull", "simplex", "cross"):
            raise ValueError(f"unknown kind {self.kind!r}")


MAX_MISSES = 1000


def _draw(rng: random.Random, cfg: RandomPolytopeConfig) -> list[tuple[int, ...]]:
    b, n = cfg.coord_bound, cfg.dim
    point = lambda: tuple(rng.randint(-b, b) for _ in range(n))  # noqa: E731
    if cfg.kind == "simplex":
        return [point() for _ in range(n + 1)]
    if cfg.kind == "cross":
        vs = [point() for _ in range(n)]
        return vs + [tuple(-x for x in v) for v in vs]
    if cfg.symmetric:
        half = [point() for _ in range((cfg.num_points + 1) // 2)]
        return half + [tuple(-x for x in v) for v in half]
    return [point() for _ in range(cfg.num_points)]


def _build(pts, cfg: RandomPolytopeConfig, label: str) -> LatticePolytope | None:
    base = pts[0]
    if rank([[a - c for a, c in zip(p, base)] for p in pts[1:]]) < cfg.dim:
        return None
    if cfg.kind == "cross" and rank(pts[: cfg.dim]) < cfg.dim:
        return None
    try:
        P = LatticePolytope.from_points(pts, label)
    except DegenerateInput:
        return None
    if cfg.kind == "simplex" and not P.is_simplex:
        return None
    if cfg.require_interior and count_interior(P) == 0:
        return None
    return P


def generate_random(cfg: RandomPolytopeConfig) -> list[LatticePolytope]:
    """``cfg.count`` random full-dimensional polytopes, reproducible from the seed."""
    rng = random.Random(cfg.seed)
    out: list[LatticePolytope] = []
    misses = 0
    tag = cfg.kind + ("-sym" if cfg.symmetric and cfg.kind == "hull" else "")
    while len(out) < cfg.count:
        label = f"rand-{tag}-d{cfg.dim}-b{cfg.coord_bound}-s{cfg.seed}-{len(out)}"
        P = _build(_draw(rng, cfg), cfg, label)
        if P is None:
            misses += 1
            if misses >= MAX_MISSES:
                raise ExhaustedAttempts(f"{MAX_MISSES} draws in a row failed for {cfg}")
            continue
        misses = 0
        out.append(P)
    return out


def random_unimodular(rng: random.Random, n: int, steps: int = 6) -> list[list[int]]:
    U = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(steps):
        i, j = rng.sample(range(n), 2) if n > 1 else (0, 0)
        if i != j:
            q = rng.choice((-2, -1, 1, 2))
            U[i] = [a + q * c for a, c in zip(U[i], U[j])]
        if rng.random() < 0.3:
            k = rng.randrange(n)
            U[k] = [-a for a in U[k]]
    assert abs(det(U)) == 1
    return U


def _box_size(P: LatticePolytope) -> int:
    size = 1
    for lo, hi in P.bounding_box():
        size *= hi - lo + 1
    return size


def _small_image(rng: random.Random, P: LatticePolytope, draws: int = 8) -> LatticePolytope:
    """A random unimodular image of ``P``, the most compact of a few draws."""
    images = []
    for _ in range(draws):
        U = random_unimodular(rng, P.dim)
        t = [rng.randint(-3, 3) for _ in range(P.dim)]
        images.append(apply_unimodular(P, U, t))
    return min(images, key=_box_size)


def _stream(seed: int, claim: str) -> random.Random:
    return random.Random(f"{seed}/{claim}")


def _batch(rng: random.Random, trials: int, dims: Sequence[int], **kw) -> list[LatticePolytope]:
    out = []
    for i in range(trials):
        d = dims[i % len(dims)]
        npts = 2 * d + 2 * rng.randrange(3) if kw.get("symmetric") else d + 1 + rng.randrange(4)
        cfg = RandomPolytopeConfig(dim=d, num_points=npts, seed=rng.randrange(2**31), **kw)
        out.extend(generate_random(cfg))
    return out


# ---------------------------------------------------------------------------
# cached per-polytope data


@lru_cache(maxsize=4096)
def analyse(P: LatticePolytope) -> tuple[EhrhartPolynomial, HStarVector]:
    E = interpolate(P)
    return E, to_hstar(E)


@lru_cache(maxsize=4096)
def roots_of(P: LatticePolytope):
    return find_roots(analyse(P)[0], TOL)


def _name(P: LatticePolytope) -> str:
    return P.label or str(P.vertices)


def _report(claim: str, P: LatticePolytope, checks, monitored: bool = False, **values):
    return make_report(claim, _name(P), checks, monitored, vertices=[list(v) for v in P.vertices],
                       **values)


def fixtures(dim_max: int = 4) -> list[LatticePolytope]:
    """Named polytopes used by every suite, restricted to ``dim <= dim_max``."""
    out = [fam.make_Sn(n, l) for n in range(1, 5) for l in (1, 2, 3)]
    out += [fam.make_cross_star(n, l) for n in range(2, 5) for l in (1, 2, 3)]
    out += [fam.make_box_Q(n, l) for n in range(2, 4) for l in (1, 2)]
    out += [fam.make_unit_cube(n, s) for n in range(1, 5) for s in (False, True)]
    out += [fam.make_unit_simplex(n) for n in range(2, 5)]
    out += [fam.make_reeve(k) for k in (1, 2, 3, 5, 12)]
    out += [fam.make_pyramid_P(q) for q in (1, 2, 3, 20)]
    out += [fam.make_realpart_minus1_witness(k) for k in (2, 3, 4, 5)]
    out += [fam.make_realpart_minus1_witness(k).dilate(2) for k in (2, 3, 4, 5)]
    out += [fam.make_E1(), fam.make_E2(), fam.make_triangle_S(),
            fam.product(fam.make_triangle_S(), fam.make_Sn(2))]
    return [P for P in out if P.dim <= dim_max]


def _mixed(seed, claim, trials, dim_max, lo=2, **kw):
    rng = _stream(seed, claim)
    return _batch(rng, trials, list(range(lo, dim_max + 1)) or [lo], **kw)


# ---------------------------------------------------------------------------
# single-instance checks


def verify_facet_coefficient(P: LatticePolytope) -> VerificationReport:
    """``G_{n-1}`` against half the sum of relative facet volumes.

    Each facet is flattened unimodularly into ``Z^(n-1)`` and its relative
    volume read off as the leading coefficient of its own Ehrhart polynomial.
    """
    E, _ = analyse(P)
    n = P.dim
    if n < 2:
        return _report("eq-4.1", P, [], reason="needs n >= 2")
    rel = [interpolate(flatten_facet(P, h)).volume for h in P.halfspaces]
    total = sum(rel, Fraction(0)) / 2
    return _report("eq-4.1", P, [check("G_(n-1) == sum/2", E[n - 1], "==", total)],
                   facet_volumes=rel)


def verify_prop_general_k(P: LatticePolytope) -> VerificationReport:
    E, _ = analyse(P)
    n = P.dim
    k = min_dilate_with_interior(P)
    checks = [check("G_(n-1) <= n k vol / 2", E[n - 1], "<=", Fraction(n * k, 2) * E.volume)]
    return _report("prop-4.2", P, checks, k=k)


def verify_eq_42(P: LatticePolytope) -> VerificationReport:
    E, _ = analyse(P)
    k = min_dilate_with_interior(P)
    checks = [check("1 <= G_2", 1, "<=", E[2]),
              check("G_2 <= 3 k vol / 2", E[2], "<=", Fraction(3 * k, 2) * E.volume)]
    return _report("eq-4.2", P, checks, k=k)


def verify_lemma_dim3(P: LatticePolytope) -> VerificationReport:
    E, h = analyse(P)
    if P.dim != 3 or h[3] < 1:
        return _report("lemma-4.4", P, [], reason="needs n = 3 and an interior point")
    g0, g1, g2, g3 = E.coeffs
    at = E(-1 / (3 * g3))
    extremal = h.a == (1, 1, 1, 1) and g3 == Fraction(2, 3)
    checks = [
        check("G_1 <= G_2 + G_3 + 2/3", g1, "<=", g2 + g3 + Fraction(2, 3)),
        check("G_2 + G_3 + 2/3 <= 5/2 G_3 + 2/3", g2 + g3 + Fraction(2, 3), "<=",
              Fraction(5, 2) * g3 + Fraction(2, 3)),
        check("G(-1/(3 vol)) >= 0", at, ">=", 0),
        check("G(-1/(3 vol)) == 0 iff S_3(1) data", at == 0, "==", extremal),
    ]
    return _report("lemma-4.4", P, checks, value=at)


def verify_thm_111_region(batch: Iterable[LatticePolytope], tol: float = TOL) -> VerificationReport:
    """Region containment for a batch of 3-polytopes, and the norm-3 extremal case."""
    checks = []
    names = []
    for P in batch:
        E, h = analyse(P)
        l = h[3]
        v = classify_3d(roots_of(P), l, tol)
        name = _name(P)
        names.append(name)
        checks.append(check(f"{name}: roots in region", v.inside, "==", True))
        if l >= 1:
            extreme = any(abs(a * a + b * b - 3) <= Fraction(tol) for a, b in roots_of(P).complex_roots)
            if extreme:
                checks.append(check(f"{name}: norm^2 = 3 only for h* = (1,1,1,1)",
                                    h.a == (1, 1, 1, 1), "==", True))
    return make_report("thm-1.11", f"batch of {len(names)}", checks)


# ---------------------------------------------------------------------------
# suites


def _s_eq11(seed, trials, dim_max):
    rng = _stream(seed, "eq-1.1:maps")
    out = []
    for P in fixtures(dim_max) + _mixed(seed, "eq-1.1", trials, dim_max):
        E, _ = analyse(P)
        n = P.dim
        checks = [check(f"G({k}) == count", E(k), "==", count_points(P, k)) for k in range(n + 3)]
        Q = _small_image(rng, P)
        checks.append(check("unimodular image has the same G", interpolate(Q) == E, "==", True))
        checks.append(check("unimodular image has the same interior count",
                            count_interior(Q), "==", count_interior(P)))
        out.append(_report("eq-1.1", P, checks, G=list(E.coeffs)))
    return out


def _s_eq12(seed, trials, dim_max):
    out = []
    for P in fixtures(dim_max) + _mixed(seed, "eq-1.2", trials, dim_max):
        E, _ = analyse(P)
        n = P.dim
        checks = [check(f"G(int {k}P) == (-1)^n G(-{k})", count_interior(P, k), "==",
                        (-1) ** n * E(-k)) for k in range(1, n + 2)]
        out.append(_report("eq-1.2", P, checks))
    return out


def _s_eq14(seed, trials, dim_max):
    out = []
    for P in fixtures(dim_max) + _mixed(seed, "eq-1.4", trials, dim_max):
        E, h = analyse(P)
        n = P.dim
        checks = [
            check("a_0 == 1", h[0], "==", 1),
            check("a_1 == G(P) - n - 1", h[1], "==", count_points(P) - n - 1),
            check("a_n == G(int P)", h[n], "==", count_interior(P)),
            check("sum a_i == n! vol", sum(h), "==", factorial(n) * P.volume),
            check("from_hstar(to_hstar(G)) == G", from_hstar(h) == E, "==", True),
        ]
        out.append(_report("eq-1.4", P, checks, hstar=list(h)))
    return out


def _s_eq15(seed, trials, dim_max):
    out = []
    for P in fixtures(dim_max) + _mixed(seed, "eq-1.5", trials, dim_max):
        E, _ = analyse(P)
        R = roots_of(P)
        rep = mean_identities_check(E, R, TOL, _name(P))
        coeffs = reconstruct(R)
        err = max(abs(c - float(g)) / max(1.0, abs(float(g))) for c, g in zip(coeffs, E.coeffs))
        rep.detail["checks"].append(vars(check("reconstruction from roots", err, "<=", 1e-8)))
        rep.detail["checks"].append(vars(check("roots counted with multiplicity", R.degree, "==", P.dim)))
        rep.status = _restatus(rep)
        out.append(rep)
    return out


def _restatus(rep: VerificationReport) -> str:
    from .report import recheck
    return recheck(rep)


def _interior_batch(seed, claim, trials, dim_max, lo=2, bound=3):
    return _mixed(seed, claim, trials, dim_max, lo=lo, require_interior=True, coord_bound=bound)


def _extremal_fixtures(seed, dim_max):
    """S_n(l) and unimodular images of it; all attain the volume bound."""
    rng = _stream(seed, "extremal")
    out = []
    for n in range(2, dim_max + 1):
        for l in (1, 2, 3):
            S = fam.make_Sn(n, l)
            out.append(S)
            Q = apply_unimodular(S, random_unimodular(rng, n), [rng.randint(-2, 2) for _ in range(n)])
            out.append(LatticePolytope(n, Q.vertices, f"U.{S.label}", Q.halfspaces))
    # lattice triangles with only their vertices on the boundary are extremal too
    out.append(LatticePolytope(2, ((0, 0), (2, 1), (1, 3)), "tri-5/2"))
    return out


def _s_thm12(seed, trials, dim_max):
    out = []
    for P in _extremal_fixtures(seed, dim_max) + _interior_batch(seed, "thm-1.2", trials, dim_max):
        _, h = analyse(P)
        n, l = P.dim, h[P.dim]
        checks = [check("n! vol >= n l + 1", factorial(n) * P.volume, ">=", n * l + 1)]
        out.append(_report("thm-1.2", P, checks, l=l))
    return out


def _s_thm12_eq(seed, trials, dim_max):
    out = []
    for P in _extremal_fixtures(seed, dim_max) + _interior_batch(seed, "thm-1.2-eq", trials, dim_max):
        _, h = analyse(P)
        n, l = P.dim, h[P.dim]
        if l != 1 or factorial(n) * P.volume != n + 1:
            continue
        checks = [check("simplex", P.is_simplex, "==", True)]
        if P.is_simplex:
            checks.append(check("unimodular equivalent to S_n(1)",
                                unimodular_equivalent(P, fam.make_Sn(n, 1)), "==", True))
        out.append(_report("thm-1.2-eq", P, checks))
    return out


def _s_prop13(seed, trials, dim_max):
    out = []
    for P in _extremal_fixtures(seed, dim_max) + _interior_batch(seed, "prop-1.3", trials, dim_max):
        _, h = analyse(P)
        n, l = P.dim, h[P.dim]
        if factorial(n) * P.volume != n * l + 1:
            continue
        checks = [check(f"a_{i} == l", h[i], "==", l) for i in range(1, n + 1)]
        out.append(_report("prop-1.3", P, checks, hstar=list(h)))
    return out


def _symmetric_batch(seed, claim, trials, dim_max, bound=2):
    return _mixed(seed, claim, trials, dim_max, symmetric=True, coord_bound=bound)


def _cross_batch(seed, claim, trials, dim_max, bound=2):
    return _mixed(seed, claim, trials, dim_max, kind="cross", coord_bound=bound)


def _cross_stars(dim_max):
    return [fam.make_cross_star(n, l) for n in range(2, dim_max + 1) for l in (1, 2, 3)]


def _s_conj14(seed, trials, dim_max):
    out = []
    insts = _cross_stars(dim_max) + [fam.make_box_Q(n, l) for n in range(2, min(dim_max, 3) + 1)
                                     for l in (1, 2)]
    for P in insts + _symmetric_batch(seed, "conj-1.4", trials, dim_max):
        _, h = analyse(P)
        n, l = P.dim, h[P.dim]
        checks = [check("n! vol >= 2^(n-1) (l + 1)", factorial(n) * P.volume, ">=", 2 ** (n - 1) * (l + 1))]
        out.append(_report("conj-1.4", P, checks, monitored=True, l=l, volume=P.volume))
    return out


def _s_prop15(seed, trials, dim_max):
    out = []
    for P in _cross_stars(dim_max) + _cross_batch(seed, "prop-1.5", trials, dim_max):
        _, h = analyse(P)
        n, l = P.dim, h[P.dim]
        checks = [check("n! vol >= 2^(n-1) (l + 1)", factorial(n) * P.volume, ">=", 2 ** (n - 1) * (l + 1))]
        out.append(_report("prop-1.5", P, checks, l=l))
    return out


def _s_lemma16(seed, trials, dim_max):
    out = []
    for P in _cross_stars(dim_max) + _cross_batch(seed, "lemma-1.6", trials, dim_max):
        _, h = analyse(P)
        n = P.dim
        checks = [check(f"a_{i} + a_{n - i} >= C(n,{i})(a_n + a_0)", h[i] + h[n - i], ">=",
                        comb(n, i) * (h[n] + h[0])) for i in range(n + 1)]
        out.append(_report("lemma-1.6", P, checks, hstar=list(h)))
    return out


def _s_rem17(seed, trials, dim_max):
    out = []
    for P in _cross_stars(dim_max) + _symmetric_batch(seed, "rem-1.7", trials, dim_max):
        _, h = analyse(P)
        n = P.dim
        checks = [check(f"a_{i} >= C(n,{i})", h[i], ">=", comb(n, i)) for i in range(n + 1)]
        out.append(_report("rem-1.7", P, checks, hstar=list(h)))
    return out


def _s_cross_hstar(seed, trials, dim_max):
    out = []
    for P in _cross_stars(dim_max):
        _, h = analyse(P)
        n = P.dim
        l = (h[n] + 1) // 2
        want = [comb(n, i) + (comb(n - 1, i - 1) if i else 0) * (2 * l - 2) for i in range(n + 1)]
        checks = [check(f"a_{i}", h[i], "==", want[i]) for i in range(n + 1)]
        checks += [check(f"a_{i} + a_{n - i} == C(n,{i})(a_n + 1)", h[i] + h[n - i], "==",
                         comb(n, i) * (h[n] + 1)) for i in range(n + 1)]
        out.append(_report("cross-hstar", P, checks, hstar=list(h)))
    return out


def _centered_bases(seed, trials, dim_max):
    """Random bases with the origin in their interior, dimensions 1..dim_max-1."""
    rng = _stream(seed, "bipyramid")
    out = []
    dims = list(range(1, dim_max)) or [1]
    for i in range(trials):
        d = dims[i % len(dims)]
        cfg = RandomPolytopeConfig(dim=d, num_points=d + 2 + rng.randrange(3), coord_bound=2,
                                   seed=rng.randrange(2**31), require_interior=True)
        Q = generate_random(cfg)[0]
        inner = [p for p in _interior_points(Q)]
        c = inner[rng.randrange(len(inner))]
        T = Q.translate(tuple(-x for x in c))
        out.append(LatticePolytope(d, T.vertices, f"{Q.label}-c", T.halfspaces))
    return out


def _interior_points(P):
    from .lattice import interior_lattice_points
    return interior_lattice_points(P)


def _s_bipyramid(seed, trials, dim_max):
    out = []
    bases = [fam.make_unit_cube(2, True), fam.make_triangle_S(), fam.make_cross_star(2, 2)]
    bases = [B for B in bases if B.dim < dim_max] + _centered_bases(seed, trials, dim_max)
    for Q in bases:
        P = fam.bipyramid(Q)
        _, hq = analyse(Q)
        _, hp = analyse(P)
        want = [(hq[i] if i < len(hq) else 0) + (hq[i - 1] if i else 0) for i in range(P.dim + 1)]
        checks = [check(f"a_{i}", hp[i], "==", want[i]) for i in range(P.dim + 1)]
        out.append(_report("bipyramid", P, checks, base=[list(v) for v in Q.vertices]))
    return out


def _s_eq21(seed, trials, dim_max):
    out = []
    for P in fixtures(dim_max) + _interior_batch(seed, "eq-2.1", trials, dim_max):
        _, h = analyse(P)
        if h[P.dim] < 1:
            continue
        rep = hibi_checks(h, True, _name(P))["hibi_lower_bound"]
        out.append(rep)
    return out


def _s_eq23(seed, trials, dim_max):
    out = []
    simplices = [P for P in fixtures(dim_max) if P.is_simplex and P.dim >= 2]
    simplices += _mixed(seed, "eq-2.3", trials, dim_max, kind="simplex", coord_bound=4)
    for P in simplices:
        _, h = analyse(P)
        oracle = hstar_simplex_oracle(P)
        checks = [check(f"a_{i}", h[i], "==", oracle[i]) for i in range(P.dim + 1)]
        out.append(_report("eq-2.3", P, checks, hstar=list(h), oracle=list(oracle)))
    return out


def _s_thm18(seed, trials, dim_max):
    out = []
    for n in range(1, 26):
        E = sn1_polynomial(n)
        R = find_roots(E, TOL)
        spectrum = sorted(sn1_spectrum(n))
        ims = sorted(float(b) for a, b in R.roots if b >= 0)
        gap = max(abs(x - y) for x, y in zip(spectrum, ims)) if len(spectrum) == len(ims) else 1.0
        checks = [check("all roots have re = -1/2", critical_line_check(R, TOL), "==", True),
                  check("spectrum count", len(spectrum), "==", len(ims)),
                  check("spectrum vs roots", gap, "<=", 1e-8)]
        out.append(make_report("thm-1.8", f"S_{n}(1)", checks))
    return out


def _s_thm18_asym(seed, trials, dim_max):
    rows = sn1_max_root_asymptotic([3, 10, 25, 100, 400])
    ratio = {n: r for n, _, r in rows}
    checks = [check("ratio at 100 >= 0.95", ratio[100], ">=", 0.95),
              check("ratio at 100 <= 1.05", ratio[100], "<=", 1.05),
              check("closer to 1 at 400", abs(ratio[400] - 1), "<", abs(ratio[100] - 1))]
    # the largest root of G(s, S_n(1)) is the solution of h(b) = pi
    for n in (3, 10, 25):
        R = find_roots(sn1_polynomial(n), TOL)
        bmax = max(float(b) for _, b in R.roots)
        b = next(b for m, b, _ in rows if m == n)
        checks.append(check(f"b_{n} is the largest root", abs(bmax - b), "<=", 1e-8))
    return [make_report("thm-1.8-asym", "S_n(1)", checks,
                        rows=[[n, repr(b), repr(r)] for n, b, r in rows], scale="n(n+2)/(2 pi)",
                        pi=repr(pi))]


def _braun_report(R, n: int, instance: str, **values) -> VerificationReport:
    """Radius ``n(n-1)/2`` fails for ``n = 2`` (``Delta_2`` has the root ``-2``), so it is
    monitored there; Braun's radius ``n(n - 1/2)`` is always enforced."""
    true_radius = Fraction(2 * n - 1, 2) * n + Fraction(TOL)
    far = max(abs(complex(float(a) + 0.5, float(b))) for a, b in R.roots)
    checks = [check("|z + 1/2| <= n(n-1)/2", braun_disc_check(R, n, TOL), "==", True),
              check("|z + 1/2| <= n(n - 1/2)", all(
                  (a + Fraction(1, 2)) ** 2 + b * b <= true_radius ** 2 for a, b in R.roots), "==", True)]
    rep = make_report("braun", instance, checks, monitored=n == 2, max_distance=far, **values)
    if n == 2 and not checks[1].holds():
        rep.status = "fail"
    return rep


def _s_braun(seed, trials, dim_max):
    out = []
    for P in fixtures(dim_max) + _mixed(seed, "braun", trials, dim_max):
        if P.dim < 2:
            continue
        out.append(_braun_report(roots_of(P), P.dim, _name(P), vertices=[list(v) for v in P.vertices]))
    for n in range(2, 26):
        out.append(_braun_report(find_roots(sn1_polynomial(n), TOL), n, f"S_{n}(1)"))
    return out


def _s_prop19(seed, trials, dim_max):
    out = []
    for P in fixtures(dim_max) + _interior_batch(seed, "prop-1.9", trials, dim_max):
        if not critical_line_check(roots_of(P), TOL):
            continue
        rep = reflexivity_report(P, *analyse(P))
        checks = [check("reflexive", rep.is_reflexive, "==", True),
                  check("vol <= 2^n", P.volume, "<=", 2 ** P.dim)]
        out.append(_report("prop-1.9", P, checks))
    return out


def reflexive_fixtures(dim_max: int = 4) -> list[LatticePolytope]:
    out = [fam.make_unit_cube(n, True) for n in range(1, 5)]
    out += [fam.make_std_cross(n) for n in range(2, 5)]
    out += [fam.make_Sn(n, 1) for n in range(1, 5)]
    out += [fam.make_E1(), fam.make_E2(), fam.make_triangle_S(),
            fam.product(fam.make_triangle_S(), fam.make_Sn(2))]
    out += [fam.make_realpart_minus1_witness(k).dilate(2) for k in (2, 3, 4, 5)]
    return [P for P in out if P.dim <= dim_max]


def _s_prop110(seed, trials, dim_max):
    out = []
    insts = reflexive_fixtures(dim_max)
    insts += [P for P in _interior_batch(seed, "prop-1.10", trials, dim_max) if analyse(P)[1].is_symmetric]
    for P in insts:
        E, h = analyse(P)
        crit = critical_line_criterion(P, E, h)
        num = critical_line_check(roots_of(P), TOL)
        checks = [check("criterion == numeric", crit, "==", num)]
        values = {}
        if P.dim == 4:
            c = critical_line_conditions(P, E, h)
            values = {"mu": c.mu, "beta": c.beta, "discriminant": c.discriminant,
                      "doubled_hibi": c.doubled_hibi}
            G = E(1)
            if P.label == "E1":
                checks += [check("(G-1-4vol)^2 >= 16 vol", (G - 1 - 4 * E.volume) ** 2, ">=", 16 * E.volume),
                           check("2G > 9 vol + 18", 2 * G, ">", 9 * E.volume + 18)]
            if P.label == "E2":
                checks += [check("2G <= 9 vol + 18", 2 * G, "<=", 9 * E.volume + 18),
                           check("(G-1-4vol)^2 < 16 vol", (G - 1 - 4 * E.volume) ** 2, "<", 16 * E.volume)]
            if P.label.startswith("SxS_2"):
                checks += [check("reflexive", h.is_symmetric, "==", True),
                           check("vol < 16", E.volume, "<", 16),
                           check("off the critical line", num, "==", False)]
        out.append(_report("prop-1.10", P, checks, **values))
    return out


def _s_thm111(seed, trials, dim_max):
    rng = _stream(seed, "thm-1.11")
    batch = [P for P in fixtures(dim_max) if P.dim == 3]
    batch += _batch(rng, trials, [3], coord_bound=3)
    out = []
    for P in batch:
        rep = verify_thm_111_region([P])
        rep.instance = _name(P)
        rep.detail["values"] = {"vertices": [list(v) for v in P.vertices]}
        out.append(rep)
    out.append(verify_thm_111_region(batch))
    return out


def _s_lemma31(seed, trials, dim_max):
    out = []
    for P in fixtures(dim_max) + _interior_batch(seed, "lemma-3.1", trials, dim_max):
        E, h = analyse(P)
        try:
            rep = reflexivity_report(P, E, h)
            agree = True
        except AssertionError:
            rep, agree = None, False
        checks = [check("four reflexivity tests agree", agree, "==", True)]
        if rep is not None and rep.is_reflexive:
            checks += [check("G_(n-1) == n vol / 2", rep.lemma31_volume_identity, "==", True),
                       check("G(kP) == G(int (k+1)P), k = 1, 2", rep.dilation_identity, "==", True)]
        out.append(_report("lemma-3.1", P, checks,
                           reflexive=rep.is_reflexive if rep else None))
    return out


def _s_eq41(seed, trials, dim_max):
    return [verify_facet_coefficient(P)
            for P in fixtures(dim_max) + _mixed(seed, "eq-4.1", trials, dim_max) if P.dim >= 2]


def _s_prop42(seed, trials, dim_max):
    return [verify_prop_general_k(P) for P in fixtures(dim_max) + _mixed(seed, "prop-4.2", trials, dim_max)]


def _s_eq42(seed, trials, dim_max):
    rng = _stream(seed, "eq-4.2")
    insts = [P for P in fixtures(dim_max) if P.dim == 3] + _batch(rng, trials, [3], coord_bound=3)
    return [verify_eq_42(P) for P in insts] if dim_max >= 3 else []


def _no_interior_3d(rng, trials):
    out = []
    tries = 0
    while len(out) < trials and tries < 50 * trials + 100:
        tries += 1
        cfg = RandomPolytopeConfig(dim=3, num_points=4 + rng.randrange(3), coord_bound=2,
                                   seed=rng.randrange(2**31))
        P = generate_random(cfg)[0]
        if count_interior(P) == 0:
            out.append(P)
    return out


def _s_thm41(seed, trials, dim_max):
    if dim_max < 3:
        return []
    rng = _stream(seed, "thm-4.1")
    out = []
    insts = [fam.make_reeve(k) for k in range(1, 41)] + [fam.make_unit_simplex(3)]
    insts += [fam.make_realpart_minus1_witness(k) for k in (2, 3, 4, 5)]
    insts += _no_interior_3d(rng, trials)
    for P in insts:
        v = classify_3d(roots_of(P), 0, TOL)
        checks = [check("interior points", analyse(P)[1][3], "==", 0),
                  check("roots in {-3,-2} u (-2,1) and the half disc", v.inside, "==", True)]
        out.append(_report("thm-4.1", P, checks, tags=list(v.tags)))
    # -3 and -2 are attained, by the unit simplex
    E, _ = analyse(fam.make_unit_simplex(3))
    out.append(make_report("thm-4.1", "Delta_3 attains -3 and -2",
                           [check("G(-3) == 0", E(-3), "==", 0), check("G(-2) == 0", E(-2), "==", 0)]))
    # P(q): coefficient formulas and distinct real roots in (-2, -1)
    previous = None
    for q in range(1, 51):
        P = fam.make_pyramid_P(q)
        E, _ = analyse(P)
        real = [a for a in roots_of(P).real_roots if a != -1]
        r = min(real)
        checks = [check("G_3 == 2q/3", E[3], "==", Fraction(2 * q, 3)),
                  check("G_2 == 3q/2 + 1", E[2], "==", Fraction(3 * q, 2) + 1)]
        if q >= 2:
            checks += [check("root > -2", r, ">", -2), check("root < -1", r, "<", -1)]
        if previous is not None:
            checks.append(check("root moves with q", r, ">", previous))
        previous = r
        out.append(_report("thm-4.1", P, checks, root=r))
    return out


def _s_thm41_iii(seed, trials, dim_max):
    if dim_max < 3:
        return []
    out = []
    on_arc = []
    for k in range(1, 61):
        P = fam.make_reeve(k)
        cplx = [(a, b) for a, b in roots_of(P).complex_roots]
        hit = bool(cplx) and all(abs((a + 1) ** 2 + b * b - 2) <= Fraction(TOL) for a, b in cplx)
        if hit:
            on_arc.append(k)
    out.append(make_report("thm-4.1-iii", "T(k), k = 1..60", [
        check("boundary pairs", len(on_arc), "==", 33),
        check("first k", min(on_arc, default=0), "==", 2),
        check("last k", max(on_arc, default=0), "==", 34)], ks=on_arc))
    expected = {2: 2, 3: 1, 4: Fraction(1, 2), 5: Fraction(1, 5)}  # b^2 of -1 ± ib
    for k, b2 in expected.items():
        P = fam.make_realpart_minus1_witness(k)
        cplx = roots_of(P).complex_roots
        checks = [check("two complex roots", len(cplx), "==", 2)]
        checks += [check("re == -1", abs(a + 1), "<=", TOL) for a, _ in cplx]
        checks += [check(f"im^2 == {b2}", abs(b * b - b2), "<=", TOL) for _, b in cplx]
        checks.append(check("vol == k/6", P.volume, "==", Fraction(k, 6)))
        out.append(_report("thm-4.1-iii", P, checks))
    return out


def _s_prop43(seed, trials, dim_max):
    if dim_max < 3:
        return []
    rng = _stream(seed, "prop-4.3")
    insts = [P for P in fixtures(dim_max) if P.dim == 3 and analyse(P)[1][3] >= 1]
    insts += _batch(rng, trials, [3], coord_bound=3, require_interior=True)
    out = []
    for P in insts:
        R = roots_of(P)
        real = sorted(R.real_roots)
        cplx = R.complex_roots
        checks = []
        if len(real) == 3:
            all_neg = all(-1 < a < 0 for a in real)
            split = -1 < real[0] < 0 and all(0 < a < 1 for a in real[1:])
            checks.append(check("all in (-1,0) or one there and two in (0,1)", all_neg or split, "==", True))
        elif len(real) == 1:
            checks += [check("real root > -1", real[0], ">", -1), check("real root < 0", real[0], "<", 0)]
            checks += [check("re > -3/4", a, ">", Fraction(-3, 4) - Fraction(TOL)) for a, _ in cplx[:1]]
            checks += [check("re < 1/2", a, "<", Fraction(1, 2) + Fraction(TOL)) for a, _ in cplx[:1]]
        out.append(_report("prop-4.3", P, checks, real_roots=real))
    return out


def _s_lemma44(seed, trials, dim_max):
    if dim_max < 3:
        return []
    rng = _stream(seed, "lemma-4.4")
    insts = [P for P in fixtures(dim_max) if P.dim == 3 and analyse(P)[1][3] >= 1]
    insts += _batch(rng, trials, [3], coord_bound=3, require_interior=True)
    return [verify_lemma_dim3(P) for P in insts]


def _s_bridge(seed, trials, dim_max):
    if dim_max < 3:
        return []
    insts = [fam.make_realpart_minus1_witness(k) for k in (2, 3, 4, 5)] + [fam.make_pyramid_P(3)]
    return [doubled_polytope_bridge(P, TOL) for P in insts]


SUITES: dict[str, Callable[[int, int, int], list[VerificationReport]]] = {
    "eq-1.1": _s_eq11,
    "eq-1.2": _s_eq12,
    "eq-1.4": _s_eq14,
    "eq-1.5": _s_eq15,
    "thm-1.2": _s_thm12,
    "thm-1.2-eq": _s_thm12_eq,
    "prop-1.3": _s_prop13,
    "conj-1.4": _s_conj14,
    "prop-1.5": _s_prop15,
    "lemma-1.6": _s_lemma16,
    "rem-1.7": _s_rem17,
    "thm-1.8": _s_thm18,
    "thm-1.8-asym": _s_thm18_asym,
    "braun": _s_braun,
    "prop-1.9": _s_prop19,
    "prop-1.10": _s_prop110,
    "thm-1.11": _s_thm111,
    "eq-2.1": _s_eq21,
    "eq-2.3": _s_eq23,
    "cross-hstar": _s_cross_hstar,
    "bipyramid": _s_bipyramid,
    "lemma-3.1": _s_lemma31,
    "prop-4.2": _s_prop42,
    "eq-4.1": _s_eq41,
    "eq-4.2": _s_eq42,
    "thm-4.1": _s_thm41,
    "thm-4.1-iii": _s_thm41_iii,
    "prop-4.3": _s_prop43,
    "lemma-4.4": _s_lemma44,
    "bridge-2p": _s_bridge,
}

assert set(SUITES) <= set(CLAIMS), "every suite needs a registered claim"

DEFAULT_TRIALS = 20


def run_suite(claim_id: str, seed: int = 0, trials: int = DEFAULT_TRIALS,
              dim_max: int = 4) -> list[VerificationReport]:
    """Run one suite; errors inside it become a single failing report."""
    if claim_id not in SUITES or claim_id not in CLAIMS:
        raise UnknownClaim(f"no suite registered for claim {claim_id!r}")
    try:
        return SUITES[claim_id](seed, trials, dim_max)
    except (EhrhartError, AssertionError) as exc:
        return [make_report(claim_id, "suite error",
                            [check("suite completed", False, "==", True)],
                            error=f"{type(exc).__name__}: {exc}")]


def corrupted_hstar_report() -> VerificationReport:
    """Fault injection: an h*-vector with a_1 bumped by one must fail."""
    E, h = analyse(fam.make_Sn(3, 1))
    bad = (h[0], h[1] + 1) + tuple(h[2:])
    checks = [check("a_1 == G(P) - n - 1", bad[1], "==", count_points(fam.make_Sn(3, 1)) - 4),
              check("sum a_i == n! vol", sum(bad), "==", 6 * E.volume)]
    return make_report("eq-1.4", "S_3(1) with corrupted h*", checks, hstar=list(bad))


def run_all(seed: int = 0, sizes: dict[str, int] | int | None = None, dim_max: int = 4,
            suites: Iterable[str] | None = None, workers: int = 1,
            inject_fault: bool = False) -> list[VerificationReport]:
    """Run the selected suites (all by default) and sort the reports.

    ``sizes`` is a trial count for every suite or a per-claim mapping.
    """
    names = sorted(suites) if suites is not None else sorted(SUITES)
    for name in names:
        if name not in SUITES:
            raise UnknownClaim(f"no suite registered for claim {name!r}")

    def trials_for(name):
        if isinstance(sizes, int):
            return sizes
        if isinstance(sizes, dict):
            return sizes.get(name, DEFAULT_TRIALS)
        return DEFAULT_TRIALS

    jobs = [(name, trials_for(name)) for name in names]
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda j: run_suite(j[0], seed, j[1], dim_max), jobs))
    else:
        parts = [run_suite(name, seed, t, dim_max) for name, t in jobs]
    reports = [r for part in parts for r in part]
    if inject_fault:
        reports.append(corrupted_hstar_report())
    return sorted(reports, key=lambda r: (r.claim_id, r.instance))


def summarize(reports: Sequence[VerificationReport]) -> dict:
    per_claim: dict[str, dict[str, int]] = {}
    for r in reports:
        counts = per_claim.setdefault(r.claim_id, {"pass": 0, "fail": 0, "n/a": 0, "discovery": 0})
        counts[r.status] += 1
    return {
        "claims": {k: per_claim[k] for k in sorted(per_claim)},
        "failures": sum(c["fail"] for c in per_claim.values()),
        "discoveries": sum(c["discovery"] for c in per_claim.values()),
        "reports": [r.to_json() for r in reports],
    }
