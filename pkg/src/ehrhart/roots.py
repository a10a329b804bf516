"""Roots of Ehrhart polynomials and where they may lie.

Roots come from an Aberth iteration in a private ``mpmath`` context (at
least 128 bits), followed by Newton polishing.  Coordinates are returned as
exact dyadic ``Fraction`` values, i.e. the binary floats themselves, so the
region tests further down are exact comparisons on those numbers.  Degrees
two and three are also solved in closed form; there the discriminant, taken
on the rational coefficients, decides which roots are real.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from decimal import Context as DecimalContext, Decimal
from fractions import Fraction
from typing import Sequence

import mpmath

from .errors import BracketFailure, NoConvergence, WrongDegree
from .polynomial import EhrhartPolynomial, binomial_poly, from_hstar, poly_add, poly_eval
from .report import VerificationReport, check, make_report

DEFAULT_TOL = 1e-9
CLUSTER_TOL = 1e-7
_DIGITS = DecimalContext(prec=20)

Root = tuple[Fraction, Fraction]


def _to_fraction(x) -> Fraction:
    sign, man, exp, _ = x._mpf_
    man = -int(man) if sign else int(man)
    return Fraction(man * 2**exp) if exp >= 0 else Fraction(man, 2**-exp)


def fmt_decimal(x: Fraction) -> str:
    """20 significant digits."""
    if x == 0:
        return "0"
    d = _DIGITS.divide(Decimal(x.numerator), Decimal(x.denominator))
    return format(d, "g")


# ---------------------------------------------------------------------------
# the root container


@dataclass(frozen=True)
class RootSet:
    """Distinct roots ``(re, im)`` with multiplicities and relative residuals.

    The relative residual of ``z`` is ``|G(z)| / sum |G_i| |z|^i``.
    """

    roots: tuple[Root, ...]
    multiplicities: tuple[int, ...]
    residuals: tuple[float, ...]
    tol: float = DEFAULT_TOL
    coeffs: tuple[Fraction, ...] = field(default=(), repr=False)

    @property
    def degree(self) -> int:
        return sum(self.multiplicities)

    def expanded(self) -> list[Root]:
        return [r for r, m in zip(self.roots, self.multiplicities) for _ in range(m)]

    def as_complex(self) -> list[complex]:
        return [complex(float(a), float(b)) for a, b in self.expanded()]

    @property
    def real_roots(self) -> list[Fraction]:
        return [a for a, b in self.expanded() if b == 0]

    @property
    def complex_roots(self) -> list[Root]:
        return [(a, b) for a, b in self.expanded() if b != 0]

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "tol": self.tol,
            "roots": [
                {"re": fmt_decimal(a), "im": fmt_decimal(b), "multiplicity": m,
                 "residual": f"{r:.3e}"}
                for (a, b), m, r in zip(self.roots, self.multiplicities, self.residuals)
            ],
        }


# ---------------------------------------------------------------------------
# iteration


def _horner(coeffs, z):
    p = coeffs[-1]
    dp = 0 * z
    for c in reversed(coeffs[:-1]):
        dp = dp * z + p
        p = p * z + c
    return p, dp


def _aberth(ctx, coeffs, max_iter):
    n = len(coeffs) - 1
    lead = coeffs[-1]
    shift = -coeffs[-2] / (n * lead)
    radius = max(abs(coeffs[0] / lead) ** (ctx.mpf(1) / n), ctx.mpf("0.5"))
    z = [shift + radius * ctx.expjpi(ctx.mpf(2 * k) / n + ctx.mpf("0.137")) for k in range(n)]
    eps = ctx.ldexp(1, -ctx.prec + 12)
    for _ in range(max_iter):
        biggest = 0
        for i in range(n):
            p, dp = _horner(coeffs, z[i])
            if p == 0:
                continue
            if dp == 0:
                z[i] += eps * (1 + abs(z[i]))
                biggest = 1
                continue
            ratio = p / dp
            s = sum(1 / (z[i] - z[j]) for j in range(n) if j != i and z[i] != z[j])
            w = ratio / (1 - ratio * s)
            z[i] -= w
            biggest = max(biggest, abs(w) / (1 + abs(z[i])))
        if biggest <= eps:
            break
    return z


def _newton(ctx, coeffs, z, steps=4):
    for _ in range(steps):
        p, dp = _horner(coeffs, z)
        if dp == 0 or p == 0:
            break
        z -= p / dp
    return z


def _rel_residual(ctx, coeffs, z) -> float:
    p, _ = _horner(coeffs, z)
    az = abs(z)
    scale = sum(abs(c) * az**i for i, c in enumerate(coeffs))
    return float(abs(p) / scale) if scale else float(abs(p))


def _cluster(zs, radius):
    groups: list[list] = []
    for z in zs:
        for g in groups:
            if abs(z - g[0]) <= radius * max(1, abs(g[0])):
                g.append(z)
                break
        else:
            groups.append([z])
    return groups


# ---------------------------------------------------------------------------
# closed forms on rational coefficients


def _discriminant(c: Sequence[Fraction]) -> Fraction:
    if len(c) == 3:
        cc, b, a = c
        return b * b - 4 * a * cc
    d, cc, b, a = c
    return (18 * a * b * cc * d - 4 * b**3 * d + b * b * cc * cc
            - 4 * a * cc**3 - 27 * a * a * d * d)


def _closed_form(ctx, c: Sequence[Fraction]):
    """Return (exact_roots, numeric_roots, kinds) for degree <= 3.

    ``exact_roots`` maps rational roots to multiplicities (filled only for
    repeated roots and degree one); ``kinds`` lists 'real'/'complex' for
    the numeric roots, decided by the exact discriminant sign.
    """
    deg = len(c) - 1
    if deg == 1:
        return {-c[0] / c[1]: 1}, [], []
    D = _discriminant(c)
    mp = lambda q: ctx.mpf(q.numerator) / q.denominator  # noqa: E731
    if deg == 2:
        cc, b, a = c
        if D == 0:
            return {-b / (2 * a): 2}, [], []
        sq = ctx.sqrt(abs(mp(D)))
        if D > 0:
            return {}, [(-mp(b) + sq) / (2 * mp(a)), (-mp(b) - sq) / (2 * mp(a))], ["real"] * 2
        re, im = -mp(b) / (2 * mp(a)), sq / (2 * abs(mp(a)))
        return {}, [ctx.mpc(re, im), ctx.mpc(re, -im)], ["complex"] * 2
    d, cc, b, a = c
    if D == 0:
        g = b * b - 3 * a * cc
        if g == 0:
            return {-b / (3 * a): 3}, [], []
        double = (9 * a * d - b * cc) / (2 * g)
        single = (4 * a * b * cc - 9 * a * a * d - b**3) / (a * g)
        return {double: 2, single: 1}, [], []
    A, B, C, E = (mp(x) for x in (a, b, cc, d))
    p = (3 * A * C - B * B) / (3 * A * A)
    q = (2 * B**3 - 9 * A * B * C + 27 * A * A * E) / (27 * A**3)
    shift = -B / (3 * A)
    if D > 0:
        r = 2 * ctx.sqrt(-p / 3)
        theta = ctx.acos(3 * q / (2 * p) * ctx.sqrt(-3 / p)) / 3
        ts = [r * ctx.cos(theta - 2 * ctx.pi * k / 3) for k in range(3)]
        return {}, [t + shift for t in ts], ["real"] * 3
    disc = ctx.sqrt(q * q / 4 + p**3 / 27)
    cbrt = lambda x: ctx.sign(x) * ctx.cbrt(abs(x))  # noqa: E731
    u, v = cbrt(-q / 2 + disc), cbrt(-q / 2 - disc)
    re = -(u + v) / 2 + shift
    im = ctx.sqrt(3) / 2 * abs(u - v)
    return {}, [u + v + shift, ctx.mpc(re, im), ctx.mpc(re, -im)], ["real", "complex", "complex"]


def _match(ctx, closed, iterated, slack):
    """Pair each closed-form root with its nearest unused iterated root.

    Matched entries are removed from ``iterated``.
    """
    left = iterated
    pairs = []
    for w in closed:
        j = min(range(len(left)), key=lambda i: abs(left[i] - w))
        z = left.pop(j)
        if abs(z - w) > slack * max(1, abs(w)):
            raise NoConvergence(
                f"closed form root {ctx.nstr(w, 12)} and iteration {ctx.nstr(z, 12)} disagree", [])
        pairs.append((w, z))
    return pairs


# ---------------------------------------------------------------------------


def find_roots(E: EhrhartPolynomial | Sequence, tol: float = DEFAULT_TOL,
               prec: int | None = None, max_iter: int | None = None) -> RootSet:
    """All complex roots of ``E`` with multiplicity."""
    coeffs = tuple(Fraction(c) for c in (E.coeffs if isinstance(E, EhrhartPolynomial) else E))
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs = coeffs[:-1]
    n = len(coeffs) - 1
    if n < 1:
        raise WrongDegree("root finding needs degree >= 1")
    ctx = mpmath.MPContext()
    ctx.prec = prec or 128 + 4 * n
    mc = [ctx.mpf(c.numerator) / c.denominator for c in coeffs]
    budget = max_iter or 400 + 40 * n

    z = _aberth(ctx, mc, budget)
    groups = _cluster(z, CLUSTER_TOL)
    found: list[tuple] = []  # (mpc value, multiplicity, spread)
    for g in groups:
        if len(g) == 1:
            found.append((_newton(ctx, mc, g[0]), 1, 0))
        else:
            mean = sum(g) / len(g)
            found.append((mean, len(g), max(abs(x - mean) for x in g)))

    roots: list[Root] = []
    mults: list[int] = []
    if n <= 3:
        exact, numeric, kinds = _closed_form(ctx, coeffs)
        flat = [w for w, m, _ in found for _ in range(m)]
        for r, m in exact.items():
            _match(ctx, [ctx.mpf(r.numerator) / r.denominator] * m, flat, 1e-5)
            roots.append((r, Fraction(0)))
            mults.append(m)
        pairs = list(zip(_match(ctx, numeric, flat, 1e-8), kinds))
        exact_real = None
        for (w, zi), kind in pairs:
            if kind == "real":
                x = _to_fraction(ctx.re(_newton(ctx, mc, ctx.mpc(zi))))
                exact_real = _rationalize(coeffs, x)
                roots.append((exact_real or x, Fraction(0)))
                mults.append(1)
        for (w, zi), kind in pairs:
            if kind == "complex":
                zi = _newton(ctx, mc, ctx.mpc(zi))
                im = abs(_to_fraction(ctx.im(zi)))
                re = _to_fraction(ctx.re(zi))
                if exact_real is not None:
                    q = _deflate(coeffs, exact_real)
                    re = -q[1] / (2 * q[2])
                roots.append((re, im if ctx.im(w) > 0 else -im))
                mults.append(1)
        roots, mults = _paired(ctx, mc, roots, mults)
    else:
        snap = ctx.ldexp(1, -ctx.prec // 2)
        for w, m, spread in found:
            w = ctx.mpc(w)
            # a cluster cannot resolve an imaginary part smaller than its own spread
            cut = max(snap * max(1, abs(w)), 2 * spread)
            im = ctx.im(w) if abs(ctx.im(w)) > cut else ctx.mpf(0)
            re = _to_fraction(ctx.re(w))
            if im == 0:
                re = _exact_multiple_root(coeffs, re, m) or re
            roots.append((re, _to_fraction(im)))
            mults.append(m)
        roots, mults = _paired(ctx, mc, roots, mults)

    residuals = tuple(
        _rel_residual(ctx, mc, ctx.mpc(ctx.mpf(a.numerator) / a.denominator,
                                       ctx.mpf(b.numerator) / b.denominator))
        for a, b in roots)
    if sum(mults) != n or any(r > tol for r in residuals):
        raise NoConvergence(f"root finder did not reach tol {tol:g} for degree {n}", list(residuals))
    return RootSet(tuple(roots), tuple(mults), residuals, tol, coeffs)


def _rationalize(coeffs, x: Fraction, max_den: int = 10**6) -> Fraction | None:
    """``x`` replaced by a nearby rational if that is an exact root."""
    r = x.limit_denominator(max_den)
    return r if poly_eval(coeffs, r) == 0 else None


def _exact_multiple_root(coeffs, x: Fraction, m: int) -> Fraction | None:
    """A rational near ``x`` that is a root of multiplicity exactly ``m``."""
    r = _rationalize(coeffs, x)
    if r is None:
        return None
    q = list(coeffs)
    for _ in range(m):
        if poly_eval(q, r) != 0:
            return None
        q = _deflate(q, r)
    return r if poly_eval(q, r) != 0 else None


def _deflate(coeffs, r: Fraction) -> list[Fraction]:
    """Quotient of the polynomial by ``(s - r)``, constant term first."""
    out = [Fraction(0)] * (len(coeffs) - 1)
    acc = Fraction(0)
    for i in range(len(coeffs) - 1, 0, -1):
        acc = acc * r + coeffs[i]
        out[i - 1] = acc
    return out


def _paired(ctx, mc, roots, mults):
    try:
        return _conjugate_pairs(roots, mults)
    except NoConvergence as exc:
        raw = [_rel_residual(ctx, mc, ctx.mpc(ctx.mpf(a.numerator) / a.denominator,
                                              ctx.mpf(b.numerator) / b.denominator))
               for a, b in roots]
        raise NoConvergence(str(exc), raw) from None


def _conjugate_pairs(roots, mults):
    """Make non-real roots exact conjugates and order everything canonically."""
    out: dict[Root, int] = {}
    upper = [(a, b, m) for (a, b), m in zip(roots, mults) if b > 0]
    lower = [(a, b, m) for (a, b), m in zip(roots, mults) if b < 0]
    for a, b, m in [(a, b, m) for (a, b), m in zip(roots, mults) if b == 0]:
        out[(a, Fraction(0))] = out.get((a, Fraction(0)), 0) + m
    for a, b, m in upper:
        if not lower:
            raise NoConvergence("non-real roots are not conjugate-paired", [])
        j = min(range(len(lower)), key=lambda i: abs(lower[i][0] - a) + abs(lower[i][1] + b))
        la, lb, lm = lower.pop(j)
        if lm != m:
            raise NoConvergence("conjugate roots have different multiplicities", [])
        re, im = (a + la) / 2, (b - lb) / 2
        out[(re, im)] = m
        out[(re, -im)] = lm
    if lower:
        raise NoConvergence("non-real roots are not conjugate-paired", [])
    keys = sorted(out, key=lambda r: (r[0], r[1]))
    return keys, [out[k] for k in keys]


def reconstruct(R: RootSet) -> list[complex]:
    """Coefficients of ``G_n * prod (s - z)`` as complex floats."""
    poly = [complex(1)]
    for z in R.as_complex():
        nxt = [complex(0)] * (len(poly) + 1)
        for i, c in enumerate(poly):
            nxt[i + 1] += c
            nxt[i] -= z * c
        poly = nxt
    lead = float(R.coeffs[-1])
    return [lead * c for c in poly]


# ---------------------------------------------------------------------------
# checks on root sets


def critical_line_check(R: RootSet, tol: float = DEFAULT_TOL) -> bool:
    """Every root has real part ``-1/2`` within ``tol``."""
    return all(abs(a + Fraction(1, 2)) <= Fraction(tol) for a, _ in R.roots)


def braun_disc_check(R: RootSet, n: int, tol: float = DEFAULT_TOL) -> bool:
    """All roots within ``n(n-1)/2`` of ``-1/2``."""
    if n < 2:
        raise ValueError("disc check needs n >= 2")
    radius = Fraction(n * (n - 1), 2) + Fraction(tol)
    return all((a + Fraction(1, 2)) ** 2 + b * b <= radius * radius for a, b in R.roots)


TAGS = ("real_in_[-3,-1]", "real_in_(-1,1)", "complex_in_disc", "boundary_semicircle",
        "real_part_minus1", "real_part_minus_half", "outside")


@dataclass(frozen=True)
class RegionVerdict:
    """Per-root location tags and signed margins for a cubic's roots.

    A positive margin means strictly inside that constraint.
    """

    roots: tuple[Root, ...]
    tags: tuple[str, ...]
    margins: tuple[dict, ...]
    boundaries: tuple[tuple[str, ...], ...]
    interior_points: int
    tol: float

    @property
    def inside(self) -> bool:
        return "outside" not in self.tags

    def to_json(self) -> dict:
        return {
            "interior_points": self.interior_points,
            "inside": self.inside,
            "roots": [
                {"re": fmt_decimal(a), "im": fmt_decimal(b), "tag": t,
                 "boundaries": list(bd), "margins": {k: fmt_decimal(v) for k, v in m.items()}}
                for (a, b), t, m, bd in zip(self.roots, self.tags, self.margins, self.boundaries)
            ],
        }

    def to_csv(self) -> str:
        lines = ["re,im,tag"]
        lines += [f"{fmt_decimal(a)},{fmt_decimal(b)},{t}" for (a, b), t in zip(self.roots, self.tags)]
        return "\n".join(lines) + "\n"


def _margins(a: Fraction, b: Fraction, l: int) -> dict[str, Fraction]:
    if b == 0:
        m = {"real_lower": a + 3, "real_upper": 1 - a}
        if l == 0:
            # without interior points no real root lies in the open gap (-3, -2)
            m["gap"] = max(-3 - a, a + 2)
        return m
    m = {"disc": 3 - a * a - b * b, "re_lower": a + 1, "re_upper": 1 - a}
    if l == 0:
        m["semicircle"] = 2 - (a + 1) ** 2 - b * b
    return m


def classify_3d(R: RootSet, l: int, tol: float = DEFAULT_TOL) -> RegionVerdict:
    """Locate a cubic's roots within the known region for 3-polytopes.

    The region is ``[-3, -1]`` on the real line together with
    ``{-1 <= a < 1, a^2 + b^2 <= 3}``.  ``l`` is the number of interior
    lattice points; for ``l = 0`` the sharper constraints also apply: real
    roots avoid ``(-3, -2)`` and complex roots lie in the half disc
    ``(a+1)^2 + b^2 <= 2, a >= -1``.
    """
    if R.degree != 3:
        raise WrongDegree(f"region classification needs degree 3, got {R.degree}")
    t = Fraction(tol)
    tags, margins, bounds = [], [], []
    for a, b in R.expanded():
        m = _margins(a, b, l)
        on = tuple(k for k, v in m.items() if abs(v) <= t)
        if b != 0 and abs(a + Fraction(1, 2)) <= t:
            on += ("re=-1/2",)
        if all(v >= -t for v in m.values()):
            if b == 0:
                tag = "real_in_[-3,-1]" if a <= -1 + t else "real_in_(-1,1)"
            elif "re=-1/2" in on:
                tag = "real_part_minus_half"
            elif "re_lower" in on:
                tag = "real_part_minus1"
            elif "semicircle" in on:
                tag = "boundary_semicircle"
            else:
                tag = "complex_in_disc"
        else:
            tag = "outside"
        tags.append(tag)
        margins.append(m)
        bounds.append(on)
    return RegionVerdict(tuple(R.expanded()), tuple(tags), tuple(margins), tuple(bounds), l, tol)


def mean_identities_check(E: EhrhartPolynomial, R: RootSet, tol: float = DEFAULT_TOL,
                          instance: str = "") -> VerificationReport:
    """Product and sum of the negated roots against ``1/vol`` and ``G_{n-1}/vol``."""
    zs = R.as_complex()
    prod_gamma = 1 + 0j
    for z in zs:
        prod_gamma *= -z
    sum_gamma = -sum(zs)
    want_prod = 1 / E.volume
    want_sum = E[E.n - 1] / E.volume
    err_prod = abs(prod_gamma - float(want_prod)) / float(want_prod)
    err_sum = abs(sum_gamma - float(want_sum)) / max(1.0, abs(float(want_sum)))
    checks = [
        check("|prod gamma - 1/vol| / (1/vol)", err_prod, "<=", tol),
        check("|sum gamma - G_{n-1}/vol|", err_sum, "<=", tol),
    ]
    return make_report("eq-1.5", instance, checks, prod_gamma=prod_gamma.real,
                       one_over_vol=want_prod, sum_gamma=sum_gamma.real, g_ratio=want_sum)


# ---------------------------------------------------------------------------
# the simplices S_n(1)


def sn1_polynomial(n: int) -> EhrhartPolynomial:
    """``C(s+n+1, n+1) - C(s, n+1)``, the Ehrhart polynomial of ``S_n(1)``."""
    if n < 1:
        raise ValueError("n >= 1 required")
    top = binomial_poly(n + 1, n + 1)
    low = binomial_poly(0, n + 1)
    E = EhrhartPolynomial(tuple(poly_add(top, [-c for c in low])[: n + 1]))
    assert E == from_hstar((1,) * (n + 1))
    return E


def _h(b: float, n: int) -> float:
    if b == 0:
        return (n + 1) * math.pi / 2
    return sum(math.atan((2 * m + 1) / (2 * b)) for m in range(n + 1))


def _solve_h(n: int, target: float, tol: float) -> float:
    lo, hi = 0.0, 1.0
    while _h(hi, n) > target:
        hi *= 2
        if hi > 1e12:
            raise BracketFailure(f"no bracket for h(b) = {target} at n={n}")
    if _h(lo, n) < target:
        raise BracketFailure(f"h(0) < {target} at n={n}")
    for _ in range(400):
        mid = (lo + hi) / 2
        if _h(mid, n) > target:
            lo = mid
        else:
            hi = mid
        if hi - lo <= tol * max(1.0, hi) or mid in (lo, hi) and hi - lo < 1e-300:
            break
    return (lo + hi) / 2


def sn1_spectrum(n: int, tol: float = 1e-13) -> list[float]:
    """Imaginary parts ``b >= 0`` of the roots ``-1/2 ± ib`` of ``G(s, S_n(1))``.

    Solves ``sum_{m=0}^{n} arccot(2b/(2m+1)) = k pi`` for
    ``k = 1..floor((n+1)/2)``, in that order, so ``b`` decreases.
    """
    if n < 1:
        raise ValueError("n >= 1 required")
    out = []
    for k in range(1, (n + 1) // 2 + 1):
        if 2 * k == n + 1:
            out.append(0.0)
        else:
            out.append(_solve_h(n, k * math.pi, tol))
    return out


def sn1_max_root_asymptotic(n_list: Sequence[int], tol: float = 1e-13) -> list[tuple[int, float, float]]:
    """``(n, b_n, b_n / (n(n+2)/(2 pi)))`` with ``b_n`` solving ``h(b) = pi``."""
    rows = []
    for n in n_list:
        if n < 1:
            raise ValueError("n >= 1 required")
        b = 0.0 if n == 1 else _solve_h(n, math.pi, tol)
        rows.append((n, b, b / (n * (n + 2) / (2 * math.pi))))
    return rows
