"""Reflexive polytopes: detection and the low-dimensional critical-line tests."""

from __future__ import annotations

from dataclasses import asdict, dataclass
from fractions import Fraction

from .counting import count_interior, count_points
from .errors import DimensionUnsupported, NotReflexive
from .lattice import IntPoint, LatticePolytope, interior_lattice_points
from .polynomial import EhrhartPolynomial, HStarVector, ehrhart_and_hstar, poly_add, poly_mul
from .report import VerificationReport, check, make_report
from .roots import critical_line_check, find_roots


def functional_equation_holds(E: EhrhartPolynomial) -> bool:
    """``G(s) == (-1)^n G(-1-s)`` as polynomials."""
    n = E.n
    shifted = [Fraction(0)]
    power = [Fraction(1)]
    for c in E.coeffs:
        shifted = poly_add(shifted, [c * x for x in power])
        power = poly_mul(power, [Fraction(-1), Fraction(-1)])
    sign = (-1) ** n
    return all(a == sign * b for a, b in zip(E.coeffs, shifted))


@dataclass(frozen=True)
class ReflexivityReport:
    is_reflexive: bool
    witness_center: IntPoint | None
    dual_integral: bool
    hibi_symmetric: bool
    functional_equation: bool
    lemma31_volume_identity: bool
    dilation_identity: bool
    interior_points: int
    hstar: tuple[int, ...]

    def to_json(self) -> dict:
        d = asdict(self)
        d["witness_center"] = list(self.witness_center) if self.witness_center else None
        d["hstar"] = list(self.hstar)
        return d


def reflexivity_report(P: LatticePolytope, E: EhrhartPolynomial | None = None,
                       h: HStarVector | None = None) -> ReflexivityReport:
    """Test reflexivity four ways and insist that they agree.

    The dual is integral about an interior lattice point ``c`` exactly when
    every facet ``a.x <= b`` (``a`` primitive) has ``b - a.c = 1``.  The
    other tests are the palindromic h*-vector and the functional equation;
    all are translation invariant, so no centering is assumed.
    """
    if E is None or h is None:
        E, h = ehrhart_and_hstar(P)
    inner = interior_lattice_points(P)
    centers = [c for c in inner if all(hs.slack(c) == 1 for hs in P.halfspaces)]
    dual_integral = bool(centers)
    if dual_integral:
        assert len(centers) == 1 and len(inner) == 1, "a reflexive polytope has one interior point"
    symmetric = h.is_symmetric
    functional = functional_equation_holds(E)
    agree = {dual_integral, symmetric, functional}
    assert len(agree) == 1, (
        f"reflexivity tests disagree on {P.label or P.vertices}: dual={dual_integral}, "
        f"hibi={symmetric}, functional={functional}")
    n = P.dim
    vol_identity = E[n - 1] == Fraction(n, 2) * E.volume
    dilation = all(count_points(P, k) == count_interior(P, k + 1) for k in (1, 2))
    if dual_integral:
        assert vol_identity and dilation
    return ReflexivityReport(dual_integral, centers[0] if centers else None, dual_integral,
                             symmetric, functional, vol_identity, dilation, len(inner), h.a)


def _require_reflexive(P: LatticePolytope, E, h):
    if E is None or h is None:
        E, h = ehrhart_and_hstar(P)
    if not h.is_symmetric:
        raise NotReflexive(f"{P.label or 'polytope'} is not reflexive (h* = {list(h)})")
    return E, h


@dataclass(frozen=True)
class CriticalLineConditions:
    """Exact ingredients of the critical-line test for reflexive 4-polytopes.

    ``discriminant`` is ``(G - 1 - 4 vol)^2 >= 16 vol`` (i.e. ``mu^2 >= beta``);
    ``doubled_hibi`` is ``2 G <= 9 vol + 18``; ``mu_guard`` is ``mu >= 1/4``.
    """

    mu: Fraction
    beta: Fraction
    discriminant: bool
    doubled_hibi: bool
    mu_guard: bool

    @property
    def holds(self) -> bool:
        return self.discriminant and self.doubled_hibi and self.mu_guard


def critical_line_conditions(P: LatticePolytope, E=None, h=None) -> CriticalLineConditions:
    E, h = _require_reflexive(P, E, h)
    if P.dim != 4:
        raise DimensionUnsupported("these conditions are specific to dimension 4")
    vol = E.volume
    mu = (1 + Fraction(h[1], 4)) / vol - 1
    beta = 1 / vol
    disc = mu * mu >= beta
    guard = mu >= Fraction(1, 4)
    # (mu - 1/4)^2 >= mu^2 - beta, the squared form of mu - sqrt(mu^2 - beta) >= 1/4
    second = (mu - Fraction(1, 4)) ** 2 >= mu * mu - beta
    G = E(1)
    assert disc == ((G - 1 - 4 * vol) ** 2 >= 16 * vol)
    assert second == (2 * G <= 9 * vol + 18)
    return CriticalLineConditions(mu, beta, disc, second, guard)


def critical_line_criterion(P: LatticePolytope, E=None, h=None) -> bool:
    """Decide exactly whether all roots of a reflexive ``P`` have real part -1/2."""
    E, h = _require_reflexive(P, E, h)
    n = P.dim
    if n <= 3:
        return E.volume <= 2**n
    if n == 4:
        return critical_line_conditions(P, E, h).holds
    raise DimensionUnsupported(f"no criterion known for n = {n}")


@dataclass(frozen=True)
class Factorization:
    """``G(s)/vol`` as a product of low-degree factors with exact parameters.

    ``n = 2``: ``s^2 + s + 1/vol``.  ``n = 3``: ``(s + 1/2)(s^2 + s + 2/vol)``.
    ``n = 4``: ``(s^2 + s + mu + r)(s^2 + s + mu - r)`` with ``r^2 = mu^2 - beta``,
    stored as the pair ``(mu, mu^2 - beta)``.
    """

    n: int
    volume: Fraction
    linear: tuple[Fraction, ...]
    quadratic_constants: tuple[Fraction, ...]
    surd: tuple[Fraction, Fraction] | None = None

    @property
    def complex_quadratics(self) -> bool:
        return self.surd is not None and self.surd[1] < 0

    def expand(self) -> list[Fraction]:
        poly = [Fraction(1)]
        for r in self.linear:
            poly = poly_mul(poly, [r, Fraction(1)])
        for c in self.quadratic_constants:
            poly = poly_mul(poly, [c, Fraction(1), Fraction(1)])
        if self.surd is not None:
            mu, d = self.surd
            sq = poly_mul([mu, 1, 1], [mu, 1, 1])
            poly = poly_mul(poly, poly_add(sq, [-d]))
        return poly

    def to_json(self) -> dict:
        pair = lambda x: [str(x.numerator), str(x.denominator)]  # noqa: E731
        out = {"n": self.n, "volume": pair(self.volume),
               "linear": [pair(r) for r in self.linear],
               "quadratic_constants": [pair(c) for c in self.quadratic_constants]}
        if self.surd is not None:
            out["mu"], out["mu2_minus_beta"] = pair(self.surd[0]), pair(self.surd[1])
        return out


def reflexive_factorization(P: LatticePolytope, E=None, h=None) -> Factorization:
    E, h = _require_reflexive(P, E, h)
    vol = E.volume
    n = P.dim
    if n == 2:
        F = Factorization(2, vol, (), (1 / vol,))
    elif n == 3:
        F = Factorization(3, vol, (Fraction(1, 2),), (2 / vol,))
    elif n == 4:
        mu = (1 + Fraction(h[1], 4)) / vol - 1
        F = Factorization(4, vol, (), (), (mu, mu * mu - 1 / vol))
    else:
        raise DimensionUnsupported(f"factorization is only known for n in 2..4, got {n}")
    assert F.expand() == [c / vol for c in E.coeffs], "factorization does not reproduce G/vol"
    return F


def doubled_polytope_bridge(P: LatticePolytope, tol: float = 1e-9) -> VerificationReport:
    """If the complex roots of a 3-polytope have real part -1, check ``2P``.

    All roots of ``G(s, 2P) = G(2s, P)`` then lie on the critical line, and
    ``2P`` must be reflexive.  Other polytopes give an ``n/a`` report.
    """
    if P.dim != 3:
        raise DimensionUnsupported("the doubling argument is for 3-polytopes")
    E, _ = ehrhart_and_hstar(P)
    R = find_roots(E, tol)
    cplx = R.complex_roots
    label = P.label or str(P.vertices)
    if not cplx or any(abs(a + 1) > Fraction(tol) for a, _ in cplx):
        return make_report("bridge-2p", label, [], reason="complex roots do not have real part -1")
    Q = P.dilate(2)
    E2, h2 = ehrhart_and_hstar(Q)
    rep = reflexivity_report(Q, E2, h2)
    on_line = critical_line_check(find_roots(E2, tol), tol)
    checks = [check("2P reflexive", rep.is_reflexive, "==", True),
              check("roots of 2P on re = -1/2", on_line, "==", True),
              check("criterion for 2P", critical_line_criterion(Q, E2, h2), "==", True)]
    return make_report("bridge-2p", label, checks, hstar_2p=list(h2), volume_2p=E2.volume)

