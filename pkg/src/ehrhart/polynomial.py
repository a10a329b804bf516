"""Ehrhart polynomials: interpolation, the h*-basis, and a simplex oracle.

Coefficients are ``Fraction`` throughout.  ``G(s) = sum G_i s^i`` is built
from the counts ``G(kP)``, ``k = 0..n``, by forward differences and then
confirmed against one further count.  The h*-vector is read off the raw
values with the alternating binomial sum, never by solving a linear system.
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Sequence

from .counting import count_points
from .errors import CountMismatch, NegativeEntry, NonIntegral, NotASimplex
from .lattice import LatticePolytope, det, inverse
from .report import VerificationReport, check, make_report


# ---------------------------------------------------------------------------
# dense polynomial helpers (coefficient lists, constant term first)


def poly_mul(p: Sequence, q: Sequence) -> list:
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return out


def poly_add(p: Sequence, q: Sequence) -> list:
    n = max(len(p), len(q))
    return [(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)]


def poly_eval(coeffs: Sequence, s):
    acc = 0 * s
    for c in reversed(coeffs):
        acc = acc * s + c
    return acc


def binomial_poly(shift: int, n: int) -> list[Fraction]:
    """Coefficients of ``C(s + shift, n)`` as a polynomial in ``s``."""
    p = [Fraction(1)]
    for j in range(n):
        p = poly_mul(p, [Fraction(shift - j), Fraction(1)])
    return [c / factorial(n) for c in p]


# ---------------------------------------------------------------------------
# value types


@dataclass(frozen=True)
class EhrhartPolynomial:
    """``G(s) = G_0 + G_1 s + ... + G_n s^n`` with rational coefficients."""

    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        c = tuple(Fraction(x) for x in self.coeffs)
        object.__setattr__(self, "coeffs", c)
        if len(c) < 2:
            raise ValueError("Ehrhart polynomial needs degree >= 1")
        if c[0] != 1:
            raise ValueError(f"constant coefficient is {c[0]}, expected 1")
        if c[-1] <= 0:
            raise ValueError("leading coefficient (the volume) must be positive")
        if (c[-1] * factorial(len(c) - 1)).denominator != 1:
            raise NonIntegral(f"n! * vol = {c[-1] * factorial(len(c) - 1)} is not an integer")

    @property
    def n(self) -> int:
        return len(self.coeffs) - 1

    @property
    def volume(self) -> Fraction:
        return self.coeffs[-1]

    def __getitem__(self, i: int) -> Fraction:
        return self.coeffs[i]

    def __call__(self, s):
        if isinstance(s, int):
            s = Fraction(s)
        return poly_eval(self.coeffs, s)

    def interior_count(self, k: int = 1) -> int:
        """Reciprocity: ``G(int kP) = (-1)^n G(-k)``."""
        v = (-1) ** self.n * self(-k)
        assert v.denominator == 1
        return int(v)

    def to_json(self) -> list[list[str]]:
        return [[str(c.numerator), str(c.denominator)] for c in self.coeffs]

    @classmethod
    def from_json(cls, data) -> "EhrhartPolynomial":
        return cls(tuple(Fraction(int(p), int(q)) for p, q in data))

    def __str__(self) -> str:
        terms = [f"({c})*s^{i}" for i, c in enumerate(self.coeffs) if c]
        return " + ".join(reversed(terms))


@dataclass(frozen=True)
class HStarVector:
    """Coefficients ``a_0..a_n`` of ``G`` in the basis ``C(k+n-i, n)``."""

    a: tuple[int, ...]

    def __post_init__(self):
        a = tuple(self.a)
        if any(not isinstance(x, int) for x in a):
            raise NonIntegral(f"h*-entries must be integers: {a}")
        if a[0] != 1:
            raise ValueError(f"a_0 = {a[0]}, expected 1")
        if any(x < 0 for x in a):
            raise NegativeEntry(f"negative h*-entry in {a}")
        object.__setattr__(self, "a", a)

    @property
    def n(self) -> int:
        return len(self.a) - 1

    def __getitem__(self, i):
        return self.a[i]

    def __len__(self):
        return len(self.a)

    def __iter__(self):
        return iter(self.a)

    @property
    def is_symmetric(self) -> bool:
        return self.a == self.a[::-1]


# ---------------------------------------------------------------------------
# conversions


def interpolate_counts(counts: Sequence[int]) -> EhrhartPolynomial:
    """Degree ``len(counts)-1`` polynomial through ``(k, counts[k])``."""
    n = len(counts) - 1
    diffs = [Fraction(c) for c in counts]
    leading = [diffs[0]]
    for _ in range(n):
        diffs = [b - a for a, b in zip(diffs, diffs[1:])]
        leading.append(diffs[0])
    coeffs = [Fraction(0)] * (n + 1)
    falling = [Fraction(1)]
    for j, d in enumerate(leading):
        if j:
            falling = poly_mul(falling, [Fraction(-(j - 1)), Fraction(1)])
        for i, c in enumerate(falling):
            coeffs[i] += d * c / factorial(j)
    return EhrhartPolynomial(tuple(coeffs))


def interpolate(P: LatticePolytope, work_cap: int | None = None) -> EhrhartPolynomial:
    """Ehrhart polynomial of ``P`` from the counts of ``0P..nP``.

    The result is checked against a fresh count of ``(n+1)P``.
    """
    n = P.dim
    E = interpolate_counts([count_points(P, k, work_cap) for k in range(n + 1)])
    extra = count_points(P, n + 1, work_cap)
    if E(n + 1) != extra:
        raise CountMismatch(f"G({n + 1}) = {E(n + 1)} from interpolation, {extra} counted")
    return E


def to_hstar(E: EhrhartPolynomial) -> HStarVector:
    n = E.n
    values = [E(k) for k in range(n + 1)]
    a = []
    for i in range(n + 1):
        v = sum((-1) ** j * comb(n + 1, j) * values[i - j] for j in range(i + 1))
        if v.denominator != 1:
            raise NonIntegral(f"a_{i} = {v}")
        if v < 0:
            raise NegativeEntry(f"a_{i} = {v}")
        a.append(int(v))
    if a[0] != 1 or a[1] != values[1] - (n + 1) or a[n] != E.interior_count(1) \
            or sum(a) != factorial(n) * E.volume:
        raise CountMismatch(f"h*-identities violated by {a} for {E}")
    return HStarVector(tuple(a))


def from_hstar(h: HStarVector | Sequence[int]) -> EhrhartPolynomial:
    a = tuple(h)
    n = len(a) - 1
    coeffs = [Fraction(0)]
    for i, ai in enumerate(a):
        if ai:
            coeffs = poly_add(coeffs, [ai * c for c in binomial_poly(n - i, n)])
    return EhrhartPolynomial(tuple(coeffs))


def ehrhart_and_hstar(P: LatticePolytope, work_cap: int | None = None):
    E = interpolate(P, work_cap)
    return E, to_hstar(E)


# ---------------------------------------------------------------------------
# half-open parallelepiped oracle


def _cone_matrix(S: LatticePolytope) -> list[list[int]]:
    n = S.dim
    return [[v[i] for v in S.vertices] for i in range(n)] + [[1] * (n + 1)]


def parallelepiped_points(S: LatticePolytope) -> list[tuple[int, ...]]:
    """Lattice points of ``{sum l_j (v_j, 1) : 0 <= l_j < 1}``.

    The points are in bijection with ``Z^(n+1) / L`` for the lattice ``L``
    spanned by the cone generators.  That group is generated by the unit
    vectors, so a breadth-first closure over their images (in barycentric
    numerators mod ``|det|``) visits each point exactly once.
    """
    if not S.is_simplex:
        raise NotASimplex(f"{S.label or 'polytope'} has {len(S.vertices)} vertices")
    M = _cone_matrix(S)
    d = len(M)
    D = abs(det(M))
    minv = inverse(M)
    # barycentric coordinates of e_i, scaled by D and reduced mod D
    gens = [tuple(int(minv[j][i] * D) % D for j in range(d)) for i in range(d)]
    start = (0,) * d
    seen = {start}
    queue = deque([start])
    while queue:
        cur = queue.popleft()
        for g in gens:
            nxt = tuple((x + y) % D for x, y in zip(cur, g))
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    assert len(seen) == D
    pts = []
    for lam in seen:
        p = [sum(M[i][j] * lam[j] for j in range(d)) for i in range(d)]
        assert all(x % D == 0 for x in p)
        pts.append(tuple(x // D for x in p))
    return sorted(pts)


def hstar_simplex_oracle(S: LatticePolytope) -> HStarVector:
    """h*-vector of a lattice simplex, graded by height in the parallelepiped."""
    heights = Counter(p[-1] for p in parallelepiped_points(S))
    return HStarVector(tuple(heights.get(i, 0) for i in range(S.dim + 1)))


# ---------------------------------------------------------------------------


def hibi_checks(h: HStarVector, has_interior: bool, instance: str = "") -> dict[str, VerificationReport]:
    """Hibi's lower bound ``a_i >= a_1`` and the palindromic test.

    The lower bound only applies with an interior lattice point; otherwise its
    report is ``n/a``.  The symmetry report passes iff the vector is
    palindromic, which characterises reflexive polytopes.
    """
    n = h.n
    lower = [check(f"a_{i} >= a_1", h[i], ">=", h[1]) for i in range(1, n)] if has_interior else []
    sym = [check(f"a_{i} == a_{n - i}", h[i], "==", h[n - i]) for i in range(n + 1)]
    return {
        "hibi_lower_bound": make_report("eq-2.1", instance, lower, hstar=list(h)),
        "symmetric": make_report("lemma-3.1", instance, sym, hstar=list(h)),
    }
