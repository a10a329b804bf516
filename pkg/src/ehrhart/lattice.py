"""Exact lattice polytopes: hulls, halfspaces, duals and unimodular maps.

Everything in this module works on Python integers and ``Fraction``; there is
no floating point anywhere.  Facet and vertex enumeration both go through a
single fraction-free double description routine (:func:`extreme_rays`).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import permutations, product
from math import gcd, factorial
from typing import Iterable, Sequence

from .errors import (
    CenterNotInterior,
    DegenerateInput,
    DimensionTooLarge,
    NotUnimodular,
    Unbounded,
)

IntPoint = tuple[int, ...]
RationalPoint = tuple[Fraction, ...]

MAX_DIM = 6


# ---------------------------------------------------------------------------
# small exact linear algebra


def dot(u: Sequence, v: Sequence):
    return sum(a * b for a, b in zip(u, v))


def _gcd_all(values: Iterable[int]) -> int:
    g = 0
    for v in values:
        g = gcd(g, int(v))
    return g


def primitive(vec: Sequence) -> IntPoint:
    """Scale a rational vector to the primitive integer vector on its ray."""
    fracs = [Fraction(x) for x in vec]
    den = 1
    for f in fracs:
        den = den * f.denominator // gcd(den, f.denominator)
    ints = [int(f * den) for f in fracs]
    g = _gcd_all(ints)
    if g == 0:
        return tuple(ints)
    return tuple(x // g for x in ints)


def rank(rows: Sequence[Sequence]) -> int:
    m = [[Fraction(x) for x in r] for r in rows]
    r = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(r + 1, len(m)):
            if m[i][c]:
                f = m[i][c] / m[r][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        r += 1
    return r


def det(mat: Sequence[Sequence[int]]) -> int:
    """Integer determinant (Bareiss fraction-free elimination)."""
    a = [list(map(int, row)) for row in mat]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def inverse(mat: Sequence[Sequence]) -> list[list[Fraction]]:
    n = len(mat)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(mat)]
    for c in range(n):
        piv = next((i for i in range(c, n) if aug[i][c] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        aug[c], aug[piv] = aug[piv], aug[c]
        p = aug[c][c]
        aug[c] = [x / p for x in aug[c]]
        for i in range(n):
            if i != c and aug[i][c]:
                f = aug[i][c]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[c])]
    return [row[n:] for row in aug]


def _independent_subset(rows: Sequence[Sequence[int]], d: int) -> list[int] | None:
    chosen: list[int] = []
    basis: list[list[Fraction]] = []
    for idx, row in enumerate(rows):
        v = [Fraction(x) for x in row]
        for b in basis:
            lead = next(i for i, x in enumerate(b) if x != 0)
            if v[lead]:
                f = v[lead] / b[lead]
                v = [x - f * y for x, y in zip(v, b)]
        if any(v):
            basis.append(v)
            chosen.append(idx)
            if len(chosen) == d:
                return chosen
    return None


def extreme_rays(rows: Sequence[Sequence[int]], d: int) -> list[IntPoint]:
    """Extreme rays of the pointed cone ``{y in R^d : r.y <= 0 for r in rows}``.

    Double description with the combinatorial adjacency test.  Rays are kept
    as primitive integer vectors, so the arithmetic stays exact and small.
    Raises :class:`DegenerateInput` when the rows do not span ``R^d`` (the
    cone has a lineality space).
    """
    rows = [tuple(int(x) for x in r) for r in rows]
    basis = _independent_subset(rows, d)
    if basis is None:
        raise DegenerateInput("constraint rows do not span the ambient space")
    binv = inverse([rows[i] for i in basis])
    rays = [primitive([-binv[i][j] for i in range(d)]) for j in range(d)]
    zeros = []
    full = 0
    for i in basis:
        full |= 1 << i
    for j, i in enumerate(basis):
        zeros.append(full & ~(1 << i))

    in_basis = set(basis)
    for idx, row in enumerate(rows):
        if idx in in_basis:
            continue
        vals = [dot(row, y) for y in rays]
        bit = 1 << idx
        new_rays: list[IntPoint] = []
        new_zeros: list[int] = []
        plus = []
        minus = []
        for k, v in enumerate(vals):
            if v > 0:
                plus.append(k)
            else:
                new_rays.append(rays[k])
                new_zeros.append(zeros[k] | bit if v == 0 else zeros[k])
                if v < 0:
                    minus.append(k)
        for p in plus:
            for m in minus:
                common = zeros[p] & zeros[m]
                if common.bit_count() < d - 2:
                    continue
                if any(o != p and o != m and (zeros[o] & common) == common
                       for o in range(len(rays))):
                    continue
                comb = [vals[p] * a - vals[m] * b for a, b in zip(rays[m], rays[p])]
                new_rays.append(primitive(comb))
                new_zeros.append(common | bit)
        rays, zeros = new_rays, new_zeros
    return rays


# ---------------------------------------------------------------------------
# polytopes


@dataclass(frozen=True, order=True)
class Halfspace:
    """``normal . x <= rhs`` with a primitive integer normal."""

    normal: IntPoint
    rhs: int

    def __post_init__(self):
        if _gcd_all(self.normal) != 1:
            raise ValueError(f"halfspace normal {self.normal} is not primitive")

    def slack(self, x: Sequence) -> Fraction | int:
        return self.rhs - dot(self.normal, x)


def _check_dim(n: int, max_dim: int) -> None:
    if n > max_dim:
        raise DimensionTooLarge(f"dimension {n} exceeds the cap {max_dim}")


def convex_hull_halfspaces(vertices: Sequence[Sequence[int]],
                           max_dim: int = MAX_DIM) -> list[Halfspace]:
    """Irredundant facet description of ``conv(vertices)``, sorted by normal."""
    pts = sorted({tuple(int(x) for x in v) for v in vertices})
    if not pts:
        raise DegenerateInput("no points")
    n = len(pts[0])
    if n == 0 or any(len(p) != n for p in pts):
        raise DegenerateInput("points have inconsistent dimension")
    _check_dim(n, max_dim)
    rows = [p + (-1,) for p in pts]
    try:
        rays = extreme_rays(rows, n + 1)
    except DegenerateInput:
        raise DegenerateInput(
            f"points do not affinely span R^{n}") from None
    out = []
    for ray in rays:
        normal, rhs = ray[:n], ray[n]
        g = _gcd_all(normal)
        out.append(Halfspace(tuple(a // g for a in normal), rhs // g))
    return sorted(out)


def vertices_from_halfspaces(normals: Sequence[Sequence[int]],
                             rhs: Sequence[int]) -> list[RationalPoint]:
    """Vertex enumeration of the bounded polyhedron ``{x : A x <= b}``."""
    n = len(normals[0])
    rows = [tuple(a) + (-int(b),) for a, b in zip(normals, rhs)]
    rows.append((0,) * n + (-1,))
    try:
        rays = extreme_rays(rows, n + 1)
    except DegenerateInput:
        raise Unbounded("halfspace normals do not span R^n") from None
    verts = []
    for ray in rays:
        t = ray[n]
        if t <= 0:
            raise Unbounded("halfspace system is unbounded or empty")
        verts.append(tuple(Fraction(x, t) for x in ray[:n]))
    return sorted(verts)


@dataclass(frozen=True)
class LatticePolytope:
    """A full-dimensional lattice polytope given by its vertex set.

    The facet description is computed once at construction and validated
    against the vertices: every listed vertex must be extreme.
    """

    dim: int
    vertices: tuple[IntPoint, ...]
    label: str = ""
    halfspaces: tuple[Halfspace, ...] = field(default=(), compare=False, repr=False)

    def __post_init__(self):
        verts = tuple(sorted({tuple(int(x) for x in v) for v in self.vertices}))
        if any(len(v) != self.dim for v in verts):
            raise DegenerateInput("vertex length differs from dim")
        object.__setattr__(self, "vertices", verts)
        hs = tuple(self.halfspaces) or tuple(convex_hull_halfspaces(verts))
        object.__setattr__(self, "halfspaces", hs)
        for v in verts:
            tight = [h.normal for h in hs if h.slack(v) == 0]
            if rank(tight) < self.dim:
                raise DegenerateInput(f"{v} is not a vertex of the hull")

    @classmethod
    def from_points(cls, points: Iterable[Sequence[int]], label: str = "") -> "LatticePolytope":
        """Hull of arbitrary lattice points; non-extreme points are dropped."""
        pts = sorted({tuple(int(x) for x in p) for p in points})
        hs = convex_hull_halfspaces(pts)
        n = len(pts[0])
        verts = [p for p in pts
                 if rank([h.normal for h in hs if h.slack(p) == 0]) == n]
        return cls(n, tuple(verts), label, tuple(hs))

    @classmethod
    def from_halfspaces(cls, normals, rhs, label: str = "") -> "LatticePolytope":
        verts = vertices_from_halfspaces(normals, rhs)
        bad = [v for v in verts if any(x.denominator != 1 for x in v)]
        if bad:
            raise DegenerateInput(f"halfspace system has non-lattice vertex {bad[0]}")
        return cls.from_points([tuple(int(x) for x in v) for v in verts], label)

    @property
    def is_simplex(self) -> bool:
        return len(self.vertices) == self.dim + 1

    def contains(self, x: Sequence, strict: bool = False) -> bool:
        if strict:
            return all(h.slack(x) > 0 for h in self.halfspaces)
        return all(h.slack(x) >= 0 for h in self.halfspaces)

    def bounding_box(self, k: int = 1) -> list[tuple[int, int]]:
        return [(k * min(v[i] for v in self.vertices), k * max(v[i] for v in self.vertices))
                for i in range(self.dim)]

    def dilate(self, k: int) -> "LatticePolytope":
        return LatticePolytope(self.dim, tuple(tuple(k * x for x in v) for v in self.vertices),
                               f"{k}*{self.label}" if self.label else "",
                               tuple(Halfspace(h.normal, k * h.rhs) for h in self.halfspaces))

    def translate(self, t: Sequence[int]) -> "LatticePolytope":
        return LatticePolytope(
            self.dim, tuple(tuple(a + b for a, b in zip(v, t)) for v in self.vertices),
            self.label,
            tuple(Halfspace(h.normal, h.rhs + dot(h.normal, t)) for h in self.halfspaces))

    @cached_property
    def volume(self) -> Fraction:
        """Euclidean volume, by pyramids over flattened facets (recursive)."""
        return lattice_volume(self)

    def to_json(self) -> dict:
        return {"dim": self.dim, "vertices": [list(v) for v in self.vertices],
                "label": self.label}

    @classmethod
    def from_json(cls, data: dict | str) -> "LatticePolytope":
        if isinstance(data, str):
            data = json.loads(data)
        if "dim" not in data or "vertices" not in data:
            raise DegenerateInput("polytope JSON needs 'dim' and 'vertices'")
        poly = cls.from_points(data["vertices"], data.get("label", ""))
        if poly.dim != int(data["dim"]):
            raise DegenerateInput(f"declared dim {data['dim']} != vertex length {poly.dim}")
        return poly


# ---------------------------------------------------------------------------
# operations


def polar_dual(P: LatticePolytope, center: Sequence[int]) -> list[RationalPoint]:
    """Vertices of ``(P - center)^*``; one per facet of ``P``."""
    out = []
    for h in P.halfspaces:
        s = h.slack(center)
        if s <= 0:
            raise CenterNotInterior(f"{tuple(center)} is not interior to {P.label or 'P'}")
        out.append(tuple(Fraction(a, s) for a in h.normal))
    return sorted(out)


def apply_unimodular(P: LatticePolytope, U: Sequence[Sequence[int]],
                     t: Sequence[int] | None = None) -> LatticePolytope:
    """Image of ``P`` under ``x -> U x + t``."""
    n = P.dim
    if abs(det(U)) != 1:
        raise NotUnimodular(f"|det U| = {abs(det(U))}")
    t = tuple(t) if t is not None else (0,) * n
    verts = [tuple(dot(U[i], v) + t[i] for i in range(n)) for v in P.vertices]
    return LatticePolytope.from_points(verts, P.label)


def interior_lattice_points(P: LatticePolytope) -> list[IntPoint]:
    """All lattice points strictly inside every facet halfspace."""
    return list(_scan_points(P.halfspaces, P.bounding_box(), strict=True))


def lattice_points(P: LatticePolytope) -> list[IntPoint]:
    return list(_scan_points(P.halfspaces, P.bounding_box(), strict=False))


def _scan_points(halfspaces, box, strict):
    """Row scan of the box; the last coordinate is solved from the halfspaces."""
    n = len(box)
    off = 1 if strict else 0
    for prefix in product(*(range(lo, hi + 1) for lo, hi in box[:-1])):
        lo, hi = box[-1]
        ok = True
        for h in halfspaces:
            rest = h.rhs - off - dot(h.normal[:-1], prefix)
            a = h.normal[-1]
            if a > 0:
                hi = min(hi, rest // a)
            elif a < 0:
                lo = max(lo, -(rest // -a))
            elif rest < 0:
                ok = False
                break
        if ok:
            for x in range(lo, hi + 1):
                yield prefix + (x,)


def unimodular_completion(a: Sequence[int]) -> list[list[int]]:
    """Unimodular integer matrix whose last row is the primitive vector ``a``."""
    n = len(a)
    if _gcd_all(a) != 1:
        raise ValueError(f"{tuple(a)} is not primitive")
    a = list(a)
    W = [[int(i == j) for j in range(n)] for i in range(n)]

    def colop(j, i, q):  # col_j -= q * col_i
        a[j] -= q * a[i]
        for r in range(n):
            W[r][j] -= q * W[r][i]

    while sum(1 for x in a if x) > 1:
        i = min((k for k in range(n) if a[k]), key=lambda k: abs(a[k]))
        for j in range(n):
            if j != i and a[j]:
                colop(j, i, a[j] // a[i])
    i = next(k for k in range(n) if a[k])
    if i != n - 1:
        a[i], a[n - 1] = a[n - 1], a[i]
        for r in range(n):
            W[r][i], W[r][n - 1] = W[r][n - 1], W[r][i]
    if a[n - 1] == -1:
        for r in range(n):
            W[r][n - 1] = -W[r][n - 1]
    U = inverse(W)
    return [[int(x) for x in row] for row in U]


def flatten_facet(P: LatticePolytope, h: Halfspace) -> LatticePolytope:
    """The facet ``h`` of ``P`` as a full-dimensional polytope in Z^(n-1).

    The map is unimodular on Z^n, so the result's volume is the facet's
    volume relative to the lattice in its affine hull.
    """
    U = unimodular_completion(h.normal)
    pts = [v for v in P.vertices if h.slack(v) == 0]
    flat = [tuple(dot(U[i], v) for i in range(P.dim - 1)) for v in pts]
    return LatticePolytope.from_points(flat, f"facet{h.normal}")


def lattice_volume(P: LatticePolytope) -> Fraction:
    """Exact volume via pyramids from a vertex over the flattened facets."""
    n = P.dim
    if n == 1:
        return Fraction(P.vertices[-1][0] - P.vertices[0][0])
    apex = P.vertices[0]
    total = Fraction(0)
    for h in P.halfspaces:
        height = h.slack(apex)
        if height:
            total += height * flatten_facet(P, h).volume
    return total / n


def simplex_normalized_volume(vertices: Sequence[Sequence[int]]) -> int:
    v0 = vertices[0]
    return abs(det([[a - b for a, b in zip(v, v0)] for v in vertices[1:]]))


def unimodular_equivalent(P: LatticePolytope, Q: LatticePolytope) -> bool:
    """Affine unimodular equivalence test for two simplices."""
    if P.dim != Q.dim or not (P.is_simplex and Q.is_simplex):
        raise ValueError("equivalence test is implemented for simplices only")
    n = P.dim
    p0 = P.vertices[0]
    A = [[v[i] - p0[i] for v in P.vertices[1:]] for i in range(n)]
    if simplex_normalized_volume(P.vertices) != simplex_normalized_volume(Q.vertices):
        return False
    Ainv = inverse(A)
    for perm in permutations(Q.vertices):
        q0 = perm[0]
        B = [[v[i] - q0[i] for v in perm[1:]] for i in range(n)]
        U = [[sum(Fraction(B[i][k]) * Ainv[k][j] for k in range(n)) for j in range(n)]
             for i in range(n)]
        if all(x.denominator == 1 for row in U for x in row):
            return True
    return False


def normalized_volume(P: LatticePolytope) -> int:
    v = P.volume * factorial(P.dim)
    assert v.denominator == 1
    return int(v)
