"""Named polytope families used as fixtures and extremal examples."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product as iproduct

from .errors import BadParams, DegenerateInput
from .lattice import LatticePolytope


def _unit(n: int, i: int, scale: int = 1) -> tuple[int, ...]:
    return tuple(scale if j == i else 0 for j in range(n))


def _need(cond: bool, msg: str) -> None:
    if not cond:
        raise BadParams(msg)


def make_Sn(n: int, l: int = 1) -> LatticePolytope:
    """``conv{e_1, ..., e_n, -l(e_1 + ... + e_n)}``; ``l`` interior points."""
    _need(n >= 1 and l >= 1, f"S_n(l) needs n, l >= 1, got n={n}, l={l}")
    verts = [_unit(n, i) for i in range(n)] + [(-l,) * n]
    return LatticePolytope(n, tuple(verts), f"S_{n}({l})")


def make_cross_star(n: int, l: int = 1) -> LatticePolytope:
    """``conv{±l e_1, ±e_2, ..., ±e_n}`` with ``2l - 1`` interior points."""
    _need(n >= 1 and l >= 1, f"C*_n(2l-1) needs n, l >= 1, got n={n}, l={l}")
    verts = [_unit(n, 0, l), _unit(n, 0, -l)]
    verts += [_unit(n, i, s) for i in range(1, n) for s in (1, -1)]
    return LatticePolytope(n, tuple(verts), f"C*_{n}({2 * l - 1})")


def make_box_Q(n: int, l: int = 1) -> LatticePolytope:
    """``{|x_1| <= l, |x_i| <= 1}``."""
    _need(n >= 1 and l >= 1, f"Q_n(2l-1) needs n, l >= 1, got n={n}, l={l}")
    verts = [(s0 * l,) + rest for s0 in (1, -1) for rest in iproduct((1, -1), repeat=n - 1)]
    return LatticePolytope(n, tuple(verts), f"Q_{n}({2 * l - 1})")


def make_unit_cube(n: int, symmetric: bool = False) -> LatticePolytope:
    """``[0,1]^n``, or ``[-1,1]^n`` with ``symmetric``."""
    _need(n >= 1, "cube needs n >= 1")
    lo = -1 if symmetric else 0
    return LatticePolytope(n, tuple(iproduct((lo, 1), repeat=n)),
                           f"[{lo},1]^{n}")


def make_std_cross(n: int) -> LatticePolytope:
    """Regular crosspolytope ``conv{±e_i}``."""
    return make_cross_star(n, 1)


def make_unit_simplex(n: int) -> LatticePolytope:
    _need(n >= 1, "simplex needs n >= 1")
    return LatticePolytope(n, ((0,) * n,) + tuple(_unit(n, i) for i in range(n)),
                           f"Delta_{n}")


def make_reeve(k: int) -> LatticePolytope:
    """Reeve tetrahedron ``conv{0, e_1, e_2, (1,1,k)}``, volume ``k/6``."""
    _need(k >= 1, f"T(k) needs k >= 1, got {k}")
    return LatticePolytope(3, ((0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, k)), f"T({k})")


def make_pyramid_P(q: int) -> LatticePolytope:
    """Pyramid over the ``2 x q`` rectangle with apex ``e_3``."""
    _need(q >= 1, f"P(q) needs q >= 1, got {q}")
    return LatticePolytope(3, ((0, 0, 0), (2, 0, 0), (0, q, 0), (2, q, 0), (0, 0, 1)),
                           f"P({q})")


# The H-description of E_1 as used here: x_1, x_2, x_3 >= -1,
# -x_3 - 2x_4 <= 1 and 2x_1 + x_2 + 2x_3 + 2x_4 <= 1.
E1_HALFSPACES = (
    ((-1, 0, 0, 0), 1),
    ((0, -1, 0, 0), 1),
    ((0, 0, -1, 0), 1),
    ((0, 0, -1, -2), 1),
    ((2, 1, 2, 2), 1),
)

E2_HALFSPACES = (
    ((-1, 0, 0, 0), 1),
    ((0, -1, 0, 0), 1),
    ((-2, -3, -4, 0), 1),
    ((-4, -5, 0, -8), 1),
    ((10, 9, 4, 8), 1),
)


def make_E1() -> LatticePolytope:
    normals, rhs = zip(*E1_HALFSPACES)
    return LatticePolytope.from_halfspaces(normals, rhs, "E1")


def make_E2() -> LatticePolytope:
    normals, rhs = zip(*E2_HALFSPACES)
    return LatticePolytope.from_halfspaces(normals, rhs, "E2")


_WITNESS_APEX = {3: (2, 2, 3), 4: (2, 3, 4)}


def make_realpart_minus1_witness(k: int) -> LatticePolytope:
    """Polytope of volume ``k/6`` whose complex Ehrhart roots have real part -1.

    ``k = 2`` is ``T(2)``, ``k = 3, 4`` are simplices ``conv{0, e_1, e_2, v}``
    and ``k = 5`` is a pyramid over a quadrangle.
    """
    _need(k in (2, 3, 4, 5), f"witnesses exist for k in 2..5, got {k}")
    if k == 2:
        P = make_reeve(2)
    elif k == 5:
        P = LatticePolytope(3, ((0, 0, 0), (1, 0, 0), (0, 2, 0), (2, 1, 0), (0, 0, 1)))
    else:
        P = LatticePolytope(3, ((0, 0, 0), (1, 0, 0), (0, 1, 0), _WITNESS_APEX[k]))
    return LatticePolytope(3, P.vertices, f"W({k})", P.halfspaces)


def make_triangle_S() -> LatticePolytope:
    """``-(1,1) + conv{0, 3e_1, 3e_2}``: the reflexive triangle of area 9/2."""
    return LatticePolytope(2, ((-1, -1), (2, -1), (-1, 2)), "S")


def product(P: LatticePolytope, Q: LatticePolytope) -> LatticePolytope:
    verts = tuple(p + q for p in P.vertices for q in Q.vertices)
    return LatticePolytope(P.dim + Q.dim, verts, f"{P.label}x{Q.label}")


def bipyramid(Q: LatticePolytope) -> LatticePolytope:
    """``conv{Q x {0}, ±e_n}`` for ``Q`` with the origin in its interior."""
    if not Q.contains((0,) * Q.dim, strict=True):
        raise DegenerateInput("bipyramid base must contain the origin in its interior")
    n = Q.dim + 1
    verts = tuple(v + (0,) for v in Q.vertices) + (_unit(n, n - 1), _unit(n, n - 1, -1))
    return LatticePolytope(n, verts, f"Bipyr({Q.label})")


# ---------------------------------------------------------------------------
# string grammar: "sn:n=3,l=1", "reeve:k=2", "e1", ...


@dataclass(frozen=True)
class FamilySpec:
    family: str
    params: dict = field(default_factory=dict)

    def build(self) -> LatticePolytope:
        return build_family(self.family, **self.params)


_BUILDERS = {
    "sn": (make_Sn, ("n", "l")),
    "cross-star": (make_cross_star, ("n", "l")),
    "box": (make_box_Q, ("n", "l")),
    "reeve": (make_reeve, ("k",)),
    "pyramid": (make_pyramid_P, ("q",)),
    "e1": (make_E1, ()),
    "e2": (make_E2, ()),
    "triangle-s": (make_triangle_S, ()),
    "witness": (make_realpart_minus1_witness, ("k",)),
    "unit-cube": (make_unit_cube, ("n",)),
    "cube": (lambda n: make_unit_cube(n, symmetric=True), ("n",)),
    "std-cross": (make_std_cross, ("n",)),
    "simplex": (make_unit_simplex, ("n",)),
}

ALIASES = {
    "sn_l": "sn", "crossstar_l": "cross-star", "box_qn": "box", "reeve_tk": "reeve",
    "pyramid_pq": "pyramid", "triangles": "triangle-s", "e_1": "e1", "e_2": "e2",
    "realpartminus1witness_k": "witness", "unitcube": "unit-cube", "stdcross": "std-cross",
}

FAMILY_NAMES = tuple(_BUILDERS)


def family_params(name: str) -> tuple[str, ...]:
    return _BUILDERS[_canonical(name)][1]


def _canonical(name: str) -> str:
    key = name.strip().lower()
    key = ALIASES.get(key, key)
    if key not in _BUILDERS:
        raise BadParams(f"unknown family {name!r}; known: {', '.join(_BUILDERS)}")
    return key


def build_family(name: str, **params) -> LatticePolytope:
    key = _canonical(name)
    fn, names = _BUILDERS[key]
    extra = set(params) - set(names)
    if extra:
        raise BadParams(f"family {key} takes {names}, got unexpected {sorted(extra)}")
    missing = [p for p in names if p not in params and not (key in ("sn", "cross-star", "box") and p == "l")]
    if missing:
        raise BadParams(f"family {key} needs parameters {missing}")
    return fn(**{k: int(v) for k, v in params.items()})


def parse_family(text: str) -> FamilySpec:
    """Parse ``name[:key=value,...]``."""
    name, _, rest = text.partition(":")
    params = {}
    for item in filter(None, (s.strip() for s in rest.split(","))):
        key, eq, value = item.partition("=")
        if not eq:
            raise BadParams(f"bad parameter {item!r}, expected key=value")
        try:
            params[key.strip()] = int(value)
        except ValueError:
            raise BadParams(f"parameter {key} must be an integer, got {value!r}") from None
    return FamilySpec(_canonical(name), params)
