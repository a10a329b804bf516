"""Hypothesis strategies for small lattice polytopes."""

from hypothesis import assume, strategies as st

from ehrhart.errors import DegenerateInput
from ehrhart.lattice import LatticePolytope


def point_sets(dim, bound=3, min_size=None, max_size=7):
    coord = st.integers(-bound, bound)
    return st.lists(st.tuples(*[coord] * dim), min_size=min_size or dim + 1, max_size=max_size)


@st.composite
def polytopes(draw, dims=(1, 2, 3), bound=3, max_size=7):
    dim = draw(st.sampled_from(dims))
    pts = draw(point_sets(dim, bound, max_size=max_size))
    try:
        return LatticePolytope.from_points(pts)
    except DegenerateInput:
        assume(False)


@st.composite
def unimodular(draw, n, steps=5):
    U = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(draw(st.integers(0, steps))):
        if n == 1:
            break
        i, j = draw(st.sampled_from([(a, b) for a in range(n) for b in range(n) if a != b]))
        q = draw(st.sampled_from([-2, -1, 1, 2]))
        U[i] = [a + q * c for a, c in zip(U[i], U[j])]
    if draw(st.booleans()):
        U[0] = [-x for x in U[0]]
    return U
