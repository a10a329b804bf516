"""Lattice polytopes, their Ehrhart polynomials, h*-vectors and roots."""

from .counting import count_interior, count_points
from .errors import EhrhartError
from .families import build_family, parse_family
from .lattice import LatticePolytope
from .polynomial import EhrhartPolynomial, HStarVector, from_hstar, interpolate, to_hstar
from .reflexive import critical_line_criterion, reflexivity_report
from .roots import RootSet, classify_3d, find_roots

__all__ = [
    "EhrhartError", "EhrhartPolynomial", "HStarVector", "LatticePolytope", "RootSet",
    "build_family", "classify_3d", "count_interior", "count_points", "critical_line_criterion",
    "find_roots", "from_hstar", "interpolate", "parse_family", "reflexivity_report", "to_hstar",
]
