"""Signed sumsets and Cayley-graph diameters over finite abelian groups of rank at most 2."""

from .combinatorics import delannoy, extremal_formula, sregular_upper_bound
from .groups import Element, GeneratorSet, GroupSpec, add, scalar_mul
from .span import (bfs_ball, directed_covering_radius, signed_span, undirected_diameter,
                   is_perfect_s_basis, is_perfect_s_spanning)
from .certificates import make_certificate, verify_certificate

__all__ = [
    "Element", "GeneratorSet", "GroupSpec", "add", "scalar_mul", "delannoy",
    "extremal_formula", "sregular_upper_bound", "signed_span", "bfs_ball",
    "undirected_diameter", "directed_covering_radius", "is_perfect_s_spanning",
    "is_perfect_s_basis", "make_certificate", "verify_certificate",
]
