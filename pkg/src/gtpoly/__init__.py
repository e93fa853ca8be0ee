"""Exact computations with skew Gelfand-Tsetlin patterns and polytopes."""
from .core import (DomainError, GTPattern, MalformedInput, SkewShape, SkewTableau,
                   add_patterns, concat_tableaux, parse_young, pattern, pattern_to_tableau,
                   tableau_to_pattern, validate_pattern, young_rows)
from .polytope import (PolytopeSpec, count_lattice_points, enumerate_lattice_points,
                       enumerate_vertices, idp_check, is_empty, is_integral,
                       pulling_is_unimodular, weight_spec)
from .shapes import classify_shape, normalize_shape
from .tiling import compute_tiling, face_dimension, tiling_matrix

__version__ = "0.1.0"

__all__ = [
    "DomainError", "GTPattern", "MalformedInput", "PolytopeSpec", "SkewShape", "SkewTableau",
    "add_patterns", "classify_shape", "compute_tiling", "concat_tableaux",
    "count_lattice_points", "enumerate_lattice_points", "enumerate_vertices",
    "face_dimension", "idp_check", "is_empty", "is_integral", "normalize_shape", "parse_young", "pattern",
    "pattern_to_tableau", "pulling_is_unimodular", "tableau_to_pattern", "tiling_matrix",
    "validate_pattern", "weight_spec", "young_rows",
]
