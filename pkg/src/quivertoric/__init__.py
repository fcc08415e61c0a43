"""Toric quiver varieties: invariant monomials, Gale rays, contractions and smoothness."""

from .classify import ClassificationReport, classify, singularity_witness
from .errors import ParseError, PreconditionError, QuiverError
from .gale import gale_matrix, incidence_matrix, ray, ray_dot
from .polytope import aggregate_by_bundle, invariant_monomials, is_smooth, polytope_vertices, vertex_edges
from .quiver import ArrowIndex, Bundle, Quiver, WeightVector, canonical_weight, parse, serialize, supporting_quiver, validate
from .structure import (
    contract,
    cycle_basis,
    cycle_basis_through,
    cycle_space_dimension,
    decompose,
    has_proper_cycle,
    is_contractible,
    simplify,
)

__all__ = [
    "ArrowIndex",
    "Bundle",
    "ClassificationReport",
    "ParseError",
    "PreconditionError",
    "Quiver",
    "QuiverError",
    "WeightVector",
    "aggregate_by_bundle",
    "canonical_weight",
    "classify",
    "contract",
    "cycle_basis",
    "cycle_basis_through",
    "cycle_space_dimension",
    "decompose",
    "gale_matrix",
    "has_proper_cycle",
    "incidence_matrix",
    "invariant_monomials",
    "is_contractible",
    "is_smooth",
    "parse",
    "polytope_vertices",
    "ray",
    "ray_dot",
    "serialize",
    "simplify",
    "singularity_witness",
    "supporting_quiver",
    "validate",
    "vertex_edges",
]

__version__ = "0.1.0"
