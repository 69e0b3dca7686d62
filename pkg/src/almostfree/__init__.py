"""Graph colourability encoded as almost-freeness of torus actions."""

from .algebra import (
    Element,
    FreeAlgebra,
    SullivanAlgebra,
    apply_differential,
    check_well_formed,
    differential_matrix,
    format_algebra,
    monomial_basis,
    multiply,
    parse_algebra,
)
from .borel import (
    assemble_action,
    borel_model,
    build_edge_sphere,
    build_torus_inclusion,
    claim1_kernel_check,
    verify_volume_differential,
)
from .certificate import assignment_from_coloring, verify_is_proper_iff, verify_morphism
from .graph import Graph, is_colorable, parse_dimacs
from .oracle import buchberger, cohomology_dims, ideal_from_algebra, is_zero_dimensional, quotient_hilbert
from .reduction import Decision, Method, Verdict, decide_almost_free, encode_original, encode_shifted

__all__ = [
    "Decision",
    "Element",
    "FreeAlgebra",
    "Graph",
    "Method",
    "SullivanAlgebra",
    "Verdict",
    "apply_differential",
    "assemble_action",
    "assignment_from_coloring",
    "borel_model",
    "buchberger",
    "build_edge_sphere",
    "build_torus_inclusion",
    "check_well_formed",
    "claim1_kernel_check",
    "cohomology_dims",
    "decide_almost_free",
    "differential_matrix",
    "encode_original",
    "encode_shifted",
    "format_algebra",
    "ideal_from_algebra",
    "is_colorable",
    "is_zero_dimensional",
    "monomial_basis",
    "multiply",
    "parse_algebra",
    "parse_dimacs",
    "quotient_hilbert",
    "verify_is_proper_iff",
    "verify_morphism",
    "verify_volume_differential",
]
