"""Coherence, slenderness and finiteness classification for groups
defined by vertex-edge-labeled graphs.

The package models graph products of finitely generated abelian groups,
Artin groups and Coxeter groups through one labeled-graph format,
classifies them as coherent, incoherent or unknown with machine-checkable
proof trees and witnesses, and can sweep every small graph of a given
kind to tabulate where incoherence first appears.
"""

from .labeled_graph import (
    AbelianGroupLabel,
    ChordalityResult,
    Flavor,
    GraphValidationError,
    LabeledGraph,
    Shape,
    VertexCapError,
    Z,
    Z2,
    artin_graph,
    canonical_form,
    canonical_graph,
    canonical_key,
    complete_edges,
    coxeter_graph,
    cycle_edges,
    cyclic,
    detect_flavor,
    graph_product_graph,
    graph_to_jsonable,
    is_chordal,
    is_induced_chordless_cycle,
    join_factors,
    parse_graph,
    path_edges,
    raag,
    racg,
    shape_classify,
    verify_peo,
)
from .decomposition import (
    Split,
    dirac_split,
    enumerate_separator_splits,
    is_clique_separator,
    verify_split,
)
from .group_model import (
    CoxeterMatrix,
    F2Certificate,
    FinitenessResult,
    IndefiniteComponent,
    InternalInvariantError,
    IrreducibleType,
    SlenderCertificate,
    SlenderFactor,
    UnsupportedFlavorError,
    classify_components,
    contains_f2_certificate,
    cosine_matrix,
    coxeter_matrix,
    emit_presentation,
    f2_certificate_valid,
    finiteness,
    is_finite,
    is_slender,
)
from .coherence_engine import (
    Classifier,
    EngineConfig,
    ProofNode,
    Verdict,
    VerificationOutcome,
    classify,
    verify_proof,
    verify_witness,
    wise_gordon_check,
    witness_join_incoherence,
)
from .census import CensusConfig, CensusReport, enumerate_graphs, run_census

__version__ = "0.1.0"

__all__ = [
    "AbelianGroupLabel",
    "CensusConfig",
    "CensusReport",
    "ChordalityResult",
    "Classifier",
    "CoxeterMatrix",
    "EngineConfig",
    "F2Certificate",
    "FinitenessResult",
    "Flavor",
    "GraphValidationError",
    "IndefiniteComponent",
    "InternalInvariantError",
    "IrreducibleType",
    "LabeledGraph",
    "ProofNode",
    "Shape",
    "SlenderCertificate",
    "SlenderFactor",
    "Split",
    "UnsupportedFlavorError",
    "Verdict",
    "VerificationOutcome",
    "VertexCapError",
    "Z",
    "Z2",
    "artin_graph",
    "canonical_form",
    "canonical_graph",
    "canonical_key",
    "classify",
    "classify_components",
    "complete_edges",
    "contains_f2_certificate",
    "cosine_matrix",
    "coxeter_graph",
    "coxeter_matrix",
    "cycle_edges",
    "cyclic",
    "detect_flavor",
    "dirac_split",
    "emit_presentation",
    "enumerate_graphs",
    "enumerate_separator_splits",
    "f2_certificate_valid",
    "finiteness",
    "graph_product_graph",
    "graph_to_jsonable",
    "is_chordal",
    "is_clique_separator",
    "is_finite",
    "is_induced_chordless_cycle",
    "is_slender",
    "join_factors",
    "parse_graph",
    "path_edges",
    "raag",
    "racg",
    "run_census",
    "shape_classify",
    "verify_peo",
    "verify_proof",
    "verify_split",
    "verify_witness",
    "wise_gordon_check",
    "witness_join_incoherence",
]
