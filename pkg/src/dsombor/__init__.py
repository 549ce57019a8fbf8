"""Diminished Sombor index toolkit: indices, bounds and exhaustive verification."""

from .bounds import BoundEvaluation, BoundRecord, catalog, equality_predicate, evaluate_bound
from .generate import (
    EnumerationSpec, FamilySpec, canonical_code, enumerate_graphs, make_family,
    random_gnp, random_regular,
)
from .graph import (
    DegreeSummary, Graph, Graph6Error, GraphError, component_degree_profile,
    degree_summary, is_connected, parse_graph6, write_graph6,
)
from .indices import IndexKind, IndexValue, compute_all, compute_index, edge_contribution
from .verify import VerificationReport, characterization_audit, extremal_search, verify_corpus

__version__ = "0.1.0"
