"""Bron-Kerbosch search for maximum weight cliques with vertex and edge weights."""

from .graph import AttributedGraph, WeightedGraph, make_attribute
from .matching import (
    AssociationGraph,
    AttributeKernel,
    MatchResult,
    PartialMorphism,
    build_association,
    clique_to_morphism,
    estimate_cs,
    graph_kernel,
    graph_length,
    morphism_to_clique,
    similarity,
)
from .solver import (
    EstimateKind,
    PivotStrategy,
    SearchState,
    SolverConfig,
    SolverReport,
    brute_force_enumerate,
    brute_force_mwcp,
    enumerate_basic,
    enumerate_pivot,
    estimate_deg,
    estimate_sum,
    select_pivot,
    solve,
)

__version__ = "0.1.0"
