"""Kernelization and exact solving for Token Jumping."""

from .classify import Classification, classify, pair_count_bound_report
from .generators import FamilySpec, GeneratedInstance, generate
from .graph import Graph, IdMap, build_graph, degeneracy_order, induced_subgraph, is_independent
from .instance import InstanceError, TokenInstance
from .kernel import (
    FilterResult,
    KernelOutcome,
    build_kernel,
    c1_witness,
    contains_k23,
    extract_t,
    f_m,
    filter_pair,
    greedy_c1_shortcut,
    heawood,
)
from .oracle import equivalent_under_oracle, solve, validate_sequence

__all__ = [
    "Classification",
    "FamilySpec",
    "FilterResult",
    "GeneratedInstance",
    "Graph",
    "IdMap",
    "InstanceError",
    "KernelOutcome",
    "TokenInstance",
    "build_graph",
    "build_kernel",
    "c1_witness",
    "classify",
    "contains_k23",
    "degeneracy_order",
    "equivalent_under_oracle",
    "extract_t",
    "f_m",
    "filter_pair",
    "generate",
    "greedy_c1_shortcut",
    "heawood",
    "induced_subgraph",
    "is_independent",
    "pair_count_bound_report",
    "solve",
    "validate_sequence",
]
