"""Verification toolkit for vertex-degree-based topological indices of k-cyclic graphs."""

__version__ = "0.1.0"

from .graph import (
    DegreeProfile,
    EdgeClassCounts,
    Graph,
    SwapCheck,
    SwapMove,
    apply_swap,
    cyclomatic_number,
    degree_profile,
    edge_class_counts,
    from_edge_list,
    is_chemical,
    is_connected,
    validate_swap,
)
from .graph6 import decode_graph6, encode_graph6
from .kernel import BACKEND
from .weights import (
    WeightFunction,
    closed_form_min,
    compute_exponential_ti,
    compute_ti,
    eval_weight,
    exponential_of,
    general_randic,
    general_sombor,
    general_sum_connectivity,
    p_sombor,
    sombor,
)

__all__ = [
    "BACKEND",
    "DegreeProfile",
    "EdgeClassCounts",
    "Graph",
    "SwapCheck",
    "SwapMove",
    "WeightFunction",
    "apply_swap",
    "closed_form_min",
    "compute_exponential_ti",
    "compute_ti",
    "cyclomatic_number",
    "decode_graph6",
    "degree_profile",
    "edge_class_counts",
    "encode_graph6",
    "eval_weight",
    "exponential_of",
    "from_edge_list",
    "general_randic",
    "general_sombor",
    "general_sum_connectivity",
    "is_chemical",
    "is_connected",
    "p_sombor",
    "sombor",
    "validate_swap",
]
