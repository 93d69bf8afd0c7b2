"""Unicellular maps: codings, surgery graphs, mod-2 surgery invariants and
the symplectic computations behind their component counts."""

from unicellular.coding import (
    Coding,
    analyze,
    canonical_form,
    chain_collection,
    constituent_curves,
    enumerate_maps,
    equivalent,
    parse_coding,
)
from unicellular.surgery import (
    OrientedEdge,
    all_surgeries,
    build_surgery_graph,
    do_surgery,
    double_surgery_identity,
    graph_metrics,
    intertwined,
)

__all__ = [
    "Coding", "analyze", "canonical_form", "chain_collection", "constituent_curves",
    "enumerate_maps", "equivalent", "parse_coding", "OrientedEdge", "all_surgeries",
    "build_surgery_graph", "do_surgery", "double_surgery_identity", "graph_metrics", "intertwined",
]
