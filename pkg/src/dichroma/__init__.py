"""Exact dicolouring toolkit: solver, censuses, structure tests, surface
bounds and satisfiability reductions for digraphs."""

from .digraphs import (
    Digraph,
    Graph,
    bidirect,
    build_digraph,
    build_graph,
    circulant_tournament,
    underlying_graph,
)
from .formats import d6_decode, d6_encode, load_digraph, dump_digraph
from .solver import (
    dichromatic_number,
    is_acyclic,
    is_dicritical,
    is_k_dicolourable,
    is_list_dicolourable,
    max_induced_acyclic,
    verify_dicolouring,
)

__version__ = "0.1.0"

__all__ = [
    "Digraph",
    "Graph",
    "bidirect",
    "build_digraph",
    "build_graph",
    "circulant_tournament",
    "underlying_graph",
    "d6_decode",
    "d6_encode",
    "load_digraph",
    "dump_digraph",
    "dichromatic_number",
    "is_acyclic",
    "is_dicritical",
    "is_k_dicolourable",
    "is_list_dicolourable",
    "max_induced_acyclic",
    "verify_dicolouring",
    "__version__",
]
