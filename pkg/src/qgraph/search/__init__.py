"""Coding-clique search: purity and uncoverable sets, the super graph, clique and
group search, and transport along local complementation."""

from qgraph.search.cliques import SearchMode, SearchResult, find_cliques
from qgraph.search.coding import CodingClique, as_group, check_conditions, validate_clique
from qgraph.search.groups import find_coding_groups, search_coding_groups
from qgraph.search.sets import PuritySet, UncoverableSet, purity_set, uncoverable_set
from qgraph.search.supergraph import SuperGraph, build_super_graph
from qgraph.search.transport import lc_transport, transport_sequence

__all__ = [
    "CodingClique",
    "PuritySet",
    "SearchMode",
    "SearchResult",
    "SuperGraph",
    "UncoverableSet",
    "as_group",
    "build_super_graph",
    "check_conditions",
    "find_cliques",
    "find_coding_groups",
    "lc_transport",
    "purity_set",
    "search_coding_groups",
    "transport_sequence",
    "uncoverable_set",
    "validate_clique",
]
