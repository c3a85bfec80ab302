"""Stabilizer codes and their graph + coding-group form."""

from qgraph.stabilizer.check_matrix import (CheckMatrix, parse_check_matrix, stabilizer_projector,
                                            stabilizer_weight_distribution)
from qgraph.stabilizer.conversion import (GraphConversion, convert_stabilizer, graph_generators,
                                          graph_matrix, group_to_stabilizer, stabilizer_to_graph)
from qgraph.stabilizer.equivalence import EquivalenceWitness, equivalence_fingerprint, find_equivalence_witness
from qgraph.stabilizer.standard_form import StandardForm, replay, standard_form

__all__ = [
    "CheckMatrix",
    "EquivalenceWitness",
    "GraphConversion",
    "StandardForm",
    "convert_stabilizer",
    "equivalence_fingerprint",
    "find_equivalence_witness",
    "graph_generators",
    "graph_matrix",
    "group_to_stabilizer",
    "parse_check_matrix",
    "replay",
    "stabilizer_projector",
    "stabilizer_to_graph",
    "stabilizer_weight_distribution",
    "standard_form",
]
