"""Conversion between stabilizer codes and graphs with coding groups.

A check matrix in standard form is completed with k logical rows
[0, I_k | E^T + F A^T, F] for a symmetric F, and row reduction of the completed
matrix gives [I_n | Gamma] with

    Gamma = [[D + A F A^T, E + A F], [E^T + F A^T, F]].

Nonzero diagonal entries are cleared with S-dagger on those qubits. The code is then
spanned by Z_C |Gamma> for C in the group generated by C_c = {a : A_ac = 1} + {r + c},
up to the Pauli frame Z_T that fixes generator signs.
"""

import logging
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Tuple

from qgraph.core.gf2 import GF2Matrix, bit_indices, kernel_basis, parity, span
from qgraph.core.graph import Graph
from qgraph.core.graphstate import code_distance, stabilizer_product, vertex_stabilizer
from qgraph.core.pauli import PauliOperator
from qgraph.exceptions import ComputationError, ValidationError
from qgraph.search.coding import CodingClique
from qgraph.stabilizer.check_matrix import CheckMatrix
from qgraph.stabilizer.standard_form import StandardForm, standard_form
from qgraph.utils import bits_to_labels

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GraphConversion:
    """Everything :func:`convert_stabilizer` derives from a check matrix.

    The input code maps onto the group code by: Hadamards and row operations of
    ``standard_form``, its qubit permutation, S-dagger on ``s_dagger_qubits``
    (permuted indices), then Z on ``pauli_frame``.
    """

    graph: Graph
    clique: CodingClique
    standard_form: StandardForm
    s_dagger_qubits: int
    pauli_frame: int
    F: GF2Matrix

    def transformed_generators(self) -> List[PauliOperator]:
        rows = list(self.standard_form.rows)
        for q in bit_indices(self.s_dagger_qubits):
            rows = [row.s_dagger(q) for row in rows]
        return rows

    def to_json(self) -> Dict[str, Any]:
        return {
            "code": self.clique.to_json(),
            "standard_form": self.standard_form.to_json(),
            "s_dagger": bits_to_labels(self.s_dagger_qubits),
            "pauli_frame": bits_to_labels(self.pauli_frame),
            "F": self.F.to_lists(),
        }


def graph_matrix(sf: StandardForm, F: Optional[GF2Matrix] = None) -> GF2Matrix:
    """Gamma for the given symmetric F (zero by default); the diagonal may be nonzero."""
    r, k = sf.r, sf.k
    F = F if F is not None else GF2Matrix.zeros(k, k)
    if F.shape != (k, k) or not F.is_symmetric():
        raise ValidationError(f"F must be a symmetric {k}x{k} matrix", "dimension", F.to_lists())
    At = sf.A.transpose()
    top_left = sf.D + sf.A @ F @ At
    top_right = sf.E + sf.A @ F
    bottom_left = sf.E.transpose() + F @ At
    rows = [left | right << r for left, right in zip(top_left.rows, top_right.rows)]
    rows += [left | right << r for left, right in zip(bottom_left.rows, F.rows)]
    return GF2Matrix(tuple(rows), sf.n)


def group_generators(sf: StandardForm) -> List[int]:
    """C_c = {a < r : A_ac = 1} + {r + c}, c = 0..k-1."""
    columns = sf.A.transpose().rows
    return [columns[c] | 1 << (sf.r + c) for c in range(sf.k)]


def graph_generators(g: Graph, sf: StandardForm) -> List[PauliOperator]:
    """g_a = G_a prod_c G_{r+c}^{A_ac}, a = 0..r-1."""
    if g.n != sf.n:
        raise ValidationError(f"Graph on {g.n} vertices for a {sf.n}-qubit standard form", "dimension", g.n)
    out = []
    for a, row in enumerate(sf.A.rows):
        generator = vertex_stabilizer(g, a)
        for c in bit_indices(row):
            generator = generator * vertex_stabilizer(g, sf.r + c)
        out.append(generator)
    return out


def convert_stabilizer(
    cm: CheckMatrix,
    F: Optional[GF2Matrix] = None,
    d: Optional[int] = None,
) -> GraphConversion:
    """Graph and coding group of a stabilizer code.

    Args:
        cm: Check matrix
        F: Symmetric k x k matrix for the logical rows (zero by default)
        d: Distance to attach to the group; computed when omitted

    Raises:
        ValidationError: On a malformed F
    """
    sf = standard_form(cm)
    gamma = graph_matrix(sf, F)
    diagonal = sum(1 << q for q in range(sf.n) if gamma.entry(q, q))
    graph = Graph(sf.n, tuple(row & ~(1 << q) for q, row in enumerate(gamma.rows)))

    transformed = list(sf.rows)
    for q in bit_indices(diagonal):
        transformed = [row.s_dagger(q) for row in transformed]

    frame = 0
    for a, (row, expected) in enumerate(zip(transformed, graph_generators(graph, sf))):
        if not row.same_up_to_sign(expected):
            raise ComputationError(f"Generator {a + 1} does not match its graph form", "conversion")
        if row.phase != expected.phase:
            frame |= 1 << a

    generators = group_generators(sf)
    if d is None:
        d = code_distance(graph, span(generators))
    group = CodingClique.from_generators(graph, d, generators)
    logger.info("Converted [[%d,%d]] stabilizer to a graph with %d edge(s), d=%d",
                cm.n, cm.k, graph.edge_count, d)
    return GraphConversion(
        graph=graph,
        clique=group,
        standard_form=sf,
        s_dagger_qubits=diagonal,
        pauli_frame=frame,
        F=F if F is not None else GF2Matrix.zeros(sf.k, sf.k),
    )


def stabilizer_to_graph(cm: CheckMatrix, F: Optional[GF2Matrix] = None) -> Tuple[Graph, CodingClique]:
    conversion = convert_stabilizer(cm, F)
    return conversion.graph, conversion.clique


def group_to_stabilizer(g: Graph, group: CodingClique, frame: int = 0) -> CheckMatrix:
    """Generators G_S for a basis of {S : |S & C| even for all C in the group}.

    With a nonzero ``frame`` the code is Z_frame applied to the group code, and the
    generators whose sets meet ``frame`` oddly change sign.

    Raises:
        ValidationError: If ``group`` is not a coding group on ``g``
    """
    if not group.is_group:
        raise ValidationError("Only coding groups define stabilizer codes", "kind", str(group))
    if group.graph != g:
        raise ValidationError("Coding group belongs to a different graph", "graph", g.n)
    rows = []
    for s in kernel_basis(list(group.generators), g.n):
        generator = stabilizer_product(g, s)
        if parity(s & frame):
            generator = -generator
        rows.append(generator)
    return CheckMatrix(g.n, tuple(rows))
