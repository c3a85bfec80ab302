"""Moving coding cliques along local complementations."""

from dataclasses import replace
from typing import Iterable

from qgraph.core.gf2 import echelon_basis
from qgraph.exceptions import ValidationError
from qgraph.search.coding import CodingClique


def transport_member(c: int, v: int, n_v: int) -> int:
    return c ^ n_v if c >> v & 1 else c


def lc_transport(clique: CodingClique, v: int) -> CodingClique:
    """C -> C if v not in C, else C xor N_v; the result lives on the graph
    locally complemented at v. Member order is kept."""
    g = clique.graph
    if not 0 <= v < g.n:
        raise ValidationError(f"Vertex {v + 1} outside 1..{g.n}", "range", v)
    n_v = g.neighborhood(v)
    members = tuple(transport_member(c, v, n_v) for c in clique.members)
    generators = clique.generators
    if clique.is_group:
        generators = tuple(echelon_basis(transport_member(c, v, n_v) for c in generators))
    return replace(clique, graph=g.local_complement(v), members=members, generators=generators)


def transport_sequence(clique: CodingClique, vertices: Iterable[int]) -> CodingClique:
    for v in vertices:
        clique = lc_transport(clique, v)
    return clique
