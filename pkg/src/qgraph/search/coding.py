"""Coding cliques and coding groups, with the Conditions 0-2 check."""

import itertools
from dataclasses import dataclass, replace
from typing import Any, Dict, List, Optional, Sequence, Tuple

from qgraph.core.gf2 import echelon_basis, parity, popcount, span
from qgraph.core.graph import Graph
from qgraph.exceptions import ValidationError, VerificationError
from qgraph.search.sets import PuritySet, UncoverableSet, purity_set, uncoverable_set
from qgraph.utils import bits_to_labels, format_set, labels_to_bits, member_key, sorted_members


@dataclass(frozen=True)
class CodingClique:
    """A family of vertex subsets of ``graph`` meant to satisfy Conditions 0-2 at ``d``.

    When ``is_group`` is set the members form a subgroup under symmetric difference
    and ``generators`` is its reduced echelon basis.
    """

    graph: Graph
    d: int
    members: Tuple[int, ...]
    is_group: bool = False
    generators: Tuple[int, ...] = ()

    def __post_init__(self) -> None:
        limit = 1 << self.graph.n
        for c in self.members + self.generators:
            if not 0 <= c < limit:
                raise ValidationError(f"Member {c:#x} exceeds n={self.graph.n}", "range", c)

    @classmethod
    def from_generators(cls, graph: Graph, d: int, generators: Sequence[int]) -> "CodingClique":
        basis = echelon_basis(generators)
        return cls(graph, d, tuple(sorted_members(span(basis))), True, tuple(basis))

    @property
    def K(self) -> int:
        return len(self.members)

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def k(self) -> Optional[int]:
        """log2 K for groups."""
        return len(self.generators) if self.is_group else None

    def canonical(self) -> "CodingClique":
        return replace(self, members=tuple(sorted_members(self.members)))

    def sort_key(self) -> Tuple[Tuple[int, ...], ...]:
        return tuple(member_key(c) for c in sorted_members(self.members))

    def frame_key(self) -> Tuple[Tuple[int, ...], Tuple[Tuple[int, ...], ...]]:
        """Member weights, heaviest first, then the member order key."""
        return tuple(sorted((popcount(c) for c in self.members), reverse=True)), self.sort_key()

    def frame_canonical(self) -> "CodingClique":
        """The translate C xor t (t a member) with the lightest heaviest members; groups map to themselves."""
        if self.is_group:
            return self.canonical()
        return min((self.translate(t) for t in self.members), key=CodingClique.frame_key).canonical()

    def translate(self, t: int) -> "CodingClique":
        """Pauli-frame translation C -> C xor t (the code Z_t applied)."""
        members = tuple(c ^ t for c in self.members)
        if self.is_group and t not in self.members:
            return CodingClique(self.graph, self.d, members)
        return replace(self, members=members)

    def to_json(self, name: str = "") -> Dict[str, Any]:
        data: Dict[str, Any] = {
            "name": name,
            "n": self.graph.n,
            "d": self.d,
            "K": self.K,
            "kind": "group" if self.is_group else "clique",
            "graph": {"edges": self.graph.to_json()["edges"]},
            "clique": [bits_to_labels(c) for c in sorted_members(self.members)],
        }
        if self.is_group:
            data["generators"] = [bits_to_labels(c) for c in self.generators]
        return data

    @classmethod
    def from_json(cls, data: Dict[str, Any]) -> "CodingClique":
        try:
            n = int(data["n"])
            d = int(data["d"])
            graph = Graph.from_edges(n, data["graph"]["edges"])
        except (KeyError, TypeError, ValueError) as e:
            raise ValidationError(f"Code JSON needs 'n', 'd' and 'graph.edges': {e}", "input", data)
        if "generators" in data:
            gens = [labels_to_bits(labels, n) for labels in data["generators"]]
            return cls.from_generators(graph, d, gens)
        if "clique" not in data:
            raise ValidationError("Code JSON needs 'clique' or 'generators'", "input", data)
        members = tuple(labels_to_bits(labels, n) for labels in data["clique"])
        clique = cls(graph, d, members)
        if data.get("kind") == "group":
            return as_group(clique)
        return clique

    def __str__(self) -> str:
        return "{" + ", ".join(format_set(c) for c in sorted_members(self.members)) + "}"


def as_group(clique: CodingClique) -> CodingClique:
    """Mark a clique as a coding group, checking closure under symmetric difference."""
    basis = echelon_basis(clique.members)
    if len(clique.members) != 1 << len(basis) or set(span(basis)) != set(clique.members):
        raise ValidationError("Members are not closed under symmetric difference", "input", str(clique))
    return CodingClique(clique.graph, clique.d, clique.members, True, tuple(basis))


def check_conditions(
    clique: CodingClique,
    purity: Optional[PuritySet] = None,
    uncoverable: Optional[UncoverableSet] = None,
) -> List[str]:
    """Every violated condition, as readable messages (empty when the clique is valid)."""
    g, d = clique.graph, clique.d
    purity = purity or purity_set(g, d)
    uncoverable = uncoverable or uncoverable_set(g, d)
    problems = []

    if 0 not in clique.members:
        problems.append("condition 0: the empty set is not a member")
    if len(set(clique.members)) != len(clique.members):
        problems.append("duplicate members")
    for c in clique.members:
        for s in purity.members:
            if parity(c & s):
                problems.append(f"condition 1: {format_set(c)} meets {format_set(s)} oddly")
    for a, b in itertools.combinations(clique.members, 2):
        if a != b and (a ^ b) not in uncoverable:
            problems.append(
                f"condition 2: {format_set(a)} xor {format_set(b)} = {format_set(a ^ b)} is coverable"
            )
    if clique.is_group:
        if set(span(clique.generators)) != set(clique.members):
            problems.append("group: members differ from the span of the generators")
    return problems


def validate_clique(
    clique: CodingClique,
    purity: Optional[PuritySet] = None,
    uncoverable: Optional[UncoverableSet] = None,
) -> None:
    problems = check_conditions(clique, purity, uncoverable)
    if problems:
        raise VerificationError(f"Invalid coding clique: {problems[0]}", problems)
