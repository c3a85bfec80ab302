"""Code equivalence: invariant fingerprints and explicit LC + permutation witnesses."""

import logging
from collections import deque
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

from qgraph.core.gf2 import bit_indices
from qgraph.core.invariants import code_invariants
from qgraph.core.isomorphism import isomorphisms
from qgraph.core.graph import Graph
from qgraph.exceptions import ValidationError
from qgraph.search.coding import CodingClique
from qgraph.search.transport import lc_transport
from qgraph.utils import bits_to_labels

logger = logging.getLogger(__name__)

Fingerprint = Tuple[Any, ...]


def equivalence_fingerprint(g: Graph, basis: Sequence[int]) -> Fingerprint:
    """Weight distribution and frequency series. Different fingerprints prove two codes
    inequivalent; equal ones do not prove equivalence."""
    return code_invariants(g, basis).fingerprint()


@dataclass(frozen=True)
class EquivalenceWitness:
    """``status`` is ``equivalent``, ``inequivalent`` or ``inconclusive``.

    For ``equivalent``: local complementations at ``lc_sequence`` take the first code to
    one whose members, relabelled by ``permutation`` and xored with ``translation``,
    are the second code's members.
    """

    status: str
    lc_sequence: Tuple[int, ...] = ()
    permutation: Tuple[int, ...] = ()
    translation: int = 0
    states: int = 0
    notes: List[str] = field(default_factory=list)

    @property
    def equivalent(self) -> bool:
        return self.status == "equivalent"

    def to_json(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {"status": self.status, "states": self.states}
        if self.equivalent:
            data["lc_sequence"] = [v + 1 for v in self.lc_sequence]
            data["permutation"] = [v + 1 for v in self.permutation]
            data["translation"] = bits_to_labels(self.translation)
        if self.notes:
            data["notes"] = list(self.notes)
        return data


def _relabel(c: int, perm: Sequence[int]) -> int:
    return sum(1 << perm[q] for q in bit_indices(c))


def _match(clique: CodingClique, target: CodingClique) -> Optional[Tuple[List[int], int]]:
    wanted = frozenset(target.members)
    anchor = min(wanted)
    for perm in isomorphisms(clique.graph, target.graph):
        mapped = [_relabel(c, perm) for c in clique.members]
        for m in mapped:
            t = m ^ anchor
            if frozenset(c ^ t for c in mapped) == wanted:
                return perm, t
    return None


def find_equivalence_witness(
    code_a: CodingClique,
    code_b: CodingClique,
    max_states: int = 2000,
) -> EquivalenceWitness:
    """Breadth-first search over LC transports of ``code_a`` for a relabelling onto
    ``code_b`` up to a Pauli-Z frame.

    Raises:
        ValidationError: If the codes differ in n or K
    """
    if code_a.n != code_b.n or code_a.K != code_b.K:
        raise ValidationError(
            f"Codes ({code_a.n},{code_a.K}) and ({code_b.n},{code_b.K}) cannot be equivalent",
            "dimension",
        )
    fp_a = equivalence_fingerprint(code_a.graph, code_a.members)
    fp_b = equivalence_fingerprint(code_b.graph, code_b.members)
    if fp_a != fp_b:
        return EquivalenceWitness("inequivalent", notes=["fingerprints differ"])

    def key(clique: CodingClique) -> Tuple[Tuple[int, ...], frozenset]:
        return clique.graph.adj, frozenset(clique.members)

    queue = deque([(code_a, ())])
    seen = {key(code_a)}
    while queue:
        clique, path = queue.popleft()
        found = _match(clique, code_b)
        if found is not None:
            perm, t = found
            logger.debug("Equivalence witness after %d state(s): LC at %s", len(seen), path)
            return EquivalenceWitness("equivalent", tuple(path), tuple(perm), t, len(seen))
        for v in range(clique.n):
            moved = lc_transport(clique, v)
            if key(moved) in seen:
                continue
            if len(seen) >= max_states:
                return EquivalenceWitness("inconclusive", states=len(seen), notes=["state cap reached"])
            seen.add(key(moved))
            queue.append((moved, path + (v,)))
    return EquivalenceWitness("inconclusive", states=len(seen), notes=["LC orbit exhausted"])
