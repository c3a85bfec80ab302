"""Named codes. Every entry is rebuilt and re-verified when it is first requested."""

import itertools
import logging
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from qgraph.config import get_settings
from qgraph.core.gf2 import from_indices, popcount, span
from qgraph.core.graph import Graph, family
from qgraph.core.graphstate import kl_verify
from qgraph.core.invariants import weight_distribution
from qgraph.exceptions import CatalogError, VerificationError
from qgraph.search.cliques import SearchMode, find_cliques
from qgraph.search.coding import CodingClique, check_conditions
from qgraph.search.supergraph import build_super_graph
from qgraph.stabilizer.check_matrix import CheckMatrix
from qgraph.stabilizer.conversion import convert_stabilizer
from qgraph.utils import format_weights, labels_to_bits, load_json_file

logger = logging.getLogger(__name__)

DERIVED_BY_SEARCH = "derived by search, matches the claimed (n,K,d)"

PENTAGON_CLIQUE = ((), (2, 3, 5), (3, 4, 1), (4, 5, 2), (5, 1, 3), (1, 2, 4))

STEANE_GENERATORS = ("IIIXXXX", "IXXIIXX", "XIXIXIX", "IIIZZZZ", "IZZIIZZ", "ZIZIZIZ")

G10_WEIGHTS = {6: Fraction(20, 3), 8: Fraction(35)}


@dataclass(frozen=True)
class CodeDescriptor:
    """A verified named code."""

    name: str
    clique: CodingClique
    provenance: str = ""

    @property
    def n(self) -> int:
        return self.clique.n

    @property
    def K(self) -> int:
        return self.clique.K

    @property
    def d(self) -> int:
        return self.clique.d

    @property
    def graph(self) -> Graph:
        return self.clique.graph

    @property
    def kind(self) -> str:
        return "group" if self.clique.is_group else "clique"

    def to_json(self) -> Dict[str, Any]:
        data = self.clique.to_json(self.name)
        data["provenance"] = self.provenance
        return data


def verify_descriptor(descriptor: CodeDescriptor) -> CodeDescriptor:
    """Conditions 0-2 plus a Knill-Laflamme check at exactly the claimed distance.

    Raises:
        VerificationError: If the code is not an ((n, K, d)) code with that exact d
    """
    clique = descriptor.clique
    problems = check_conditions(clique)
    if problems:
        raise VerificationError(f"Catalog entry {descriptor.name}: {problems[0]}", problems)
    verdict = kl_verify(clique.graph, clique.members, clique.d)
    if not verdict.accepted:
        raise VerificationError(f"Catalog entry {descriptor.name} fails Knill-Laflamme at d={clique.d}",
                                verdict.to_json())
    if clique.d < clique.n and kl_verify(clique.graph, clique.members, clique.d + 1).accepted:
        raise VerificationError(f"Catalog entry {descriptor.name} has distance above {clique.d}")
    logger.debug("Verified %s: ((%d,%d,%d))", descriptor.name, descriptor.n, descriptor.K, descriptor.d)
    return descriptor


def _clique_from_labels(g: Graph, d: int, members: Sequence[Sequence[int]]) -> CodingClique:
    return CodingClique(g, d, tuple(labels_to_bits(labels, g.n) for labels in members)).canonical()


# Fixed entries
def l5_662() -> CodeDescriptor:
    g = family("loop", 5)
    return CodeDescriptor("l5_662", _clique_from_labels(g, 2, PENTAGON_CLIQUE), "((5,6,2)) on the 5-cycle")


def pentagon_513() -> CodeDescriptor:
    g = family("loop", 5)
    clique = CodingClique.from_generators(g, 3, [(1 << 5) - 1])
    return CodeDescriptor("pentagon_513", clique, "[[5,1,3]]: the 5-cycle with group {0, V}")


def steane_713() -> CodeDescriptor:
    cm = CheckMatrix.from_strings(STEANE_GENERATORS)
    conversion = convert_stabilizer(cm, d=3)
    return CodeDescriptor("steane_713", conversion.clique, "[[7,1,3]] converted from its CSS generators")


def l9_1233() -> CodeDescriptor:
    g = family("loop", 9)
    result = find_cliques(build_super_graph(g, 3), SearchMode("at_least", 12),
                          workers=get_settings().threads)
    if not result.cliques:
        raise CatalogError("No size-12 coding clique on the 9-cycle", "kind", "l9_1233")
    return CodeDescriptor("l9_1233", result.cliques[0], DERIVED_BY_SEARCH)


def g10_2433() -> CodeDescriptor:
    """Read from the witness file named by the ``g10_witness`` setting."""
    path = get_settings().g10_witness
    if path is None:
        raise CatalogError(
            "g10_2433 needs a witness: set QGRAPH_G10_WITNESS (or g10_witness in the config file) "
            "to a code JSON found with `qgraph search-clique --mode exhaustive:24 -d 3`",
            "kind", "g10_2433",
        )
    clique = CodingClique.from_json(load_json_file(path))
    if (clique.n, clique.K, clique.d) != (10, 24, 3):
        raise CatalogError(f"Witness {path} is (({clique.n},{clique.K},{clique.d})), expected ((10,24,3))",
                           "kind", str(path))
    weights = weight_distribution(clique.graph, clique.members)
    expected = [Fraction(1)] + [G10_WEIGHTS.get(w, Fraction(0)) for w in range(1, 11)]
    if list(weights) != expected:
        raise VerificationError(f"Witness {path} has weight distribution {format_weights(weights)}")
    return CodeDescriptor("g10_2433", clique, f"witness loaded from {path}")


# Parameterised families
def star_family_size(n: int) -> int:
    """M_n = 2^{4n-1} - C(4n, 2n) / 2."""
    return 2 ** (4 * n - 1) - comb(4 * n, 2 * n) // 2


def _star_sizes(n: int) -> List[int]:
    return list(range(0, 2 * n - 1, 2)) + list(range(2 * n + 1, 4 * n, 2))


def _star_members(n: int) -> List[int]:
    members = []
    for size in _star_sizes(n):
        members += [from_indices(c) for c in itertools.combinations(range(4 * n), size)]
    return members


def star_family(n: int) -> CodeDescriptor:
    """Star on 4n+1 vertices (centre last); members are leaf sets of even size below
    2n or odd size above 2n."""
    _check_parameter("star_family", n, 1, 3)
    g = family("star", 4 * n + 1)
    clique = CodingClique(g, 2, tuple(_star_members(n))).canonical()
    return CodeDescriptor(f"star_family({n})", clique, f"K = M_{n} = {star_family_size(n)}")


def _block_patterns() -> List[Tuple[Tuple[int, int], ...]]:
    pairs = list(itertools.combinations(range(4), 2))
    patterns = []
    for mask in range(1 << len(pairs)):
        patterns.append((popcount(mask), mask, tuple(p for i, p in enumerate(pairs) if mask >> i & 1)))
    return [edges for _, _, edges in sorted(patterns)]


def star_family_plus(n: int) -> CodeDescriptor:
    """The star code plus B = {o} + {4l-2, 4l-1}, on the star with one edge pattern
    added inside every block of four leaves. The first pattern that verifies wins."""
    _check_parameter("star_family_plus", n, 1, 2)
    star = family("star", 4 * n + 1)
    centre = 4 * n
    extra = 1 << centre
    for block in range(n):
        extra |= 1 << (4 * block + 1) | 1 << (4 * block + 2)
    members = _star_members(n) + [extra]
    for edges in _block_patterns():
        added = [(4 * block + a, 4 * block + b) for block in range(n) for a, b in edges]
        g = Graph.from_edges(star.n, star.edges() + added, one_indexed=False)
        if not kl_verify(g, members, 2).accepted:
            continue
        clique = CodingClique(g, 2, tuple(members)).canonical()
        if check_conditions(clique):
            continue
        logger.info("star_family_plus(%d): block edges %s", n, [(a + 1, b + 1) for a, b in edges])
        return CodeDescriptor(f"star_family_plus({n})", clique, DERIVED_BY_SEARCH)
    raise CatalogError(f"No block pattern gives a K = {star_family_size(n) + 1} code", "kind", n)


def _rains_graph(m: int, p: int, q: int) -> Graph:
    edges = family("loop", 5).edges()
    for j in range(m - 1):
        a, b = 5 + 2 * j, 6 + 2 * j
        edges.append((a, b))
        edges += [(v, a) for v in range(5) if p >> v & 1]
        edges += [(v, b) for v in range(5) if q >> v & 1]
    return Graph.from_edges(5 + 2 * (m - 1), edges, one_indexed=False)


def rains_family(m: int) -> CodeDescriptor:
    """The 5-cycle plus m-1 connected pairs (a_j, b_j); the ((5,6,2)) members are
    translated by the span of {2, a_j} and {5, b_j}, giving K = 6 * 4^{m-1}."""
    _check_parameter("rains_family", m, 1, 3)
    if m == 1:
        return CodeDescriptor("rains_family(1)", _clique_from_labels(family("loop", 5), 2, PENTAGON_CLIQUE),
                              "((5,6,2)) on the 5-cycle")
    n = 5 + 2 * (m - 1)
    base = [labels_to_bits(labels, n) for labels in PENTAGON_CLIQUE]
    shifts = []
    for j in range(m - 1):
        shifts += [1 << 1 | 1 << (5 + 2 * j), 1 << 4 | 1 << (6 + 2 * j)]
    members = [c ^ s for s in span(shifts) for c in base]
    attachments = sorted(itertools.product(range(32), repeat=2), key=lambda pq: (popcount(pq[0]) + popcount(pq[1]), pq))
    for p, q in attachments:
        g = _rains_graph(m, p, q)
        if not kl_verify(g, members, 2).accepted:
            continue
        clique = CodingClique(g, 2, tuple(members)).canonical()
        if check_conditions(clique):
            continue
        logger.info("rains_family(%d): a_j ~ %s, b_j ~ %s", m, sorted(v + 1 for v in range(5) if p >> v & 1),
                    sorted(v + 1 for v in range(5) if q >> v & 1))
        return CodeDescriptor(f"rains_family({m})", clique, DERIVED_BY_SEARCH)
    raise CatalogError(f"No attachment gives a K = {6 * 4 ** (m - 1)} code", "kind", m)


def _check_parameter(name: str, value: int, low: int, high: int) -> None:
    if not low <= value <= high:
        raise CatalogError(f"{name} takes a parameter in {low}..{high}, got {value}", "range", value)


FIXED: Dict[str, Callable[[], CodeDescriptor]] = {
    "l5_662": l5_662,
    "pentagon_513": pentagon_513,
    "steane_713": steane_713,
    "l9_1233": l9_1233,
    "g10_2433": g10_2433,
}

FAMILIES: Dict[str, Callable[[int], CodeDescriptor]] = {
    "star_family": star_family,
    "star_family_plus": star_family_plus,
    "rains_family": rains_family,
}

DESCRIPTIONS = {
    "l5_662": "((5,6,2)) on the 5-cycle",
    "pentagon_513": "[[5,1,3]] on the 5-cycle",
    "steane_713": "[[7,1,3]] Steane code",
    "l9_1233": "((9,12,3)) on the 9-cycle (search)",
    "g10_2433": "((10,24,3)) from a witness file",
    "star_family": "((4n+1, M_n, 2)) on the star",
    "star_family_plus": "((4n+1, M_n+1, 2)) on an augmented star (search)",
    "rains_family": "((2m+3, 6*4^(m-1), 2)) from the 5-cycle (search)",
}

_NAME = re.compile(r"^\s*([a-z0-9_]+)\s*(?:[(:]\s*(\d+)\s*\)?)?\s*$")


def list_catalog() -> List[Tuple[str, str]]:
    """(name, description) for every entry; families show their parameter."""
    out = [(name, DESCRIPTIONS[name]) for name in FIXED]
    out += [(f"{name}(n)" if name != "rains_family" else f"{name}(m)", DESCRIPTIONS[name]) for name in FAMILIES]
    return out


@lru_cache(maxsize=None)
def _build(name: str, parameter: Optional[int]) -> CodeDescriptor:
    if name in FIXED:
        return verify_descriptor(FIXED[name]())
    assert parameter is not None
    return verify_descriptor(FAMILIES[name](parameter))


def catalog_entry(name: str) -> CodeDescriptor:
    """Look up ``name`` (``star_family(2)`` and ``star_family:2`` are both accepted).

    Raises:
        CatalogError: For unknown names or missing parameters
        VerificationError: If the rebuilt code does not verify
    """
    match = _NAME.match(name)
    if not match:
        raise CatalogError(f"Malformed catalog name {name!r}", "input", name)
    base, parameter = match.group(1), match.group(2)
    if base in FIXED:
        if parameter is not None:
            raise CatalogError(f"{base} takes no parameter", "input", name)
        return _build(base, None)
    if base in FAMILIES:
        if parameter is None:
            raise CatalogError(f"{base} needs a parameter, e.g. {base}(1)", "input", name)
        return _build(base, int(parameter))
    known = ", ".join(entry for entry, _ in list_catalog())
    raise CatalogError(f"Unknown catalog entry {base!r}; known: {known}", "kind", name)
