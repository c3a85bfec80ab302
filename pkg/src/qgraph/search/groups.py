"""Coding groups: coding cliques closed under symmetric difference."""

import logging
from typing import List, Optional

from qgraph.core.graph import Graph
from qgraph.exceptions import ComputationError, ValidationError
from qgraph.search.cliques import SearchResult
from qgraph.search.coding import CodingClique, check_conditions
from qgraph.search.supergraph import SuperGraph, build_super_graph
from qgraph.utils import Deadline

logger = logging.getLogger(__name__)


class _Timeout(Exception):
    pass


def search_coding_groups(
    g: Graph,
    d: int,
    k: int,
    sg: Optional[SuperGraph] = None,
    limit: Optional[int] = None,
    time_budget: Optional[float] = None,
) -> SearchResult:
    """All subgroups of size 2^k whose nonzero elements are super-graph vertices.

    Generators are chosen in increasing order, each one zero on the top bits of the
    earlier ones, so every subgroup is reached once through its reduced echelon basis.

    Args:
        g: Graph
        d: Target distance
        k: Number of generators (log2 of the code dimension)
        sg: Prebuilt super graph for (g, d)
        limit: Stop after this many groups
        time_budget: Wall-clock seconds before giving up with ``complete=False``

    Returns:
        SearchResult with the coding groups in canonical order
    """
    if not 0 <= k <= g.n:
        raise ValidationError(f"Group rank {k} outside 0..{g.n}", "range", k)
    deadline = Deadline(time_budget)
    sg = sg or build_super_graph(g, d)
    admissible = set(sg.vertices)
    candidates = sorted(v for v in sg.vertices if v)

    found: List[CodingClique] = []
    seen = set()
    nodes = 0

    def extend(generators: List[int], elements: List[int], pivots: int) -> bool:
        nonlocal nodes
        nodes += 1
        if nodes & 255 == 1 and deadline.expired():
            raise _Timeout()
        if len(generators) == k:
            group = CodingClique.from_generators(g, d, generators)
            if group.members not in seen:
                seen.add(group.members)
                found.append(group)
            return limit is not None and len(found) >= limit
        last = generators[-1] if generators else 0
        for c in candidates:
            if c <= last or c & pivots:
                continue
            if all((e ^ c) in admissible for e in elements):
                coset = [e ^ c for e in elements]
                top = 1 << (c.bit_length() - 1)
                if extend(generators + [c], elements + coset, pivots | top):
                    return True
        return False

    complete = True
    try:
        extend([], [0], 0)
    except _Timeout:
        complete = False

    for group in found:
        problems = check_conditions(group, sg.purity, sg.uncoverable)
        if problems:
            raise ComputationError(f"Group search produced an invalid group: {problems[0]}", "group_search")
    found.sort(key=CodingClique.sort_key)
    logger.info("Coding groups for d=%d, k=%d on %d vertices: %d%s", d, k, g.n, len(found),
                "" if complete else " (incomplete)")
    stats = {
        "mode": f"groups:{k}",
        "super_vertices": sg.order,
        "nodes": nodes,
        "found": len(found),
        "elapsed": round(deadline.elapsed(), 6),
        "complete": complete,
    }
    return SearchResult(found, complete, stats)


def find_coding_groups(
    g: Graph,
    d: int,
    k: int,
    sg: Optional[SuperGraph] = None,
    limit: Optional[int] = None,
) -> List[CodingClique]:
    """Every coding group of size 2^k on ``g`` at distance ``d``, without a time budget."""
    return search_coding_groups(g, d, k, sg, limit).cliques
