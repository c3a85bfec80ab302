"""Canonical labelling, graph classes and local-complementation orbits.

Canonical forms come from a small individualisation-refinement search: refine the
vertex partition to an equitable one, branch on the first non-singleton cell (skipping
twins of vertices already tried), and keep the lexicographically smallest relabelled
adjacency among the discrete leaves.
"""

import itertools
import logging
from functools import lru_cache
from pathlib import Path
from typing import Dict, FrozenSet, Iterator, List, Optional, Sequence, Tuple

from qgraph.config import get_settings
from qgraph.core.gf2 import from_indices, popcount
from qgraph.core.graph import Graph
from qgraph.exceptions import ValidationError

logger = logging.getLogger(__name__)

MAX_CANONICAL_VERTICES = 12


def _refine(g: Graph, cells: List[List[int]]) -> List[List[int]]:
    while True:
        masks = [from_indices(cell) for cell in cells]
        refined: List[List[int]] = []
        for cell in cells:
            if len(cell) == 1:
                refined.append(cell)
                continue
            groups: Dict[Tuple[int, ...], List[int]] = {}
            for v in cell:
                signature = tuple(popcount(g.adj[v] & mask) for mask in masks)
                groups.setdefault(signature, []).append(v)
            refined.extend(groups[key] for key in sorted(groups))
        if len(refined) == len(cells):
            return refined
        cells = refined


def _are_twins(g: Graph, u: int, v: int) -> bool:
    return g.adj[u] & ~(1 << v) == g.adj[v] & ~(1 << u)


def canonical_form(g: Graph) -> Tuple[Graph, List[int]]:
    """Isomorphism-invariant representative of ``g``.

    Returns:
        (canonical graph, relabeling) where ``g.permute(relabeling)`` is the canonical graph

    Raises:
        ValidationError: For more than 12 vertices
    """
    if g.n > MAX_CANONICAL_VERTICES:
        raise ValidationError(
            f"Canonical labelling supports at most {MAX_CANONICAL_VERTICES} vertices, got {g.n}",
            "size", g.n,
        )
    if g.n == 0:
        return g, []

    best: Optional[Tuple[int, ...]] = None
    best_perm: List[int] = []

    def search(cells: List[List[int]]) -> None:
        nonlocal best, best_perm
        cells = _refine(g, cells)
        target = next((i for i, cell in enumerate(cells) if len(cell) > 1), None)
        if target is None:
            perm = [0] * g.n
            for position, cell in enumerate(cells):
                perm[cell[0]] = position
            certificate = g.permute(perm).adj
            if best is None or certificate < best:
                best, best_perm = certificate, perm
            return
        tried: List[int] = []
        cell = cells[target]
        for v in cell:
            if any(_are_twins(g, u, v) for u in tried):
                continue
            tried.append(v)
            rest = [u for u in cell if u != v]
            search(cells[:target] + [[v], rest] + cells[target + 1:])

    search([list(range(g.n))])
    return g.permute(best_perm), best_perm


def canonical(g: Graph) -> Graph:
    return canonical_form(g)[0]


def graph_order_key(g: Graph) -> Tuple[int, Tuple[int, ...]]:
    """Deterministic ordering: fewer edges first, then canonical adjacency."""
    return g.edge_count, g.adj


def is_isomorphic(g: Graph, h: Graph) -> bool:
    return g.n == h.n and canonical(g) == canonical(h)


def isomorphisms(g: Graph, h: Graph) -> Iterator[List[int]]:
    """Every permutation ``perm`` with ``g.permute(perm) == h``."""
    if g.n != h.n or sorted(map(g.degree, range(g.n))) != sorted(map(h.degree, range(h.n))):
        return
    n = g.n
    order = sorted(range(n), key=lambda v: (-g.degree(v), v))
    perm = [-1] * n
    used = 0

    def extend(i: int) -> Iterator[List[int]]:
        nonlocal used
        if i == n:
            yield list(perm)
            return
        v = order[i]
        for w in range(n):
            if used >> w & 1 or h.degree(w) != g.degree(v):
                continue
            if all(g.has_edge(v, order[j]) == h.has_edge(w, perm[order[j]]) for j in range(i)):
                perm[v] = w
                used |= 1 << w
                yield from extend(i + 1)
                used &= ~(1 << w)
                perm[v] = -1

    yield from extend(0)


def _extend(h: Graph, neighbours: int) -> Graph:
    """Add vertex ``h.n`` adjacent to ``neighbours``."""
    new = h.n
    adj = [row | (1 << new) if neighbours >> v & 1 else row for v, row in enumerate(h.adj)]
    adj.append(neighbours)
    return Graph(h.n + 1, tuple(adj))


@lru_cache(maxsize=None)
def graph_classes(n: int) -> Tuple[Graph, ...]:
    """One canonical graph per isomorphism class on n vertices."""
    if n <= 1:
        return (Graph.empty_graph(n),)
    found = {
        canonical(_extend(h, neighbours))
        for h in graph_classes(n - 1)
        for neighbours in range(1 << (n - 1))
    }
    return tuple(sorted(found, key=graph_order_key))


def lc_orbit(g: Graph) -> FrozenSet[Graph]:
    """Canonical forms of every graph reachable by local complementations."""
    start = canonical(g)
    orbit = {start}
    frontier = [start]
    while frontier:
        grown = []
        for h in frontier:
            for v in range(h.n):
                image = canonical(h.local_complement(v))
                if image not in orbit:
                    orbit.add(image)
                    grown.append(image)
        frontier = grown
    return frozenset(orbit)


def orbit_representative(orbit: FrozenSet[Graph]) -> Graph:
    return min(orbit, key=graph_order_key)


def _cache_file(n: int) -> Optional[Path]:
    cache_dir = get_settings().cache_dir
    if cache_dir is None:
        return None
    return Path(cache_dir) / f"lc_connected_{n}.g6"


def _read_cache(n: int) -> Optional[Tuple[Graph, ...]]:
    path = _cache_file(n)
    if path is None or not path.exists():
        return None
    lines = [line for line in path.read_text(encoding="ascii").splitlines() if line.strip()]
    logger.debug("Loaded %d LC representatives for n=%d from %s", len(lines), n, path)
    return tuple(Graph.from_graph6(line) for line in lines)


def _write_cache(n: int, reps: Sequence[Graph]) -> None:
    path = _cache_file(n)
    if path is None:
        return
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text("".join(g.to_graph6() + "\n" for g in reps), encoding="ascii")
    except OSError as e:
        logger.warning("Could not write LC cache %s: %s", path, e)


@lru_cache(maxsize=None)
def connected_lc_representatives(n: int) -> Tuple[Graph, ...]:
    """One graph per LC+isomorphism class of connected graphs on n vertices.

    Every connected graph on n vertices is LC-equivalent to an extension of some
    (possibly disconnected) class representative on n - 1 vertices, because local
    complementation at a vertex other than the new one acts on the smaller graph
    exactly as it does there.
    """
    if n < 1:
        raise ValidationError(f"Vertex count must be positive, got {n}", "range", n)
    if n == 1:
        return (Graph.empty_graph(1),)
    cached = _read_cache(n)
    if cached is not None:
        return cached

    seen: set = set()
    reps: List[Graph] = []
    for base in all_lc_representatives(n - 1):
        for neighbours in range(1, 1 << (n - 1)):
            g = _extend(base, neighbours)
            if not g.is_connected():
                continue
            c = canonical(g)
            if c in seen:
                continue
            orbit = lc_orbit(c)
            seen |= orbit
            reps.append(orbit_representative(orbit))
    reps.sort(key=graph_order_key)
    logger.info("n=%d: %d connected LC classes (%d graphs visited)", n, len(reps), len(seen))
    _write_cache(n, reps)
    return tuple(reps)


def _partitions(n: int, largest: int) -> Iterator[Tuple[int, ...]]:
    if n == 0:
        yield ()
        return
    for part in range(min(n, largest), 0, -1):
        for rest in _partitions(n - part, part):
            yield (part,) + rest


@lru_cache(maxsize=None)
def disconnected_lc_representatives(n: int) -> Tuple[Graph, ...]:
    """LC classes of disconnected graphs: multisets of connected classes.

    Each representative is the disjoint union of connected representatives, larger
    components first.
    """
    reps: List[Graph] = []
    for partition in _partitions(n, n):
        if len(partition) < 2:
            continue
        choices = []
        for size, group in itertools.groupby(partition):
            count = len(list(group))
            choices.append(list(itertools.combinations_with_replacement(connected_lc_representatives(size), count)))
        for combo in itertools.product(*choices):
            union = Graph.empty_graph(0)
            for graphs in combo:
                for part in graphs:
                    union = union.disjoint_union(part)
            reps.append(union)
    return tuple(reps)


def all_lc_representatives(n: int) -> Tuple[Graph, ...]:
    return connected_lc_representatives(n) + disconnected_lc_representatives(n)


def lc_orbit_representatives(n: int, connected: bool = True) -> List[Graph]:
    """LC+isomorphism class representatives on n vertices.

    Args:
        n: Vertex count (desk scale is n <= 8)
        connected: Only connected classes when True, all classes otherwise

    Returns:
        Representatives, connected ones ordered by edge count then adjacency
    """
    if connected:
        return list(connected_lc_representatives(n))
    return list(all_lc_representatives(n))

