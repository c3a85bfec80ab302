"""Branch-and-bound clique search on the super graph.

Cliques always contain super vertex 0 (the empty set). Candidate sets are Python int
bitsets; the bound is a greedy sequential colouring in super-vertex index order, so
the search tree, and therefore the output, does not depend on the machine or on the
number of workers.
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Dict, Iterator, List, Optional, Sequence, Tuple

from qgraph.exceptions import ComputationError, ValidationError
from qgraph.search.coding import CodingClique, check_conditions
from qgraph.search.supergraph import SuperGraph
from qgraph.utils import Deadline, sorted_members

logger = logging.getLogger(__name__)

MODE_KINDS = ("max", "all_max", "at_least", "exhaustive")


@dataclass(frozen=True)
class SearchMode:
    """``max``: one maximum clique. ``all_max``: every maximum clique.
    ``at_least``: the first clique of size K. ``exhaustive``: every clique of size K."""

    kind: str = "max"
    k: int = 0

    def __post_init__(self) -> None:
        if self.kind not in MODE_KINDS:
            raise ValidationError(f"Unknown search mode {self.kind!r}", "kind", self.kind)
        if self.kind in ("at_least", "exhaustive") and self.k < 1:
            raise ValidationError(f"Mode {self.kind} needs a positive size", "range", self.k)

    @classmethod
    def parse(cls, text: str) -> "SearchMode":
        kind, _, size = text.partition(":")
        kind = kind.strip().replace("-", "_")
        if kind in ("at_least", "exhaustive"):
            try:
                return cls(kind, int(size))
            except ValueError:
                raise ValidationError(f"Mode {text!r} needs a size, e.g. {kind}:12", "input", text)
        return cls(kind)

    def __str__(self) -> str:
        return f"{self.kind}:{self.k}" if self.kind in ("at_least", "exhaustive") else self.kind


@dataclass
class SearchResult:
    cliques: List[CodingClique]
    complete: bool = True
    stats: Dict[str, Any] = field(default_factory=dict)

    def __iter__(self) -> Iterator[CodingClique]:
        return iter(self.cliques)

    def __len__(self) -> int:
        return len(self.cliques)

    def __getitem__(self, index: int) -> CodingClique:
        return self.cliques[index]


class _Timeout(Exception):
    pass


class _BranchSearch:
    """One depth-first search over a fixed adjacency."""

    def __init__(self, adjacency: Sequence[int], kind: str, k: int, expires: Optional[float]):
        self.adj = adjacency
        self.kind = kind
        self.k = k
        self.best = 0
        self.found: List[List[int]] = []
        self.nodes = 0
        self.stopped = False
        self.deadline = Deadline.until(expires)

    def colour_sort(self, candidates: int) -> Tuple[List[int], List[int]]:
        order: List[int] = []
        colours: List[int] = []
        uncoloured = candidates
        colour = 0
        while uncoloured:
            colour += 1
            available = uncoloured
            while available:
                low = available & -available
                v = low.bit_length() - 1
                available &= ~low & ~self.adj[v]
                uncoloured &= ~low
                order.append(v)
                colours.append(colour)
        return order, colours

    def _pruned(self, bound: int) -> bool:
        if self.kind == "max":
            return bound <= self.best
        if self.kind == "all_max":
            return bound < self.best
        return bound < self.k

    def _record(self, clique: List[int]) -> None:
        size = len(clique)
        if self.kind == "max":
            if size > self.best:
                self.best, self.found = size, [list(clique)]
        elif self.kind == "all_max":
            if size > self.best:
                self.best, self.found = size, [list(clique)]
            elif size == self.best:
                self.found.append(list(clique))
        elif self.kind == "exhaustive":
            self.found.append(list(clique))
        else:
            self.found = [list(clique)]
            self.stopped = True

    def expand(self, clique: List[int], candidates: int) -> None:
        self.nodes += 1
        if self.nodes & 1023 == 0 and self.deadline.expired():
            raise _Timeout()
        order, colours = self.colour_sort(candidates)
        for index in range(len(order) - 1, -1, -1):
            if self._pruned(len(clique) + colours[index]):
                return
            v = order[index]
            clique.append(v)
            remaining = candidates & self.adj[v]
            if self.kind in ("at_least", "exhaustive") and len(clique) == self.k:
                self._record(clique)
            elif remaining:
                self.expand(clique, remaining)
            elif self.kind in ("max", "all_max"):
                self._record(clique)
            clique.pop()
            if self.stopped:
                return
            candidates &= ~(1 << v)

    def run(self, clique: List[int], candidates: int) -> bool:
        """Search below ``clique``; False when the deadline cut the search short."""
        if self.deadline.expired():
            return False
        try:
            if self.kind in ("at_least", "exhaustive") and len(clique) >= self.k:
                self._record(clique)
            elif candidates:
                self.expand(clique, candidates)
            elif self.kind in ("max", "all_max"):
                self._record(clique)
        except _Timeout:
            return False
        return True


def _run_task(args: Tuple[Sequence[int], str, int, List[int], int, Optional[float]]):
    adjacency, kind, k, clique, candidates, expires = args
    search = _BranchSearch(adjacency, kind, k, expires)
    complete = search.run(clique, candidates)
    return search.found, search.best, search.nodes, complete


def _root_tasks(search: _BranchSearch, candidates: int) -> List[Tuple[List[int], int]]:
    """The root's branches in serial visiting order."""
    order, colours = search.colour_sort(candidates)
    tasks = []
    for index in range(len(order) - 1, -1, -1):
        if search.kind in ("at_least", "exhaustive") and 1 + colours[index] < search.k:
            break
        v = order[index]
        tasks.append(([0, v], candidates & search.adj[v]))
        candidates &= ~(1 << v)
    return tasks


def _merge(kind: str, outcomes: List[Tuple[List[List[int]], int, int, bool]]) -> List[List[int]]:
    if kind == "exhaustive":
        return [c for found, _, _, _ in outcomes for c in found]
    if kind == "at_least":
        return next(([found[0]] for found, _, _, _ in outcomes if found), [])
    best = max((best for _, best, _, _ in outcomes), default=0)
    if kind == "max":
        return next(([found[0]] for found, size, _, _ in outcomes if found and size == best), [])
    return [c for found, size, _, _ in outcomes if size == best for c in found]


def find_cliques(
    sg: SuperGraph,
    mode: SearchMode = SearchMode(),
    time_budget: Optional[float] = None,
    workers: int = 1,
) -> SearchResult:
    """Coding cliques of the super graph under ``mode``.

    A clique C and its translates C xor t (t in C) give the same code up to Z_t and are
    reported once, as the representative chosen by :meth:`CodingClique.frame_canonical`.

    Args:
        sg: Super graph from :func:`build_super_graph`
        mode: Search mode
        time_budget: Wall-clock seconds for the whole search, across all workers,
            before giving up with ``complete=False``
        workers: Processes for the root branches (1 searches in-process)

    Returns:
        SearchResult with canonically ordered, re-validated cliques
    """
    deadline = Deadline(time_budget)
    root_candidates = sg.adjacency[0]
    search = _BranchSearch(sg.adjacency, mode.kind, mode.k, deadline.expires)
    tasks_count = 1

    serial = workers <= 1 or not root_candidates or (mode.kind in ("at_least", "exhaustive") and mode.k <= 1)
    if serial:
        complete = search.run([0], root_candidates)
        found, nodes = search.found, search.nodes
    else:
        tasks = _root_tasks(search, root_candidates)
        tasks_count = len(tasks)
        payload = [(sg.adjacency, mode.kind, mode.k, clique, cand, deadline.expires) for clique, cand in tasks]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(_run_task, payload))
        complete = all(outcome[3] for outcome in outcomes)
        nodes = sum(outcome[2] for outcome in outcomes)
        found = _merge(mode.kind, outcomes)
    if mode.kind in ("max", "all_max") and not found:
        found = [[0]]

    cliques: List[CodingClique] = []
    seen = set()
    for indices in found:
        members = tuple(sorted_members(sg.vertices[i] for i in indices))
        clique = CodingClique(sg.graph, sg.d, members)
        problems = check_conditions(clique, sg.purity, sg.uncoverable)
        if problems:
            raise ComputationError(f"Search produced an invalid clique: {problems[0]}", "clique_search")
        clique = clique.frame_canonical()
        if clique.members not in seen:
            seen.add(clique.members)
            cliques.append(clique)
    cliques.sort(key=CodingClique.sort_key)

    stats = {
        "mode": str(mode),
        "super_vertices": sg.order,
        "super_edges": sg.edge_count,
        "nodes": nodes,
        "tasks": tasks_count,
        "workers": max(1, workers),
        "best_size": max((c.K for c in cliques), default=0),
        "found": len(cliques),
        "translates": len(found),
        "elapsed": round(deadline.elapsed(), 6),
        "complete": complete,
    }
    logger.info("Clique search %s: %d clique(s), best size %d, %d nodes%s",
                mode, len(cliques), stats["best_size"], nodes, "" if complete else " (incomplete)")
    return SearchResult(cliques, complete, stats)
