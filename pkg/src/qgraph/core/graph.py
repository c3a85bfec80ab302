"""Simple graphs on at most 64 vertices.

Adjacency is stored as one bitmask per vertex (row a is the neighbourhood N_a).
External formats (JSON edge lists, graph6) are converted at the boundary.
"""

import random
from dataclasses import dataclass
from typing import Any, Dict, Iterable, List, Sequence, Tuple

import networkx as nx

from qgraph.core.gf2 import MAX_VERTICES, VertexSet, bit_indices, check_width, popcount
from qgraph.exceptions import ValidationError
from qgraph.utils import load_json_file

FAMILY_KINDS = ("loop", "star", "complete", "empty", "path")


@dataclass(frozen=True)
class Graph:
    """n vertices with a symmetric, zero-diagonal adjacency."""

    n: int
    adj: Tuple[int, ...]

    def __post_init__(self) -> None:
        check_width(self.n)
        if len(self.adj) != self.n:
            raise ValidationError(
                f"Adjacency has {len(self.adj)} rows for n={self.n}", "dimension", len(self.adj)
            )
        for a, row in enumerate(self.adj):
            if row < 0 or row >> self.n:
                raise ValidationError(f"Row {a + 1} has bits beyond n={self.n}", "graph", row)
            if row >> a & 1:
                raise ValidationError(f"Vertex {a + 1} is its own neighbour", "graph", a + 1)
            for b in bit_indices(row):
                if not self.adj[b] >> a & 1:
                    raise ValidationError(
                        f"Adjacency is not symmetric at ({a + 1}, {b + 1})", "graph", (a + 1, b + 1)
                    )

    # Constructors
    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]], one_indexed: bool = True) -> "Graph":
        """Build from an edge list; labels are 1-indexed unless ``one_indexed`` is False."""
        check_width(n)
        offset = 1 if one_indexed else 0
        adj = [0] * n
        for edge in edges:
            if len(edge) != 2:
                raise ValidationError(f"Edge {edge!r} must have two endpoints", "input", edge)
            a, b = (int(v) - offset for v in edge)
            if not (0 <= a < n and 0 <= b < n):
                raise ValidationError(f"Edge {list(edge)} outside the {n} vertices", "range", edge)
            if a == b:
                raise ValidationError(f"Self-loop at vertex {a + offset}", "graph", edge)
            adj[a] |= 1 << b
            adj[b] |= 1 << a
        return cls(n, tuple(adj))

    @classmethod
    def from_matrix(cls, matrix: Sequence[Sequence[int]]) -> "Graph":
        n = len(matrix)
        adj = []
        for a, row in enumerate(matrix):
            if len(row) != n:
                raise ValidationError("Adjacency matrix must be square", "dimension", len(row))
            adj.append(sum(1 << b for b, value in enumerate(row) if value % 2))
        return cls(n, tuple(adj))

    @classmethod
    def empty_graph(cls, n: int) -> "Graph":
        return cls(n, (0,) * n)

    @classmethod
    def random_graph(cls, n: int, rng: random.Random, p: float = 0.5) -> "Graph":
        edges = [(a, b) for a in range(n) for b in range(a + 1, n) if rng.random() < p]
        return cls.from_edges(n, edges, one_indexed=False)

    # Basic queries
    def neighborhood(self, v: int) -> int:
        self._check_vertex(v)
        return self.adj[v]

    def neighborhood_set(self, s: int) -> int:
        """N_S: symmetric difference of N_v over v in S."""
        if s < 0 or s >> self.n:
            raise ValidationError(f"Vertex set {s:#x} exceeds n={self.n}", "range", s)
        out = 0
        for v in bit_indices(s):
            out ^= self.adj[v]
        return out

    def degree(self, v: int) -> int:
        return popcount(self.adj[v])

    def has_edge(self, a: int, b: int) -> bool:
        return bool(self.adj[a] >> b & 1)

    def edges(self) -> List[Tuple[int, int]]:
        """0-indexed edges (a, b) with a < b, sorted."""
        return [(a, b) for a in range(self.n) for b in bit_indices(self.adj[a]) if a < b]

    @property
    def edge_count(self) -> int:
        return sum(popcount(row) for row in self.adj) // 2

    def edges_inside(self, s: int) -> int:
        """Number of edges with both endpoints in S."""
        return sum(popcount(self.adj[v] & s) for v in bit_indices(s)) // 2

    def matrix(self) -> List[List[int]]:
        return [[row >> b & 1 for b in range(self.n)] for row in self.adj]

    def _check_vertex(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise ValidationError(f"Vertex {v + 1} outside 1..{self.n}", "range", v + 1)

    # Transformations
    def local_complement(self, v: int) -> "Graph":
        """Toggle every edge inside N_v."""
        self._check_vertex(v)
        nv = self.adj[v]
        adj = list(self.adj)
        for u in bit_indices(nv):
            adj[u] ^= nv & ~(1 << u)
        return Graph(self.n, tuple(adj))

    def permute(self, perm: Sequence[int]) -> "Graph":
        """Relabel vertex a as ``perm[a]``."""
        if sorted(perm) != list(range(self.n)):
            raise ValidationError("Not a permutation of the vertices", "input", list(perm))
        adj = [0] * self.n
        for a, row in enumerate(self.adj):
            image = 0
            for b in bit_indices(row):
                image |= 1 << perm[b]
            adj[perm[a]] = image
        return Graph(self.n, tuple(adj))

    def components(self) -> List[int]:
        """Connected components as bitmasks, ordered by lowest vertex."""
        seen = 0
        out = []
        for start in range(self.n):
            if seen >> start & 1:
                continue
            comp = frontier = 1 << start
            while frontier:
                grown = 0
                for v in bit_indices(frontier):
                    grown |= self.adj[v]
                frontier = grown & ~comp
                comp |= frontier
            seen |= comp
            out.append(comp)
        return out

    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.components()) == 1

    def isolated_vertices(self) -> int:
        return sum(1 << v for v in range(self.n) if self.adj[v] == 0)

    def disjoint_union(self, other: "Graph") -> "Graph":
        if self.n + other.n > MAX_VERTICES:
            raise ValidationError("Disjoint union exceeds the vertex limit", "size", self.n + other.n)
        shifted = tuple(row << self.n for row in other.adj)
        return Graph(self.n + other.n, self.adj + shifted)

    # External formats
    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(self.edges())
        return g

    @classmethod
    def from_networkx(cls, g: nx.Graph) -> "Graph":
        index = {node: i for i, node in enumerate(sorted(g.nodes()))}
        return cls.from_edges(len(index), ((index[a], index[b]) for a, b in g.edges()), one_indexed=False)

    def to_graph6(self) -> str:
        return nx.to_graph6_bytes(self.to_networkx(), header=False).decode("ascii").strip()

    @classmethod
    def from_graph6(cls, text: str) -> "Graph":
        data = text.strip()
        if data.startswith(">>graph6<<"):
            data = data[len(">>graph6<<"):]
        try:
            g = nx.from_graph6_bytes(data.encode("ascii"))
        except (ValueError, nx.NetworkXError, UnicodeEncodeError) as e:
            raise ValidationError(f"Invalid graph6 string {text!r}: {e}", "input", text)
        return cls.from_networkx(g)

    def to_json(self) -> Dict[str, Any]:
        return {"n": self.n, "edges": [[a + 1, b + 1] for a, b in self.edges()]}

    @classmethod
    def from_json(cls, data: Dict[str, Any]) -> "Graph":
        try:
            n = int(data["n"])
            edges = data.get("edges", [])
        except (KeyError, TypeError, ValueError) as e:
            raise ValidationError(f"Graph JSON needs 'n' and 'edges': {e}", "input", data)
        return cls.from_edges(n, edges)


def neighborhood_set(g: Graph, s: VertexSet) -> VertexSet:
    """N_S as a VertexSet."""
    if s.n != g.n:
        raise ValidationError(f"Vertex set over n={s.n} for a graph on {g.n}", "dimension", s.n)
    return VertexSet(g.neighborhood_set(s.bits), g.n)


def local_complement(g: Graph, v: int) -> Graph:
    return g.local_complement(v)


def family(kind: str, n: int) -> Graph:
    """Named graph families. The star's centre o is the last vertex."""
    if n < 1:
        raise ValidationError(f"Family size must be at least 1, got {n}", "range", n)
    if kind == "loop":
        if n <= 2:
            return family("path", n)
        return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)], one_indexed=False)
    if kind == "path":
        return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)], one_indexed=False)
    if kind == "star":
        return Graph.from_edges(n, [(i, n - 1) for i in range(n - 1)], one_indexed=False)
    if kind == "complete":
        return Graph.from_edges(n, [(a, b) for a in range(n) for b in range(a + 1, n)], one_indexed=False)
    if kind == "empty":
        return Graph.empty_graph(n)
    raise ValidationError(f"Unknown graph family {kind!r}; expected one of {FAMILY_KINDS}", "kind", kind)


def parse_graph_source(source: str) -> Graph:
    """Parse ``g6:<graph6>``, ``<family>:<n>`` or a JSON file path."""
    if source.startswith("g6:"):
        return Graph.from_graph6(source[3:])
    kind, sep, size = source.partition(":")
    if sep and kind in FAMILY_KINDS:
        try:
            return family(kind, int(size))
        except ValueError:
            raise ValidationError(f"Bad family size in {source!r}", "input", source)
    data = load_json_file(source)
    if isinstance(data, dict) and "graph" in data:
        graph_data = dict(data["graph"])
        graph_data.setdefault("n", data.get("n"))
        return Graph.from_json(graph_data)
    return Graph.from_json(data)
