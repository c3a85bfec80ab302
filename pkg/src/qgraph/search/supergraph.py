"""The super graph whose cliques through the empty set are coding cliques."""

import logging
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np

from qgraph.core.graph import Graph
from qgraph.search.sets import (PuritySet, UncoverableSet, purity_set,
                                uncoverable_set)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SuperGraph:
    """Super vertex i is the subset ``vertices[i]``; ``adjacency[i]`` is a bitmask of
    super-vertex indices. Vertex 0 is always the empty set."""

    graph: Graph
    d: int
    vertices: Tuple[int, ...]
    adjacency: Tuple[int, ...]
    purity: PuritySet
    uncoverable: UncoverableSet

    @property
    def order(self) -> int:
        return len(self.vertices)

    @property
    def edge_count(self) -> int:
        return sum(row.bit_count() for row in self.adjacency) // 2

    def index_of(self, c: int) -> Optional[int]:
        try:
            return self.vertices.index(c)
        except ValueError:
            return None


def _pack_rows(matrix: np.ndarray) -> List[int]:
    """Boolean rows to Python int bitmasks (column j -> bit j)."""
    packed = np.packbits(matrix, axis=1, bitorder="little")
    return [int.from_bytes(row.tobytes(), "little") for row in packed]


def build_super_graph(
    g: Graph,
    d: int,
    purity: Optional[PuritySet] = None,
    uncoverable: Optional[UncoverableSet] = None,
) -> SuperGraph:
    """Vertices: the empty set, then every nonempty C in D_d satisfying Condition 1,
    in increasing bitmask order. C ~ C' iff C xor C' is in D_d."""
    purity = purity or purity_set(g, d)
    uncoverable = uncoverable or uncoverable_set(g, d)

    candidates = np.flatnonzero(uncoverable.mask)
    candidates = candidates[candidates != 0].astype(np.int64)
    for s in purity.members:
        overlap = candidates & s
        odd = np.zeros(len(candidates), dtype=np.int64)
        while overlap.any():
            odd ^= overlap & 1
            overlap = overlap >> 1
        candidates = candidates[odd == 0]

    vertices = np.concatenate([np.zeros(1, dtype=np.int64), candidates])
    differences = vertices[:, None] ^ vertices[None, :]
    matrix = uncoverable.mask[differences].astype(bool)
    np.fill_diagonal(matrix, False)

    sg = SuperGraph(
        graph=g,
        d=d,
        vertices=tuple(int(v) for v in vertices),
        adjacency=tuple(_pack_rows(matrix)),
        purity=purity,
        uncoverable=uncoverable,
    )
    logger.debug("Super graph for d=%d: %d vertices, %d edges", d, sg.order, sg.edge_count)
    return sg
