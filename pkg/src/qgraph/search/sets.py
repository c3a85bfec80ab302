"""The d-purity set S_d and the d-uncoverable set D_d of a graph."""

import itertools
import logging
from dataclasses import dataclass
from typing import List, Tuple

import numpy as np

from qgraph.core.gf2 import from_indices, popcount, submasks
from qgraph.core.graph import Graph
from qgraph.exceptions import ValidationError

logger = logging.getLogger(__name__)

MAX_UNCOVERABLE_VERTICES = 20


def _check_distance(g: Graph, d: int) -> None:
    if not 1 <= d <= max(g.n, 1):
        raise ValidationError(f"Distance {d} outside 1..{g.n}", "range", d)


@dataclass(frozen=True)
class PuritySet:
    """Nonempty S with |S | N_S| < d. The empty set is never a member."""

    graph: Graph
    d: int
    members: Tuple[int, ...]

    def __len__(self) -> int:
        return len(self.members)

    def admits(self, c: int) -> bool:
        """Condition 1: |C & S| even for every member S."""
        return all(popcount(c & s) % 2 == 0 for s in self.members)


def purity_set(g: Graph, d: int) -> PuritySet:
    _check_distance(g, d)
    found = []
    for size in range(1, min(d - 1, g.n) + 1):
        for combo in itertools.combinations(range(g.n), size):
            s = from_indices(combo)
            if popcount(s | g.neighborhood_set(s)) < d:
                found.append(s)
    return PuritySet(g, d, tuple(sorted(found)))


@dataclass(frozen=True, eq=False)
class UncoverableSet:
    """Indicator over all 2^n subsets; ``mask[C]`` is 1 iff C is d-uncoverable."""

    graph: Graph
    d: int
    mask: np.ndarray

    def __contains__(self, c: int) -> bool:
        return bool(self.mask[c])

    def __len__(self) -> int:
        return int(self.mask.sum())

    def members(self) -> List[int]:
        return [int(c) for c in np.flatnonzero(self.mask)]


def cover_images(g: Graph, d: int) -> np.ndarray:
    """Indicator of every delta xor N_omega with |delta | omega| < d."""
    covered = np.zeros(1 << g.n, dtype=np.uint8)
    neighbourhood = {}
    for size in range(0, min(d - 1, g.n) + 1):
        for combo in itertools.combinations(range(g.n), size):
            union = from_indices(combo)
            for omega in submasks(union):
                if omega not in neighbourhood:
                    neighbourhood[omega] = g.neighborhood_set(omega)
                n_omega = neighbourhood[omega]
                rest = union & ~omega
                for extra in submasks(omega):
                    covered[(rest | extra) ^ n_omega] = 1
    return covered


def uncoverable_set(g: Graph, d: int) -> UncoverableSet:
    """D_d: subsets admitting no cover by fewer than d vertices.

    Raises:
        ValidationError: If n exceeds 20 (the indicator has 2^n entries)
    """
    _check_distance(g, d)
    if g.n > MAX_UNCOVERABLE_VERTICES:
        raise ValidationError(
            f"Uncoverable sets are enumerated for n <= {MAX_UNCOVERABLE_VERTICES}, got {g.n}",
            "size", g.n,
        )
    mask = (1 - cover_images(g, d)).astype(np.uint8)
    logger.debug("D_%d on %d vertices: %d uncoverable subsets", d, g.n, int(mask.sum()))
    return UncoverableSet(g, d, mask)
