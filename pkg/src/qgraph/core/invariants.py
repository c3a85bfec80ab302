"""Local-unitary invariants: weight distribution and frequency series.

For a graph code with basis {Z_C |G>}, Tr(E P) is nonzero only for E = +-G_x
(one Pauli per subset x, supported on x | N_x), where it equals
+-sum_i (-1)^{|x & C_i|}. Hence

    A_omega = (1/K^2) * sum over x with x | N_x = omega of (sum_i (-1)^{|x & C_i|})^2

which needs 2^n * K steps instead of a sweep over all 4^n Paulis.
"""

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Sequence, Tuple

from qgraph.core.gf2 import from_indices, parity, popcount
from qgraph.core.graph import Graph
from qgraph.core.graphstate import apply_pauli, basis_state, inner
from qgraph.core.pauli import iter_paulis
from qgraph.utils import fraction_to_json

Series = Tuple[Tuple[Fraction, ...], ...]


def support_distribution(g: Graph, basis: Sequence[int]) -> Dict[int, Fraction]:
    """Nonzero A_omega keyed by support bitmask."""
    members = list(basis)
    k = len(members)
    totals: Dict[int, int] = {}
    neighbourhoods = [0] * (1 << g.n)
    for x in range(1, 1 << g.n):
        low = x & -x
        neighbourhoods[x] = neighbourhoods[x ^ low] ^ g.adj[low.bit_length() - 1]
    for x in range(1 << g.n):
        s = sum(1 - 2 * parity(x & c) for c in members)
        if s:
            omega = x | neighbourhoods[x]
            totals[omega] = totals.get(omega, 0) + s * s
    return {omega: Fraction(total, k * k) for omega, total in totals.items()}


def weights_from_supports(n: int, supports: Dict[int, Fraction]) -> Tuple[Fraction, ...]:
    weights = [Fraction(0)] * (n + 1)
    for omega, value in supports.items():
        weights[popcount(omega)] += value
    return tuple(weights)


def weight_distribution(g: Graph, basis: Sequence[int]) -> Tuple[Fraction, ...]:
    """(A_0, ..., A_n) as exact rationals; they sum to 2^n / K."""
    return weights_from_supports(g.n, support_distribution(g, basis))


def series_from_supports(n: int, supports: Dict[int, Fraction], d: int) -> Series:
    at_weight = [(omega, value) for omega, value in supports.items() if popcount(omega) == d]
    out = []
    for size in range(d + 1):
        values = []
        for s in itertools.combinations(range(n), size):
            mask = from_indices(s)
            values.append(sum((value for omega, value in at_weight if omega & mask == mask), Fraction(0)))
        out.append(tuple(sorted(values, reverse=True)))
    return tuple(out)


def frequency_series(g: Graph, basis: Sequence[int], d: int) -> Series:
    """For |S| = 0..d, the descending list of F_d(S) = sum_{omega >= S, |omega| = d} A_omega."""
    return series_from_supports(g.n, support_distribution(g, basis), d)


@dataclass(frozen=True)
class CodeInvariants:
    """Weight distribution plus the frequency series of every weight present."""

    weights: Tuple[Fraction, ...]
    freq: Dict[int, Series] = field(default_factory=dict)

    def fingerprint(self) -> Tuple[Any, ...]:
        return self.weights, tuple(sorted(self.freq.items()))

    def to_json(self) -> Dict[str, Any]:
        return {
            "weights": [fraction_to_json(a) for a in self.weights],
            "frequency": {
                str(d): [[fraction_to_json(v) for v in row] for row in series]
                for d, series in sorted(self.freq.items())
            },
        }


def code_invariants(g: Graph, basis: Sequence[int]) -> CodeInvariants:
    supports = support_distribution(g, basis)
    weights = weights_from_supports(g.n, supports)
    freq = {d: series_from_supports(g.n, supports, d) for d in range(1, g.n + 1) if weights[d]}
    return CodeInvariants(weights, freq)


def dense_weight_distribution(g: Graph, basis: Sequence[int]) -> Tuple[Fraction, ...]:
    """Brute force over all 4^n Paulis with the state-vector oracle (small n only)."""
    states = [basis_state(g, c) for c in basis]
    totals: List[int] = [0] * (g.n + 1)
    for e in iter_paulis(g.n, g.n):
        trace = sum(inner(s, apply_pauli(s, e)) for s in states)
        totals[e.weight] += int(round(abs(trace) ** 2))
    k = len(states)
    return tuple(Fraction(total, k * k) for total in totals)


def weight_sum(weights: Sequence[Fraction]) -> Fraction:
    return sum(weights, Fraction(0))

