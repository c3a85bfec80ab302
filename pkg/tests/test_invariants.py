from fractions import Fraction

import pytest

from qgraph.core.graph import Graph, family
from qgraph.core.invariants import (code_invariants, dense_weight_distribution, frequency_series,
                                    weight_distribution, weight_sum)


def test_pentagon_weights(l5):
    assert weight_distribution(l5, [0, 0b11111]) == (1, 0, 0, 0, 15, 0)


def test_eq5_weights_sum(l5, eq5_members):
    weights = weight_distribution(l5, eq5_members)
    assert weights[0] == 1
    assert weight_sum(weights) == Fraction(32, 6)
    assert weights[1] == 0


@pytest.mark.parametrize("basis", [[0, 0b11111], [0, 0b00110, 0b01101]])
def test_matches_dense_sweep(l5, basis):
    assert weight_distribution(l5, basis) == dense_weight_distribution(l5, basis)


def test_matches_dense_sweep_on_random_graphs(rng):
    for _ in range(3):
        g = Graph.random_graph(4, rng)
        basis = sorted({0} | {rng.randrange(16) for _ in range(3)})
        assert weight_distribution(g, basis) == dense_weight_distribution(g, basis)


def test_graph_state_weights_sum_to_two_to_n():
    weights = weight_distribution(family("star", 4), [0])
    assert weight_sum(weights) == 16


def test_pentagon_frequency_series(l5):
    series = frequency_series(l5, [0, 0b11111], 4)
    assert series[0] == (15,)
    assert series[1] == (12,) * 5
    assert series[2] == (9,) * 10


def test_code_invariants_fingerprint(l5, eq5_members):
    inv = code_invariants(l5, [0, 0b11111])
    assert set(inv.freq) == {4}
    assert inv.to_json()["weights"] == [1, 0, 0, 0, 15, 0]
    permuted = l5.permute([1, 2, 3, 4, 0])
    assert code_invariants(permuted, [0, 0b11111]).fingerprint() == inv.fingerprint()
    assert code_invariants(l5, eq5_members).fingerprint() != inv.fingerprint()
