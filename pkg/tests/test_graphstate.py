import cmath

import numpy as np
import pytest

from qgraph.core.graph import Graph, family
from qgraph.core.isomorphism import graph_classes
from qgraph.core.graphstate import (apply_lc_unitary, code_distance, code_projector, graph_state,
                                    inner, is_pure, kl_verify, oracle_kl_verify, oracle_overlap,
                                    overlap, pauli_pushthrough, vertex_stabilizer)
from qgraph.core.pauli import PauliOperator, iter_paulis
from qgraph.exceptions import ValidationError


def test_vertex_stabilizer_fixes_graph_state(l5):
    state = graph_state(l5)
    for a in range(5):
        g_a = vertex_stabilizer(l5, a)
        assert inner(state, state) == pytest.approx(1)
        assert oracle_overlap(l5, 0, g_a, 0) == pytest.approx(1)


@pytest.mark.parametrize("n", [3, 4, 5])
def test_overlap_matches_state_vectors(n, rng):
    for _ in range(4):
        g = Graph.random_graph(n, rng)
        for _ in range(60):
            e = PauliOperator(rng.randrange(1 << n), rng.randrange(1 << n), rng.randrange(4), n)
            a = rng.randrange(1 << n)
            b = rng.randrange(1 << n)
            assert cmath.isclose(overlap(g, a, e, b), oracle_overlap(g, a, e, b), abs_tol=1e-9)


def test_pushthrough_image_carries_the_overlap(l5, rng):
    for _ in range(50):
        e = PauliOperator.hermitian(rng.randrange(32), rng.randrange(32), 5)
        push = pauli_pushthrough(l5, e)
        assert abs(oracle_overlap(l5, push.omega_image, e, 0)) == pytest.approx(1)


def test_kl_verify_eq5(l5, eq5_members):
    assert kl_verify(l5, eq5_members, 2).accepted
    verdict = kl_verify(l5, eq5_members, 3)
    assert not verdict.accepted
    assert verdict.error.weight <= 2
    assert verdict.to_json()["reason"] in ("off_diagonal", "diagonal_mismatch")
    assert oracle_kl_verify(l5, eq5_members, 2).accepted
    assert not oracle_kl_verify(l5, eq5_members, 3).accepted


def test_kl_verify_pentagon(l5):
    assert kl_verify(l5, [0, 0b11111], 3).accepted
    assert not kl_verify(l5, [0, 0b11111], 4).accepted
    assert code_distance(l5, [0, 0b11111]) == 3


def test_code_distance_eq5(l5, eq5_members):
    assert code_distance(l5, eq5_members) == 2


def test_kl_verify_rejects_bad_input(l5):
    with pytest.raises(ValidationError):
        kl_verify(l5, [], 2)
    with pytest.raises(ValidationError):
        kl_verify(l5, [0, 0], 2)
    with pytest.raises(ValidationError):
        kl_verify(l5, [0], 0)


def test_purity():
    assert is_pure(family("loop", 5), [0, 0b11111], 3)
    assert not is_pure(Graph.empty_graph(2), [0], 2)
    # G_1 G_2 = Y_1 Y_2 on a single edge
    assert not is_pure(family("path", 2), [0], 3)


def test_oracle_size_limit():
    with pytest.raises(ValidationError):
        graph_state(family("path", 13))


def test_code_projector_is_hermitian(l5, eq5_members):
    projector = code_projector(l5, eq5_members)
    assert np.allclose(projector, projector.conj().T)
    assert np.trace(projector).real == pytest.approx(6 * 32)


@pytest.mark.parametrize("v", range(5))
def test_lc_unitary_maps_graph_states(l5, v):
    mapped = apply_lc_unitary(graph_state(l5), l5, v)
    target = graph_state(l5.local_complement(v))
    assert abs(inner(target, mapped)) == pytest.approx(1)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_overlap_exhaustive_small_graphs(n):
    for g in graph_classes(n):
        for e in iter_paulis(n, n):
            for b in range(1 << n):
                assert cmath.isclose(overlap(g, 0, e, b), oracle_overlap(g, 0, e, b), abs_tol=1e-9)


@pytest.mark.slow
@pytest.mark.parametrize("n", [4, 5])
def test_overlap_exhaustive_graphs(n):
    for g in graph_classes(n):
        for e in iter_paulis(n, n):
            image = pauli_pushthrough(g, e).omega_image
            for a in (0, image):
                assert cmath.isclose(overlap(g, a, e, 0), oracle_overlap(g, a, e, 0), abs_tol=1e-9)


@pytest.mark.slow
@pytest.mark.parametrize("n", [7, 8])
def test_overlap_random_large(n, rng):
    for _ in range(20):
        g = Graph.random_graph(n, rng)
        for _ in range(500):
            e = PauliOperator.hermitian(rng.randrange(1 << n), rng.randrange(1 << n), n)
            a = rng.randrange(1 << n)
            b = a ^ pauli_pushthrough(g, e).omega_image if rng.random() < 0.5 else rng.randrange(1 << n)
            assert cmath.isclose(overlap(g, a, e, b), oracle_overlap(g, a, e, b), abs_tol=1e-9)
