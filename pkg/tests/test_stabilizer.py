import json

import numpy as np
import pytest

from qgraph.core.gf2 import GF2Matrix, bit_indices
from qgraph.core.graph import Graph
from qgraph.core.graphstate import code_projector, kl_verify, vertex_stabilizer
from qgraph.core.invariants import weight_distribution
from qgraph.exceptions import ValidationError
from qgraph.search import CodingClique, lc_transport, transport_sequence
from qgraph.stabilizer import (CheckMatrix, convert_stabilizer, equivalence_fingerprint,
                               find_equivalence_witness, graph_generators, graph_matrix, group_to_stabilizer,
                               parse_check_matrix, replay, stabilizer_projector, stabilizer_to_graph,
                               stabilizer_weight_distribution, standard_form)

FOUR_QUBIT_GENERATORS = ["XXXX", "ZZZZ"]


@pytest.fixture(params=["five", "steane", "four", "bell"])
def code(request, five_qubit_code, steane_code):
    return {
        "five": five_qubit_code,
        "steane": steane_code,
        "four": CheckMatrix.from_strings(FOUR_QUBIT_GENERATORS),
        "bell": CheckMatrix.from_strings(["XX", "ZZ"]),
    }[request.param]


def test_check_matrix_validation():
    with pytest.raises(ValidationError) as info:
        CheckMatrix.from_strings(["XX", "XX"])
    assert info.value.validation_type == "rank"
    with pytest.raises(ValidationError) as info:
        CheckMatrix.from_strings(["XI", "ZI"])
    assert info.value.validation_type == "commutation"
    with pytest.raises(ValidationError):
        CheckMatrix.from_strings(["iXX"])
    with pytest.raises(ValidationError):
        CheckMatrix.from_strings(["XX", "ZZZ"])
    with pytest.raises(ValidationError):
        CheckMatrix.from_strings([])


def test_check_matrix_shape(steane_code):
    assert (steane_code.n, steane_code.r, steane_code.k) == (7, 6, 1)
    assert steane_code.symplectic().rank() == 6
    assert len(list(steane_code.elements())) == 64


def test_parse_check_matrix(tmp_path, five_qubit_code):
    text = tmp_path / "five.txt"
    text.write_text("# five-qubit code\nXZZXI\nIXZZX\n\nXIXZZ\nZXIXZ  # last\n")
    assert parse_check_matrix(text) == five_qubit_code
    data = tmp_path / "five.json"
    data.write_text(json.dumps(five_qubit_code.to_json()))
    assert parse_check_matrix(data) == five_qubit_code
    with pytest.raises(ValidationError):
        parse_check_matrix(tmp_path / "absent.txt")


def test_stabilizer_weights(steane_code):
    assert stabilizer_weight_distribution(steane_code) == (1, 0, 0, 0, 21, 0, 42, 0)
    assert stabilizer_weight_distribution(CheckMatrix.from_strings(FOUR_QUBIT_GENERATORS)) == (1, 0, 0, 0, 3)


def test_standard_form_replays(code):
    sf = standard_form(code)
    assert replay(code, sf) == list(sf.rows)
    assert sf.D.is_symmetric()
    assert sf.x_block().rows == tuple(row.x for row in sf.rows)
    assert sf.z_block().rows == tuple(row.z for row in sf.rows)
    assert sorted(sf.permutation) == list(range(code.n))


def test_graph_generators_match_transformed_rows(code):
    conv = convert_stabilizer(code)
    generators = graph_generators(conv.graph, conv.standard_form)
    assert len(generators) == code.r
    for row, generator in zip(conv.transformed_generators(), generators):
        assert row.same_up_to_sign(generator)
    with pytest.raises(ValidationError):
        graph_generators(Graph.empty_graph(code.n + 1), conv.standard_form)


def test_standard_form_of_bell_pair_uses_hadamard():
    sf = standard_form(CheckMatrix.from_strings(["XX", "ZZ"]))
    assert sf.hadamards == (1,)
    assert [row.to_string() for row in sf.rows] == ["+XZ", "+ZX"]
    assert sf.k == 0


def test_replay_shape_mismatch(five_qubit_code, steane_code):
    with pytest.raises(ValidationError):
        replay(five_qubit_code, standard_form(steane_code))


def test_conversion_reaches_distance(code):
    conv = convert_stabilizer(code)
    group = conv.clique
    assert group.is_group
    assert group.K == 1 << code.k
    assert kl_verify(conv.graph, group.members, group.d).accepted
    assert conv.to_json()["code"]["K"] == group.K


def test_conversion_distances(five_qubit_code, steane_code):
    assert convert_stabilizer(five_qubit_code).clique.d == 3
    assert convert_stabilizer(steane_code).clique.d == 3
    assert convert_stabilizer(CheckMatrix.from_strings(FOUR_QUBIT_GENERATORS)).clique.d == 2


def test_converted_weights_are_invariant(steane_code):
    graph, group = stabilizer_to_graph(steane_code)
    assert weight_distribution(graph, group.members) == (1, 0, 0, 0, 21, 0, 42, 0)
    graph, group = stabilizer_to_graph(CheckMatrix.from_strings(FOUR_QUBIT_GENERATORS))
    assert weight_distribution(graph, group.members) == (1, 0, 0, 0, 3)


def test_transformed_code_is_the_framed_group_code(code):
    conv = convert_stabilizer(code)
    n, r = code.n, code.r
    transformed = CheckMatrix(n, tuple(conv.transformed_generators()))
    framed = [c ^ conv.pauli_frame for c in conv.clique.members]
    expected = (1 << r) * code_projector(conv.graph, framed)
    assert np.allclose((1 << n) * stabilizer_projector(transformed), expected)
    back = group_to_stabilizer(conv.graph, conv.clique, conv.pauli_frame)
    assert np.allclose((1 << n) * stabilizer_projector(back), expected)


def test_group_to_stabilizer_without_frame(pentagon_group):
    cm = group_to_stabilizer(pentagon_group.graph, pentagon_group)
    assert (cm.n, cm.k) == (5, 1)
    expected = (1 << 4) * code_projector(pentagon_group.graph, pentagon_group.members)
    assert np.allclose((1 << 5) * stabilizer_projector(cm), expected)
    assert stabilizer_weight_distribution(cm) == (1, 0, 0, 0, 15, 0)


def test_group_to_stabilizer_rejects(eq5_clique, pentagon_group):
    with pytest.raises(ValidationError) as info:
        group_to_stabilizer(eq5_clique.graph, eq5_clique)
    assert info.value.validation_type == "kind"
    with pytest.raises(ValidationError) as info:
        group_to_stabilizer(pentagon_group.graph.local_complement(0), pentagon_group)
    assert info.value.validation_type == "graph"


def test_nonzero_logical_block(five_qubit_code):
    conv = convert_stabilizer(five_qubit_code, F=GF2Matrix.from_lists([[1]]))
    assert kl_verify(conv.graph, conv.clique.members, 3).accepted
    transformed = CheckMatrix(5, tuple(conv.transformed_generators()))
    framed = [c ^ conv.pauli_frame for c in conv.clique.members]
    assert np.allclose((1 << 5) * stabilizer_projector(transformed), (1 << 4) * code_projector(conv.graph, framed))
    sf = standard_form(CheckMatrix.from_strings(FOUR_QUBIT_GENERATORS))
    with pytest.raises(ValidationError):
        graph_matrix(sf, GF2Matrix.from_lists([[0, 1], [0, 0]]))


def test_fingerprint_is_lc_invariant(pentagon_group, eq5_clique):
    reference = equivalence_fingerprint(pentagon_group.graph, pentagon_group.members)
    for v in range(5):
        moved = lc_transport(pentagon_group, v)
        assert equivalence_fingerprint(moved.graph, moved.members) == reference
    moved = transport_sequence(eq5_clique, [1, 3])
    assert equivalence_fingerprint(moved.graph, moved.members) == \
        equivalence_fingerprint(eq5_clique.graph, eq5_clique.members)


def _relabel(c, perm):
    return sum(1 << perm[q] for q in bit_indices(c))


def test_equivalence_witness_is_checkable(pentagon_group):
    target = transport_sequence(pentagon_group, [0, 2])
    target = CodingClique(target.graph.permute([1, 2, 3, 4, 0]), 3,
                          tuple(_relabel(c, [1, 2, 3, 4, 0]) for c in target.members))
    witness = find_equivalence_witness(pentagon_group, target)
    assert witness.equivalent
    moved = transport_sequence(pentagon_group, witness.lc_sequence)
    assert moved.graph.permute(witness.permutation) == target.graph
    mapped = {_relabel(c, witness.permutation) ^ witness.translation for c in moved.members}
    assert mapped == set(target.members)
    assert witness.to_json()["status"] == "equivalent"


def test_equivalence_witness_rejections(l5, pentagon_group, eq5_clique):
    other = CodingClique(l5, 2, (0, 0b00011))
    assert find_equivalence_witness(pentagon_group, other).status == "inequivalent"
    with pytest.raises(ValidationError):
        find_equivalence_witness(pentagon_group, eq5_clique)


def _random_check_matrix(rng, max_n=6):
    """Graph-state generators on a random subset, mixed, re-signed and locally rotated."""
    n = rng.randint(2, max_n)
    g = Graph.random_graph(n, rng)
    chosen = rng.sample(range(n), rng.randint(1, n))
    rows = [vertex_stabilizer(g, a) for a in chosen]
    for _ in range(2 * len(rows)):
        i, j = rng.sample(range(len(rows)), 2) if len(rows) > 1 else (0, 0)
        if i != j:
            rows[i] = rows[i] * rows[j]
        if rng.random() < 0.3:
            rows[i] = -rows[i]
    for q in range(n):
        for _ in range(rng.randint(0, 2)):
            gate = "hadamard" if rng.random() < 0.5 else "s_dagger"
            rows = [getattr(row, gate)(q) for row in rows]
    return CheckMatrix(n, tuple(rows))


def test_random_stabilizer_codes_convert(rng):
    for _ in range(20):
        cm = _random_check_matrix(rng)
        sf = standard_form(cm)
        assert replay(cm, sf) == list(sf.rows)
        conv = convert_stabilizer(cm, d=1)
        transformed = CheckMatrix(cm.n, tuple(conv.transformed_generators()))
        framed = [c ^ conv.pauli_frame for c in conv.clique.members]
        expected = (1 << cm.r) * code_projector(conv.graph, framed)
        assert np.allclose((1 << cm.n) * stabilizer_projector(transformed), expected)


def test_random_codes_round_trip_through_graphs(rng):
    for _ in range(15):
        cm = _random_check_matrix(rng, max_n=8)
        conv = convert_stabilizer(cm, d=1)
        framed = [c ^ conv.pauli_frame for c in conv.clique.members]
        expected = (1 << cm.r) * code_projector(conv.graph, framed)
        back = group_to_stabilizer(conv.graph, conv.clique, conv.pauli_frame)
        assert back.k == cm.k
        assert np.allclose((1 << cm.n) * stabilizer_projector(back), expected)
        assert weight_distribution(conv.graph, conv.clique.members) == stabilizer_weight_distribution(cm)


def test_fingerprint_survives_random_local_cliffords(rng):
    for _ in range(15):
        cm = _random_check_matrix(rng, max_n=8)
        conv = convert_stabilizer(cm, d=1)
        graph, group = conv.graph, conv.clique
        moved = transport_sequence(group, [rng.randrange(cm.n) for _ in range(rng.randint(1, 4))])
        assert equivalence_fingerprint(moved.graph, moved.members) == equivalence_fingerprint(graph, group.members)
        perm = list(range(cm.n))
        rng.shuffle(perm)
        permuted = [_relabel(c, perm) for c in group.members]
        assert equivalence_fingerprint(graph.permute(perm), permuted) == equivalence_fingerprint(graph, group.members)
