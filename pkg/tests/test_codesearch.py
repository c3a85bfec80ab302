import time

import numpy as np
import pytest

from qgraph.core.gf2 import bit_indices
from qgraph.core.graph import Graph, family
from qgraph.core.graphstate import apply_lc_unitary, basis_state, code_projector, kl_verify
from qgraph.exceptions import ValidationError, VerificationError
from qgraph.search import (CodingClique, SearchMode, as_group, build_super_graph, check_conditions,
                           find_cliques, find_coding_groups, lc_transport, purity_set,
                           transport_sequence, uncoverable_set, validate_clique)
from qgraph.search.cliques import _run_task
from qgraph.utils import labels_to_bits

EQ5_LABELS = [[], [2, 3, 5], [3, 4, 1], [4, 5, 2], [5, 1, 3], [1, 2, 4]]


@pytest.fixture(scope="module")
def l5_super_graph():
    return build_super_graph(family("loop", 5), 2)


def test_purity_sets():
    assert len(purity_set(family("loop", 5), 2)) == 0
    assert len(purity_set(family("loop", 5), 3)) == 0
    isolated = purity_set(Graph.empty_graph(3), 2)
    assert isolated.members == (0b001, 0b010, 0b100)
    assert not isolated.admits(0b001)
    assert isolated.admits(0)


def test_distance_range_checked(l5):
    with pytest.raises(ValidationError):
        purity_set(l5, 0)
    with pytest.raises(ValidationError):
        uncoverable_set(l5, 6)


def test_uncoverable_set_of_loop(l5):
    d2 = uncoverable_set(l5, 2)
    assert len(d2) == 16
    assert 0 not in d2
    assert labels_to_bits([1, 2, 3], 5) not in d2
    assert labels_to_bits([1, 2, 4, 5], 5) in d2
    assert labels_to_bits([1, 2], 5) in d2
    assert 0b11111 in d2
    assert all(bin(c).count("1") >= 2 for c in d2.members())


def test_single_edge_has_no_uncoverable_sets():
    sg = build_super_graph(family("path", 2), 2)
    assert sg.vertices == (0,)
    result = find_cliques(sg)
    assert [c.members for c in result] == [(0,)]


def test_super_graph_of_loop(l5_super_graph):
    sg = l5_super_graph
    assert sg.order == 17
    assert sg.vertices[0] == 0
    a = sg.index_of(labels_to_bits([2, 3, 5], 5))
    b = sg.index_of(labels_to_bits([3, 4, 1], 5))
    assert sg.adjacency[a] >> b & 1
    assert sg.index_of(labels_to_bits([1, 2, 3], 5)) is None


def test_max_clique_is_eq5(l5_super_graph, eq5_members):
    result = find_cliques(l5_super_graph, SearchMode("all_max"))
    assert result.complete
    assert len(result) == 1
    assert set(result[0].members) == set(eq5_members)
    assert result.stats["best_size"] == 6
    assert result.stats["translates"] == 6
    assert kl_verify(result[0].graph, result[0].members, 2).accepted


def test_max_mode_returns_one(l5_super_graph):
    result = find_cliques(l5_super_graph)
    assert len(result) == 1 and result[0].K == 6
    assert not check_conditions(result[0])


def test_no_clique_beyond_the_maximum(l5_super_graph):
    assert len(find_cliques(l5_super_graph, SearchMode("exhaustive", 7))) == 0
    assert len(find_cliques(l5_super_graph, SearchMode("at_least", 7))) == 0


def test_exhaustive_counts_are_consistent(l5_super_graph):
    sixes = find_cliques(l5_super_graph, SearchMode("exhaustive", 6))
    assert len(sixes) == 1
    fives = find_cliques(l5_super_graph, SearchMode("exhaustive", 5))
    assert all(f.K == 5 for f in fives)
    # each 5-subset of the maximum clique through the empty set is a clique
    assert len(fives) >= 5


@pytest.mark.parametrize("mode", ["max", "all_max", "exhaustive:4", "at_least:5"])
def test_parallel_search_matches_serial(l5_super_graph, mode):
    serial = find_cliques(l5_super_graph, SearchMode.parse(mode))
    parallel = find_cliques(l5_super_graph, SearchMode.parse(mode), workers=2)
    assert [c.members for c in serial] == [c.members for c in parallel]
    assert parallel.stats["workers"] == 2


def test_search_mode_parse():
    assert SearchMode.parse("at-least:12") == SearchMode("at_least", 12)
    assert SearchMode.parse("all_max") == SearchMode("all_max")
    assert str(SearchMode("exhaustive", 13)) == "exhaustive:13"
    with pytest.raises(ValidationError):
        SearchMode.parse("exhaustive")
    with pytest.raises(ValidationError):
        SearchMode("fastest")
    with pytest.raises(ValidationError):
        SearchMode("at_least", 0)


def test_condition_checks(l5, eq5_members):
    assert check_conditions(CodingClique(l5, 2, tuple(eq5_members))) == []
    without_empty = CodingClique(l5, 2, tuple(eq5_members[1:]))
    assert any("condition 0" in p for p in check_conditions(without_empty))
    coverable = CodingClique(l5, 2, (0, labels_to_bits([1, 2, 3], 5)))
    with pytest.raises(VerificationError):
        validate_clique(coverable)


def test_clique_json_round_trip(eq5_clique):
    data = eq5_clique.to_json("l5_662")
    assert data["clique"] == sorted(sorted(c) for c in EQ5_LABELS)
    assert CodingClique.from_json(data).canonical() == eq5_clique.canonical()


def test_as_group_requires_closure(eq5_clique, pentagon_group):
    with pytest.raises(ValidationError):
        as_group(eq5_clique)
    plain = CodingClique(pentagon_group.graph, 3, pentagon_group.members)
    assert as_group(plain).generators == (0b11111,)


def test_pentagon_groups(l5):
    groups = find_coding_groups(l5, 3, 1)
    assert groups
    assert any(g.members == (0, 0b11111) for g in groups)
    for group in groups:
        assert group.is_group and group.K == 2
        assert kl_verify(l5, group.members, 3).accepted
    assert [g.members for g in find_coding_groups(l5, 3, 0)] == [(0,)]
    assert find_coding_groups(l5, 3, 2) == []
    with pytest.raises(ValidationError):
        find_coding_groups(l5, 3, 6)


def test_group_limit(l5):
    assert len(find_coding_groups(l5, 2, 2, limit=1)) == 1


def test_transport_example(eq5_clique):
    moved = lc_transport(eq5_clique, 0)
    assert moved.graph == eq5_clique.graph.local_complement(0)
    assert labels_to_bits([1, 2, 3, 4, 5], 5) in moved.members
    assert labels_to_bits([2, 3, 5], 5) in moved.members
    assert check_conditions(moved) == []
    assert kl_verify(moved.graph, moved.members, 2).accepted


def test_transport_is_an_involution(eq5_clique):
    for v in range(5):
        assert lc_transport(lc_transport(eq5_clique, v), v) == eq5_clique


def test_transport_keeps_groups(pentagon_group):
    moved = transport_sequence(pentagon_group, [0, 2, 4])
    assert moved.is_group
    assert not check_conditions(moved)
    with pytest.raises(ValidationError):
        lc_transport(pentagon_group, 5)


@pytest.mark.slow
def test_loop_nine_codes():
    sg = build_super_graph(family("loop", 9), 3)
    found = find_cliques(sg, SearchMode("at_least", 12), workers=2)
    assert len(found) == 1 and found[0].K == 12
    assert kl_verify(sg.graph, found[0].members, 3).accepted
    assert len(find_cliques(sg, SearchMode("exhaustive", 13), workers=2)) == 0


def test_translates_collapse_to_one_clique(eq5_clique, eq5_members):
    for t in eq5_members:
        assert set(eq5_clique.translate(t).frame_canonical().members) == set(eq5_members)
    fives = find_cliques(build_super_graph(family("loop", 5), 2), SearchMode("exhaustive", 5))
    canonical = [c.members for c in fives]
    assert len(canonical) == len(set(canonical))
    assert all(c.frame_canonical().members == c.members for c in fives)


def test_expired_deadline_stops_queued_branches(l5_super_graph):
    adjacency = l5_super_graph.adjacency
    found, best, nodes, complete = _run_task((adjacency, "all_max", 0, [0], adjacency[0], time.monotonic() - 1))
    assert (found, nodes, complete) == ([], 0, False)


def test_parallel_search_shares_one_budget():
    sg = build_super_graph(family("loop", 10), 3)
    started = time.monotonic()
    result = find_cliques(sg, SearchMode("all_max"), time_budget=0.5, workers=2)
    assert not result.complete
    assert time.monotonic() - started < 30


def _random_clique(sg, rng):
    """A clique through the empty set, grown at random and usually not maximal."""
    chosen = [0]
    candidates = sg.adjacency[0]
    while candidates and rng.random() < 0.75:
        v = rng.choice(bit_indices(candidates))
        chosen.append(v)
        candidates &= sg.adjacency[v]
    return CodingClique(sg.graph, sg.d, tuple(sg.vertices[i] for i in chosen))


def _check_transport(clique, v):
    g = clique.graph
    moved = lc_transport(clique, v)
    assert moved.graph == g.local_complement(v)
    assert check_conditions(moved) == []
    assert kl_verify(moved.graph, moved.members, moved.d).accepted
    images = [apply_lc_unitary(basis_state(g, c), g, v).normalized() for c in clique.members]
    rotated = sum(np.outer(u, u.conj()) for u in images)
    assert np.allclose(rotated, code_projector(moved.graph, moved.members) / (1 << g.n))


def test_transport_matches_the_local_clifford(rng):
    for _ in range(12):
        g = Graph.random_graph(rng.randint(4, 6), rng)
        clique = find_cliques(build_super_graph(g, 2), SearchMode("max"))[0]
        _check_transport(clique, rng.randrange(g.n))


@pytest.mark.slow
def test_transport_on_random_codes(rng):
    for _ in range(100):
        g = Graph.random_graph(rng.randint(3, 8), rng)
        sg = build_super_graph(g, rng.choice([2, 3]))
        _check_transport(_random_clique(sg, rng), rng.randrange(g.n))
