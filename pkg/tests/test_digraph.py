import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from bramblekit.digraph import (
    Digraph,
    is_k_strong,
    local_connectivity,
    menger_paths_and_separator,
    strong_components,
    strong_connectivity,
)
from bramblekit.generators import gen_complete, gen_cycle, gen_random_digraph


@st.composite
def digraphs(draw, max_n=7):
    n = draw(st.integers(1, max_n))
    pairs = [(u, v) for u in range(n) for v in range(n) if u != v]
    edges = draw(st.lists(st.sampled_from(pairs), unique=True) if pairs else st.just([]))
    return Digraph(n, edges)


def test_construction_drops_loops_and_duplicates():
    D = Digraph(3, [(0, 1), (0, 1), (1, 1), (1, 2)])
    assert D.edges == ((0, 1), (1, 2)) or list(D.edges) == [(0, 1), (1, 2)]
    assert D.m == 2
    assert D.has_edge(0, 1) and not D.has_edge(1, 0)


def test_out_of_range_vertex_rejected():
    with pytest.raises(ValueError):
        Digraph(2, [(0, 2)])


def test_is_path():
    D = gen_cycle(4)
    assert D.is_path([0, 1, 2])
    assert D.is_path([3])
    assert not D.is_path([0, 2])
    assert not D.is_path([0, 1, 2, 3, 0])
    assert not D.is_path([])


@settings(max_examples=150, deadline=None)
@given(digraphs())
def test_strong_components_match_reachability(D):
    assert strong_components(D) == oracles.scc_partition(D.n, D.edges)


def test_strong_components_on_two_cycles_joined_one_way():
    D = Digraph(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (2, 3)])
    assert strong_components(D) == [[0, 1, 2], [3, 4, 5]]


@settings(max_examples=150, deadline=None)
@given(digraphs(), st.data())
def test_menger_duality(D, data):
    A = data.draw(st.sets(st.integers(0, D.n - 1), min_size=1))
    B = data.draw(st.sets(st.integers(0, D.n - 1), min_size=1))
    cert = menger_paths_and_separator(D, A, B)
    assert len(cert.paths) == cert.size
    used = set()
    for p in cert.paths:
        assert D.is_path(p) and p[0] in A and p[-1] in B
        assert not used & set(p)
        used |= set(p)
    assert not D.reachable(A, cert.separator) & B
    assert cert.size == oracles.min_separator_size(D.n, D.edges, A, B)


def test_menger_overlap_gives_trivial_path():
    D = gen_cycle(5)
    cert = menger_paths_and_separator(D, {0, 2}, {1, 2})
    assert cert.paths == ((0, 1), (2,))
    assert cert.size == 2 and not D.reachable({0, 2}, cert.separator) & {1, 2}


def test_menger_blocked_vertices_are_never_in_the_separator():
    D = gen_complete(5)
    cert = menger_paths_and_separator(D, {0}, {4}, blocked={1, 2})
    assert cert.size == 1
    assert not cert.separator & {1, 2}


def test_menger_rejects_empty_sets():
    with pytest.raises(ValueError):
        menger_paths_and_separator(gen_cycle(3), [], [1])


def test_local_connectivity_complete_and_cycle():
    K = gen_complete(6)
    D = Digraph(6, [e for e in K.edges if e != (0, 3)])
    assert local_connectivity(D, 0, 3) == 4
    with pytest.raises(ValueError):
        local_connectivity(K, 0, 3)
    assert local_connectivity(gen_cycle(6), 0, 3) == 1


@pytest.mark.parametrize("n", [2, 3, 5, 9])
def test_complete_digraph_connectivity(n):
    assert strong_connectivity(gen_complete(n)) == n - 1
    assert is_k_strong(gen_complete(n), n - 1)
    assert not is_k_strong(gen_complete(n), n)


def test_cycle_is_one_strong():
    assert strong_connectivity(gen_cycle(5)) == 1


def test_non_strong_digraph_has_connectivity_zero():
    assert strong_connectivity(Digraph(3, [(0, 1), (1, 2)])) == 0


def test_connectivity_needs_two_vertices():
    with pytest.raises(ValueError):
        strong_connectivity(Digraph(1))


@pytest.mark.parametrize("seed", range(40))
def test_strong_connectivity_matches_brute_force(seed):
    rng = random.Random(seed)
    n = rng.randint(2, 7)
    D = gen_random_digraph(n, rng.choice([0.4, 0.6, 0.8]), seed)
    expected = oracles.strong_connectivity(D.n, D.edges, max_size=3)
    got = strong_connectivity(D)
    if expected is None:
        assert got > 3
    else:
        assert got == expected
    for k in range(0, 5):
        if expected is not None:
            assert is_k_strong(D, k) == (n >= k + 1 and expected >= k)
