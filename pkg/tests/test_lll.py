import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from bramblekit.errors import CapExceeded
from bramblekit.generators import gen_conflict_graph
from bramblekit.lll import (
    PartitionedConflictGraph,
    build_intersection_graph,
    check_elimination_order,
    check_poly_lll_condition,
    degeneracy,
    degree_prune,
    is_rainbow_independent,
    minimal_passing_t,
    rainbow_independent_set,
)


@st.composite
def graphs(draw, max_n=9):
    n = draw(st.integers(1, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    edges = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return n, edges


def _adj(n, edges):
    adj = [set() for _ in range(n)]
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    return adj


@settings(max_examples=150, deadline=None)
@given(graphs())
def test_degeneracy_matches_subgraph_enumeration(g):
    n, edges = g
    d, order = degeneracy(_adj(n, edges))
    assert d == oracles.degeneracy(n, edges)
    assert check_elimination_order(_adj(n, edges), order, d)
    if d > 0:
        assert not check_elimination_order(_adj(n, edges), order, d - 1)


@pytest.mark.parametrize("t", range(1, 9))
def test_complete_graph_degeneracy(t):
    assert degeneracy(_adj(t, itertools.combinations(range(t), 2)))[0] == t - 1


def test_degeneracy_ties_break_by_index():
    # path 0-1-2: both ends have degree 1, the smaller index goes first
    assert degeneracy(_adj(3, [(0, 1), (1, 2)]))[1] == [0, 1, 2]


def test_elimination_order_must_be_a_permutation():
    assert not check_elimination_order(_adj(3, []), [0, 1], 0)


def test_intersection_graph():
    G = build_intersection_graph([[(0, 1, 2), (3, 4)], [(2, 5), (6,)]])
    assert G.family_of == (0, 0, 1, 1)
    assert G.edges() == [(0, 2)]


@settings(max_examples=60, deadline=None)
@given(st.lists(st.lists(st.frozensets(st.integers(0, 9), min_size=1, max_size=4), max_size=4), max_size=3))
def test_intersection_edges_are_exactly_shared_vertices(families):
    G = build_intersection_graph(families)
    flat = [m for fam in families for m in fam]
    expected = [(i, j) for i, j in itertools.combinations(range(len(flat)), 2) if flat[i] & flat[j]]
    assert G.edges() == expected


@pytest.mark.parametrize(
    "b,r,eps,expected",
    [(1, 2, 0.2, 36), (1, 6, 0.1, 133), (1, 4, 0.3, 647), (2, 3, 0.25, 538)],
)
def test_minimal_passing_t_frozen(b, r, eps, expected):
    t = minimal_passing_t(b, r, eps)
    assert t == expected
    lhs, rhs = oracles.lll_lhs_rhs(t, b, r, eps)
    assert lhs >= rhs
    lhs, rhs = oracles.lll_lhs_rhs(t - 1, b, r, eps)
    assert lhs < rhs


def test_lll_condition_slack_and_errors():
    check = check_poly_lll_condition(36, 1, 2, 0.2)
    assert check.passed and check.slack > 1
    assert not check_poly_lll_condition(35, 1, 2, 0.2).passed
    assert check_poly_lll_condition(1, 0, 2, 0.5).passed
    for bad in [(1, 1, 2, 0), (1, 1, 1, 0.5), (0, 1, 2, 0.5), (1, -1, 2, 0.5)]:
        with pytest.raises(ValueError):
            check_poly_lll_condition(*bad)


def test_partitioned_graph_validation():
    with pytest.raises(ValueError):
        PartitionedConflictGraph(4, [], [[0, 1], [1, 2]], 1)
    with pytest.raises(ValueError):
        PartitionedConflictGraph(4, [], [[0, 1], [2]], 1)
    with pytest.raises(ValueError):
        PartitionedConflictGraph(2, [(0, 0)], [[0], [1]], 1)


@pytest.mark.parametrize("r,t,b", [(2, 40, 1), (3, 60, 1), (4, 30, 2)])
def test_generated_conflict_graphs_respect_b(r, t, b):
    P = gen_conflict_graph(r, t, b, seed=r * t)
    assert P.validate()
    assert P.r == r and P.t == t


@pytest.mark.parametrize("seed", range(60))
def test_tiny_feasibility_agrees_with_enumeration(seed):
    rng = random.Random(seed)
    r, t = rng.randint(2, 4), rng.randint(1, 4)
    parts = [list(range(i * t, (i + 1) * t)) for i in range(r)]
    cross = [(u, v) for i, j in itertools.combinations(range(r), 2) for u in parts[i] for v in parts[j]]
    edges = [e for e in cross if rng.random() < rng.choice([0.3, 0.6, 0.9])]
    P = PartitionedConflictGraph(r * t, edges, parts, b=t)
    feasible = oracles.has_rainbow_independent(parts, edges)
    try:
        result = rainbow_independent_set(P, seed, resample_cap=20_000)
    except CapExceeded:
        assert not feasible
    else:
        assert feasible and is_rainbow_independent(P, result.selection)


def test_resampling_is_deterministic_per_seed():
    P = gen_conflict_graph(3, 120, 1, seed=1)
    a = rainbow_independent_set(P, 7, eps=0.2)
    b = rainbow_independent_set(P, 7, eps=0.2)
    assert a == b


def test_condition_failure_rejected_when_eps_given():
    P = gen_conflict_graph(3, 5, 1, seed=1)
    with pytest.raises(ValueError, match="LLL"):
        rainbow_independent_set(P, 0, eps=0.2)


def test_degree_prune():
    P = gen_conflict_graph(3, 21, 2, seed=3)
    Q = degree_prune(P)
    assert Q.t == 11 and Q.r == 3
    assert all(Q.cross_degree(v) <= 4 * P.t * (P.r - 1) * P.b for v in range(Q.n))
    for new, old in enumerate(Q.kept):
        assert P.part_of[old] == Q.part_of[new]
    assert all(P.adj[Q.kept[u]] & {Q.kept[w] for w in Q.adj[u]} == {Q.kept[w] for w in Q.adj[u]} for u in range(Q.n))
