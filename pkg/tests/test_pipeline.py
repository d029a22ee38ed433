import itertools
import random

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from bramblekit.pipeline import (
    boundary_eps,
    build_conflict_graphs,
    classify_case,
    compute_parameters,
    maximum_matching,
)

FROZEN = {
    (4, "1.001", "boundary"): (25, 5, 87897327, 1571181418158090, 18151471837127941167495850877818769),
    (4, "1.66", "0.248"): (
        25,
        5,
        85121531118,
        8196240027518821841393754280,
        1083203246518283892380200915746069713926681069749855862500230968897415402449368165923308713561427780,
    ),
}


@pytest.mark.parametrize("key", sorted(FROZEN))
def test_frozen_operating_points(key):
    k, alpha, eps = key
    p = compute_parameters(k, alpha, eps)
    assert (p.a, p.d3, p.d2, p.d1, p.b) == FROZEN[key]


@pytest.mark.parametrize("k", range(2, 11))
@pytest.mark.parametrize("alpha", ["1.001", "1.66"])
def test_chain_matches_decimal_evaluation(k, alpha):
    p = compute_parameters(k, alpha, "boundary")
    assert (p.a, p.d3, p.d2, p.d1, p.b) == oracles.parameter_chain(k, alpha)


def test_boundary_eps_meets_equality():
    with mpmath.workdps(60):
        eps = boundary_eps("1.66")
        assert abs(mpmath.mpf("1.66") * (1 - eps) - (1 + eps)) < mpmath.mpf(10) ** -50


def test_chain_inequalities_hold():
    p = compute_parameters(6, "1.66", "0.248")
    assert p.check() == []
    assert p.d1 > p.d2 > p.d3
    assert p.x * p.d + p.d - 1 <= p.b


def test_log_base_changes_the_chain():
    e = compute_parameters(8, "1.66", "0.248")
    two = compute_parameters(8, "1.66", "0.248", log_base="2")
    assert two.a > e.a and two.b > e.b


@pytest.mark.parametrize(
    "args",
    [(1, "1.66", "0.248"), (4, "1.0", "0.1"), (4, "1.66", "0.3"), (4, "1.66", "0"), (4, "1.66", "0.1", 0)],
)
def test_parameter_errors(args):
    with pytest.raises(ValueError):
        compute_parameters(*args)


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 7), st.data())
def test_maximum_matching_matches_brute_force(n, data):
    pairs = list(itertools.combinations(range(n), 2))
    edges = data.draw(st.lists(st.sampled_from(pairs), unique=True, max_size=9)) if pairs else []
    adj = {v: set() for v in range(n)}
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    M = maximum_matching(adj)
    covered = [x for e in M for x in e]
    assert len(covered) == len(set(covered))
    assert all(v in adj[u] for u, v in M)
    assert len(M) == oracles.max_matching_size(edges)


def test_conflict_graphs_threshold_on_degeneracy():
    # two linkages sharing vertices heavily versus a disjoint one
    fam = {
        0: [(0, 1, 2), (3, 4, 5)],
        1: [(0, 3), (1, 4), (2, 5)],
        2: [(10, 11), (12, 13)],
    }
    H1, H2 = build_conflict_graphs(fam, d1=2, d2=1)
    assert 1 in H2[0] and 2 not in H2[0]
    assert not H1[0]
    with pytest.raises(ValueError):
        build_conflict_graphs(fam, d1=1, d2=2)


def _random_case(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 14)
    V = list(range(n))
    Z = [v for v in V if rng.random() < rng.random()]
    pairs = list(itertools.combinations(V, 2))
    H1e = [e for e in pairs if rng.random() < rng.choice([0.1, 0.3, 0.6])]
    H2e = [e for e in pairs if rng.random() < rng.choice([0.1, 0.3, 0.6])] + H1e
    H1 = {v: set() for v in V}
    H2 = {v: set() for v in V}
    for u, v in H1e:
        H1[u].add(v)
        H1[v].add(u)
    for u, v in H2e:
        H2[u].add(v)
        H2[v].add(u)
    return V, Z, H1, H2


@pytest.mark.parametrize("seed", range(100))
def test_classify_case_finds_a_large_witness(seed):
    V, Z, H1, H2 = _random_case(seed)
    report = classify_case(V, Z, H1, H2)
    assert report.size >= 0.6 * len(V)
    VM1 = {x for e in report.M1 for x in e}
    VM2 = {x for e in report.M2 for x in e}
    assert not VM1 & set(Z)
    assert not VM1 & VM2
    assert all(not (u in Z and v in Z) for u, v in report.M2)


def test_classify_case_rejects_z_outside_v():
    with pytest.raises(ValueError):
        classify_case([0, 1], [2], {}, {})
