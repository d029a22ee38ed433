import random
import time

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from bramblekit.certificates import (
    Bramble,
    PathSystem,
    bramble_order_exact,
    build_path_system,
    congestion,
    is_well_linked,
    maximal_path,
    verify_bramble,
    verify_path_system,
)
from bramblekit.digraph import Digraph
from bramblekit.errors import CapExceeded, GuardExceeded, PreconditionError
from bramblekit.generators import gen_complete, gen_cycle, gen_random_digraph


def _random_bags(rng, n, count):
    bags = []
    for _ in range(count):
        size = rng.randint(1, min(3, n))
        bags.append(tuple(sorted(rng.sample(range(n), size))))
    return bags


@pytest.mark.parametrize("seed", range(120))
def test_verify_bramble_matches_naive_check(seed):
    rng = random.Random(seed)
    n = rng.randint(2, 6)
    D = gen_random_digraph(n, rng.choice([0.5, 0.8, 1.0]), seed)
    bags = _random_bags(rng, n, rng.randint(1, 5))
    assert bool(verify_bramble(D, bags)) == oracles.is_bramble(D.n, D.edges, bags)


def test_complete_digraph_singletons_form_a_bramble():
    D = gen_complete(5)
    bags = [(v,) for v in range(5)]
    assert verify_bramble(D, bags)
    assert congestion(bags) == 1


def test_violating_pair_is_named():
    D = Digraph(4, [(0, 1), (1, 0), (2, 3), (3, 2), (1, 2)])
    verdict = verify_bramble(D, [(0, 1), (2, 3)])
    assert not verdict
    assert "0" in verdict.message and "1" in verdict.message


def test_non_strong_and_empty_bags_rejected():
    D = gen_cycle(4)
    assert not verify_bramble(D, [(0, 1)])
    assert not verify_bramble(D, [()])
    assert not verify_bramble(D, [])


def test_duplicate_bags_flagged():
    D = gen_complete(3)
    assert not verify_bramble(D, [(0, 1), (1, 0)])


def test_out_of_range_bag_raises():
    with pytest.raises(ValueError):
        verify_bramble(gen_complete(3), [(0, 7)])


def test_bramble_wrapper_deduplicates():
    B = Bramble.from_bags(gen_complete(3), [(0, 1), (1, 0), (2,)])
    assert len(B) == 2 and B.verify() and B.congestion == 1


@settings(max_examples=100, deadline=None)
@given(st.lists(st.frozensets(st.integers(0, 7), min_size=1, max_size=3), min_size=1, max_size=8))
def test_order_matches_enumeration(bags):
    order, hitting = bramble_order_exact(bags, 8)
    assert order == oracles.hitting_number(bags)
    assert len(hitting) == order
    assert all(set(b) & set(hitting) for b in bags)


def test_order_caps_and_guards():
    bags = [(i,) for i in range(5)]
    with pytest.raises(CapExceeded):
        bramble_order_exact(bags, 3)
    with pytest.raises(GuardExceeded):
        bramble_order_exact([(i,) for i in range(30)], 30)


@pytest.mark.parametrize("seed", range(25))
def test_well_linked_matches_networkx(seed):
    rng = random.Random(seed)
    n = rng.randint(3, 7)
    D = gen_random_digraph(n, rng.choice([0.3, 0.5, 0.8]), seed)
    A = rng.sample(range(n), rng.randint(2, min(n, 5)))
    assert is_well_linked(D, A) == oracles.is_well_linked(D.n, D.edges, A)


def test_well_linked_guard():
    with pytest.raises(GuardExceeded):
        is_well_linked(gen_complete(12), range(10))


def test_maximal_path_is_inclusion_maximal():
    D = gen_random_digraph(10, 0.3, 4)
    P = maximal_path(D)
    assert D.is_path(P)
    assert all(w in P for w in D.out_adj[P[-1]])


@pytest.mark.parametrize("k", [1, 2, 3])
def test_path_system_on_complete_digraphs(k):
    n = 2 * k * k + 1
    D = gen_complete(n)
    start = time.perf_counter()
    S = build_path_system(D, k)
    assert time.perf_counter() - start < 1.0
    assert S.a == k and S.b == k
    assert all(len(p) == 2 * k for p in S.spine_paths)
    assert len(S.linkages) == k * k - k
    assert verify_path_system(D, S)


def test_path_system_precondition():
    with pytest.raises(PreconditionError):
        build_path_system(gen_cycle(20), 2)


def test_corrupted_path_system_rejected():
    D = gen_complete(9)
    S = build_path_system(D, 2)
    broken = PathSystem(S.a, S.b, S.spine_paths, S.in_sets, S.out_sets, {(0, 1): S.linkages[(0, 1)]})
    assert not verify_path_system(D, broken)
    swapped = PathSystem(S.a, S.b, S.spine_paths, S.out_sets, S.in_sets, S.linkages)
    assert not verify_path_system(D, swapped)
