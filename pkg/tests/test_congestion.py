import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bramblekit.certificates import congestion
from bramblekit.congestion import (
    _shortcut,
    build_reduced_instance,
    campos_threshold,
    check_reduced_instance,
    occurrence_counts,
    route_via_bramble,
    size_threshold,
    translate_solution,
)
from bramblekit.ddp import DdpInstance, solve_exact, verify_solution
from bramblekit.errors import PreconditionError
from bramblekit.generators import gen_complete, gen_cycle, gen_planted_bramble_instance


def test_thresholds():
    assert [size_threshold(k) for k in (1, 2, 3, 4)] == [4, 18, 40, 70]
    assert campos_threshold(2, 2) == 2 * 2 * (4 - 2 + 2) + 2
    assert campos_threshold(1, 5) == 4


def test_five_fold_vertex_gets_three_class_members():
    D = gen_complete(7)
    bags = [(0, 1), (0, 2), (0, 3), (0, 4), (0, 5)]
    R = build_reduced_instance(D, bags, (1,), (6,))
    members = R.copy_classes[0]
    assert len(members) == 3 and members[0] == 0
    # occurrences 1,2 stay on 0; 3,4 go to the first copy; 5 to the second
    holders = [next(iter(b & set(members))) for b in R.bags_prime]
    assert holders == [members[0], members[0], members[1], members[1], members[2]]
    assert check_reduced_instance(R, bags)
    for x in members:
        assert all(R.d_prime.has_edge(x, y) for y in members if y != x)


def test_terminal_gadgets_attach_to_copy_classes():
    D = gen_complete(6)
    bags = [(0, 1), (0, 2), (0, 3)]
    R = build_reduced_instance(D, bags, (0,), (5,))
    sp = R.sources_prime[0]
    assert set(R.d_prime.out_adj[sp]) == set(R.copy_classes[0])
    assert not R.d_prime.in_adj[sp]
    tp = R.sinks_prime[0]
    assert set(R.d_prime.in_adj[tp]) == {5}
    assert R.back_map[sp] == 0 and R.back_map[tp] == 5


def test_copies_inherit_neighbourhoods():
    D = gen_complete(5)
    bags = [(0, 1), (0, 2), (0, 3)]
    R = build_reduced_instance(D, bags, (1,), (4,))
    copy = R.copy_classes[0][1]
    assert set(D.out_adj[0]) <= set(R.d_prime.out_adj[copy])
    assert set(D.in_adj[0]) <= set(R.d_prime.in_adj[copy])


@settings(max_examples=60, deadline=None)
@given(st.lists(st.frozensets(st.integers(0, 7), min_size=1, max_size=3), min_size=1, max_size=12, unique=True))
def test_reduction_invariants_on_complete_digraphs(bags):
    D = gen_complete(10)
    R = build_reduced_instance(D, bags, (8,), (9,))
    assert check_reduced_instance(R, bags)
    assert congestion(R.bags_prime) <= 2
    for v, count in occurrence_counts(bags).items():
        if count >= 3:
            assert len(R.copy_classes[v]) == math.ceil(count / 2)


def test_shortcut_removes_repeated_class_visits():
    class_of = {5: 0, 6: 0}
    assert _shortcut([1, 5, 2, 6, 3], class_of) == [1, 5, 3]
    assert _shortcut([1, 5, 6, 3], class_of) == [1, 5, 3]
    assert _shortcut([1, 2, 3], class_of) == [1, 2, 3]


@pytest.mark.parametrize("k,c,seed", [(2, 3, 0), (2, 4, 1), (2, 5, 2), (3, 3, 3), (3, 4, 4)])
def test_route_on_planted_instances(k, c, seed):
    P = gen_planted_bramble_instance(k, c, size_threshold(k), seed)
    result = route_via_bramble(P.digraph, P.bags, P.sources, P.sinks, c)
    assert result.budget == 2 * math.ceil(c / 2)
    assert result.solution.max_load <= result.budget
    R = result.reduced
    sol = solve_exact(R.instance()).solution
    paths = translate_solution(R, sol.paths)
    for i, p in enumerate(paths):
        assert p[0] == P.sources[i] and p[-1] == P.sinks[i]


def test_translate_rejects_non_solution():
    P = gen_planted_bramble_instance(2, 3, 18, 0)
    R = build_reduced_instance(P.digraph, P.bags, P.sources, P.sinks)
    with pytest.raises(ValueError):
        translate_solution(R, [(R.sources_prime[0],)] * 2)


def test_preconditions_are_named():
    P = gen_planted_bramble_instance(2, 3, 18, 0)
    with pytest.raises(PreconditionError, match="at least 18"):
        route_via_bramble(P.digraph, P.bags[:17], P.sources, P.sinks, 3)
    with pytest.raises(PreconditionError, match="congestion"):
        route_via_bramble(P.digraph, P.bags, P.sources, P.sinks, 2)
    with pytest.raises(PreconditionError, match="strong"):
        route_via_bramble(gen_cycle(P.digraph.n), P.bags, P.sources, P.sinks, 3, check_bramble=False)


def test_skipping_checks_still_verifies_output():
    P = gen_planted_bramble_instance(2, 4, 18, 5)
    result = route_via_bramble(
        P.digraph, P.bags, P.sources, P.sinks, 4, check_strong=False, check_bramble=False, check_size=False
    )
    assert verify_solution(DdpInstance(P.digraph, P.sources, P.sinks, 4), result.solution.paths)
