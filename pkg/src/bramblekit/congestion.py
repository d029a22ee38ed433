"""Reduce a congestion-c bramble instance to congestion 2 and map solutions back.

Every vertex ``v`` lying in ``oc(v) >= 3`` bags gets ``ceil(oc(v)/2) - 1``
copies (same in- and out-neighbours as ``v`` at the time of copying); the
bags containing ``v`` are split among ``v`` and its copies two at a time, and
``v`` with its copies is closed into a bidirectional clique.  Fresh terminals
``s'_i``/``t'_i`` hang off the copy classes of ``s_i``/``t_i``.  A congestion-2
routing of the new instance maps back to a routing of the original with
per-vertex load at most ``2 * ceil(c/2)``.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

from bramblekit.certificates import congestion, dedup_bags, verify_bramble
from bramblekit.ddp import (
    DEFAULT_NODE_CAP,
    DdpInstance,
    DdpSolution,
    Infeasible,
    dichotomy_check,
    solve_exact,
    verify_solution,
)
from bramblekit.digraph import Digraph, is_k_strong
from bramblekit.errors import CapExceeded, PreconditionError
from bramblekit.verdict import Verdict


def size_threshold(k: int) -> int:
    """Bramble size needed to route k pairs: 4k^2 + 2(k - 1)."""
    return 4 * k * k + 2 * (k - 1)


def campos_threshold(k: int, c: int) -> int:
    """Bramble size g(k, c) = 2k(ck - c + 2) + c(k - 1) of the congestion-c routing result."""
    return 2 * k * (c * k - c + 2) + c * (k - 1)


def occurrence_counts(bags: Iterable[Iterable[int]]) -> dict[int, int]:
    return dict(Counter(v for bag in bags for v in set(bag)))


@dataclass(frozen=True)
class ReducedInstance:
    d_prime: Digraph
    bags_prime: tuple[frozenset[int], ...]
    copy_classes: dict[int, tuple[int, ...]]
    sources_prime: tuple[int, ...]
    sinks_prime: tuple[int, ...]
    back_map: tuple[int, ...]
    original_n: int

    def instance(self) -> DdpInstance:
        return DdpInstance(self.d_prime, self.sources_prime, self.sinks_prime, 2)

    def class_of(self) -> dict[int, int]:
        """D' vertex -> original vertex, restricted to copied vertices and their copies."""
        return {u: v for v, members in self.copy_classes.items() for u in members}


def build_reduced_instance(
    D: Digraph, bags: Iterable[Iterable[int]], S: Sequence[int], T: Sequence[int]
) -> ReducedInstance:
    bags = dedup_bags(bags)
    S, T = tuple(S), tuple(T)
    if len(S) != len(T):
        raise ValueError("S and T must have the same size")
    if set(S) & set(T) or len(set(S)) != len(S) or len(set(T)) != len(T):
        raise ValueError("S and T must be disjoint sets of distinct vertices")
    for i, bag in enumerate(bags):
        for v in bag:
            if not 0 <= v < D.n:
                raise ValueError(f"bag {i} references unknown vertex {v}")

    out_adj = [set(a) for a in D.out_adj]
    in_adj = [set(a) for a in D.in_adj]
    back_map = list(range(D.n))
    new_bags = [set(b) for b in bags]
    containing: dict[int, list[int]] = {}
    for idx, bag in enumerate(bags):
        for v in bag:
            containing.setdefault(v, []).append(idx)

    def add_vertex(original):
        out_adj.append(set())
        in_adj.append(set())
        back_map.append(original)
        return len(back_map) - 1

    copy_classes = {}
    for v in sorted(containing):
        occ = containing[v]
        if len(occ) < 3:
            continue
        ell = math.ceil(len(occ) / 2)
        members = [v]
        for _ in range(ell - 1):
            u = add_vertex(v)
            for w in out_adj[v]:
                out_adj[u].add(w)
                in_adj[w].add(u)
            for w in in_adj[v]:
                in_adj[u].add(w)
                out_adj[w].add(u)
            members.append(u)
        # bag occurrences 2i-1 and 2i (1-based) go to the i-th class member
        for pos, bag_idx in enumerate(occ):
            holder = members[pos // 2]
            new_bags[bag_idx].discard(v)
            new_bags[bag_idx].add(holder)
        for x in members:
            for y in members:
                if x != y:
                    out_adj[x].add(y)
                    in_adj[y].add(x)
        copy_classes[v] = tuple(members)

    sources_prime, sinks_prime = [], []
    for s in S:
        sp = add_vertex(s)
        for x in copy_classes.get(s, (s,)):
            out_adj[sp].add(x)
            in_adj[x].add(sp)
        sources_prime.append(sp)
    for t in T:
        tp = add_vertex(t)
        for x in copy_classes.get(t, (t,)):
            out_adj[x].add(tp)
            in_adj[tp].add(x)
        sinks_prime.append(tp)

    d_prime = Digraph(len(back_map), [(u, w) for u in range(len(back_map)) for w in out_adj[u]])
    return ReducedInstance(
        d_prime,
        tuple(frozenset(b) for b in new_bags),
        copy_classes,
        tuple(sources_prime),
        tuple(sinks_prime),
        tuple(back_map),
        D.n,
    )


def check_reduced_instance(R: ReducedInstance, bags: Iterable[Iterable[int]]) -> Verdict:
    """Check the structural guarantees of the reduction against the original bags."""
    bags = dedup_bags(bags)
    if len(R.bags_prime) != len(bags):
        return Verdict.failed("bag count changed")
    if congestion(R.bags_prime) > 2:
        return Verdict.failed(f"reduced congestion is {congestion(R.bags_prime)} > 2")
    oc = occurrence_counts(bags)
    for v, count in oc.items():
        members = R.copy_classes.get(v)
        if count >= 3:
            if members is None or len(members) != math.ceil(count / 2):
                return Verdict.failed(f"copy class of {v} has the wrong size")
            for x in members:
                for y in members:
                    if x != y and not R.d_prime.has_edge(x, y):
                        return Verdict.failed(f"copy class of {v} is not a bidirectional clique")
        elif members is not None:
            return Verdict.failed(f"vertex {v} with oc={count} was copied")
    for orig, new in zip(bags, R.bags_prime):
        if {R.back_map[u] for u in new} != set(orig):
            return Verdict.failed("a reduced bag does not map onto its original")
    terminals = set(R.sources_prime) | set(R.sinks_prime)
    for i, bag in enumerate(R.bags_prime):
        if bag & terminals:
            return Verdict.failed(f"reduced bag {i} contains a terminal gadget vertex")
    for sp in R.sources_prime:
        if R.d_prime.in_adj[sp] or not R.d_prime.out_adj[sp]:
            return Verdict.failed("source gadget must have arcs out and none in")
    for tp in R.sinks_prime:
        if R.d_prime.out_adj[tp] or not R.d_prime.in_adj[tp]:
            return Verdict.failed("sink gadget must have arcs in and none out")
    return verify_bramble(R.d_prime, R.bags_prime)


def _shortcut(path: list[int], class_of: dict[int, int]) -> list[int]:
    # keep the first visit to each copy class and jump past its last visit
    changed = True
    while changed:
        changed = False
        first = {}
        for pos, u in enumerate(path):
            c = class_of.get(u)
            if c is None:
                continue
            if c in first:
                last = max(q for q, w in enumerate(path) if class_of.get(w) == c)
                path = path[: first[c] + 1] + path[last + 1:]
                changed = True
                break
            first[c] = pos
    return path


def translate_solution(R: ReducedInstance, paths_prime: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    """Map a congestion-2 solution of the reduced instance to paths s_i -> t_i of D."""
    verdict = verify_solution(R.instance(), paths_prime)
    if not verdict:
        raise ValueError(f"input is not a congestion-2 solution: {verdict.message}")
    class_of = R.class_of()
    out = []
    for p in paths_prime:
        short = _shortcut(list(p), class_of)
        for u, w in zip(short, short[1:]):
            if not R.d_prime.has_edge(u, w):
                raise AssertionError("shortcut produced a missing arc")
        out.append(tuple(R.back_map[u] for u in short[1:-1]))
    return out


@dataclass(frozen=True)
class RouteResult:
    solution: DdpSolution
    reduced: ReducedInstance
    budget: int
    nodes: int


def route_via_bramble(
    D: Digraph,
    bags: Iterable[Iterable[int]],
    S: Sequence[int],
    T: Sequence[int],
    c: int,
    node_cap: int = DEFAULT_NODE_CAP,
    check_strong: bool = True,
    check_bramble: bool = True,
    check_size: bool = True,
) -> RouteResult:
    """Route k pairs with load <= 2*ceil(c/2) through the congestion-2 reduction.

    Raises ``PreconditionError`` naming the failed hypothesis, ``Infeasible``
    (with separator evidence when the dichotomy fires) and ``CapExceeded``.
    """
    bags = dedup_bags(bags)
    k = len(S)
    if k != len(T) or k < 1:
        raise PreconditionError("need |S| = |T| >= 1")
    if c < 1:
        raise PreconditionError("congestion must be at least 1")
    if check_size and len(bags) < size_threshold(k):
        raise PreconditionError(
            f"bramble has {len(bags)} bags; at least {size_threshold(k)} needed for k={k}"
        )
    if check_bramble:
        verdict = verify_bramble(D, bags)
        if not verdict:
            raise PreconditionError(f"not a bramble: {verdict.message}")
        if congestion(bags) > c:
            raise PreconditionError(f"bramble congestion {congestion(bags)} exceeds c={c}")
    if check_strong and not is_k_strong(D, k):
        raise PreconditionError(f"digraph is not {k}-strong")

    R = build_reduced_instance(D, bags, S, T)
    result = solve_exact(R.instance(), node_cap)
    if result.status == "cap":
        raise CapExceeded(f"congestion-2 search stopped after {result.nodes} nodes")
    if result.status == "infeasible":
        evidence = dichotomy_check(R.d_prime, R.bags_prime, R.sources_prime, R.sinks_prime, k)
        raise Infeasible("reduced congestion-2 instance has no solution", evidence)
    paths = translate_solution(R, result.solution.paths)
    budget = 2 * math.ceil(c / 2)
    verdict = verify_solution(DdpInstance(D, tuple(S), tuple(T), budget), paths)
    if not verdict:
        raise AssertionError(f"translated solution failed verification: {verdict.message}")
    return RouteResult(DdpSolution.from_paths(paths), R, budget, result.nodes)
