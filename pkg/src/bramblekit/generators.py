"""Seeded instance generators.  Same arguments and seed give identical output."""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass

from bramblekit.certificates import congestion, verify_bramble
from bramblekit.congestion import size_threshold
from bramblekit.digraph import Digraph, is_k_strong
from bramblekit.errors import BramblekitError
from bramblekit.lll import PartitionedConflictGraph


class GenerationFailed(BramblekitError):
    pass


def gen_complete(n: int) -> Digraph:
    return Digraph(n, [(u, v) for u in range(n) for v in range(n) if u != v])


def gen_cycle(n: int) -> Digraph:
    return Digraph(n, [(i, (i + 1) % n) for i in range(n)])


def gen_random_digraph(n: int, p: float, seed: int) -> Digraph:
    rng = random.Random(seed)
    return Digraph(n, [(u, v) for u in range(n) for v in range(n) if u != v and rng.random() < p])


@dataclass(frozen=True)
class PlantedInstance:
    digraph: Digraph
    bags: tuple[tuple[int, ...], ...]
    sources: tuple[int, ...]
    sinks: tuple[int, ...]
    budget: int
    seed: int


def gen_planted_bramble_instance(
    k: int,
    c: int,
    bag_count: int,
    seed: int,
    n: int | None = None,
    retry_cap: int = 200,
    allow_small: bool = False,
) -> PlantedInstance:
    """k-strong digraph with a planted bramble of exactly ``bag_count`` bags and congestion ``c``.

    Bags are directed cycles on 2 or 3 vertices; one "hot" vertex lies in the
    first ``c`` bags, every other vertex in at most ``c``.  Disjoint bags are
    joined by a pair of opposite arcs, terminals are planted (the hot vertex
    becomes s_1 for odd seeds), and random arcs are added until the digraph
    is k-strong.
    """
    if k < 1 or c < 1:
        raise ValueError("k and c must be positive")
    if bag_count < size_threshold(k) and not allow_small:
        raise ValueError(f"bag_count must be at least {size_threshold(k)} for k={k}")
    if bag_count < c:
        raise ValueError("need at least c bags to reach congestion c")
    rng = random.Random(seed)
    sizes = [rng.choice((2, 3)) for _ in range(bag_count)]
    if n is None:
        n = max(bag_count, math.ceil(1.25 * sum(sizes) / c)) + 2 * k + 4
    if n < 2 * k + 3:
        raise ValueError("too few vertices")
    if sum(sizes) > c * n:
        raise ValueError("bags cannot fit under congestion c on n vertices")

    hot = rng.randrange(n)
    load = [0] * n
    bags: list[tuple[int, ...]] = []
    seen = set()
    for idx, size in enumerate(sizes):
        for _ in range(retry_cap):
            members = [hot] if idx < c else []
            pool = [v for v in range(n) if v != hot and load[v] < c]
            if len(pool) < size - len(members):
                raise GenerationFailed("ran out of vertices below the congestion cap")
            members += rng.sample(pool, size - len(members))
            if frozenset(members) not in seen:
                break
        else:
            raise GenerationFailed("could not draw a fresh bag")
        rng.shuffle(members)
        seen.add(frozenset(members))
        bags.append(tuple(members))
        for v in members:
            load[v] += 1

    arcs = set()
    for bag in bags:
        for i, v in enumerate(bag):
            arcs.add((v, bag[(i + 1) % len(bag)]))
    for B1, B2 in itertools.combinations(bags, 2):
        if set(B1) & set(B2):
            continue
        x, y = rng.choice(B1), rng.choice(B2)
        arcs.add((x, y))
        arcs.add((y, x))

    others = [v for v in range(n) if v != hot]
    picks = rng.sample(others, 2 * k)
    if seed % 2 == 1:
        picks[0] = hot
    sources, sinks = tuple(picks[:k]), tuple(picks[k:])

    D = Digraph(n, arcs)
    for _ in range(retry_cap):
        if is_k_strong(D, k):
            break
        for _ in range(n):
            u, v = rng.randrange(n), rng.randrange(n)
            if u != v:
                arcs.add((u, v))
        D = Digraph(n, arcs)
    else:
        raise GenerationFailed(f"digraph did not become {k}-strong")

    verdict = verify_bramble(D, bags)
    if not verdict or congestion(bags) != c:
        raise GenerationFailed(f"planted bramble invalid: {verdict.message}")
    return PlantedInstance(D, tuple(tuple(sorted(b)) for b in bags), sources, sinks, c, seed)


def gen_conflict_graph(r: int, t: int, b: int, seed: int) -> PartitionedConflictGraph:
    """r parts of size t; every two parts carry a random b-degenerate bipartite graph.

    Within each pair the vertices are shuffled and every vertex joins ``b``
    random earlier vertices of the other part, so peeling in reverse
    order certifies degeneracy at most ``b``.
    """
    rng = random.Random(seed)
    parts = [list(range(i * t, (i + 1) * t)) for i in range(r)]
    edges = set()
    for i, j in itertools.combinations(range(r), 2):
        order = parts[i] + parts[j]
        rng.shuffle(order)
        earlier = ([], [])
        for v in order:
            side = 0 if v // t == i else 1
            other = earlier[1 - side]
            for w in rng.sample(other, min(b, len(other))):
                edges.add((min(v, w), max(v, w)))
            earlier[side].append(v)
    return PartitionedConflictGraph(r * t, sorted(edges), parts, b)
