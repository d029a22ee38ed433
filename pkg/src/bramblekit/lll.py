"""Intersection graphs, degeneracy, and rainbow independent sets by resampling."""

from __future__ import annotations

import heapq
import itertools
import math
import os
from dataclasses import dataclass
from typing import Iterable, Sequence

import mpmath
import numpy as np

from bramblekit.errors import CapExceeded
from bramblekit.verdict import Verdict

PRECISION_ENV = "BRAMBLEKIT_PRECISION"


def working_dps() -> int:
    """Decimal digits for extended-precision checks (``BRAMBLEKIT_PRECISION``, default 50)."""
    return int(os.environ.get(PRECISION_ENV, "50"))


@dataclass(frozen=True)
class IntersectionGraph:
    """Members of one or more set families, adjacent iff they share an element.

    ``family_of[i]`` is the index of the family member ``i`` came from.
    """

    members: tuple[frozenset[int], ...]
    family_of: tuple[int, ...]
    adj: tuple[frozenset[int], ...]

    @property
    def n(self) -> int:
        return len(self.members)

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in sorted(self.adj[u]) if u < v]


def build_intersection_graph(families: Sequence[Iterable[Iterable[int]]]) -> IntersectionGraph:
    members, family_of = [], []
    for f, family in enumerate(families):
        for item in family:
            members.append(frozenset(item))
            family_of.append(f)
    holders: dict[int, list[int]] = {}
    for i, m in enumerate(members):
        for v in m:
            holders.setdefault(v, []).append(i)
    adj = [set() for _ in members]
    for group in holders.values():
        for i, j in itertools.combinations(group, 2):
            adj[i].add(j)
            adj[j].add(i)
    return IntersectionGraph(tuple(members), tuple(family_of), tuple(frozenset(a) for a in adj))


def degeneracy(adj: Sequence[Iterable[int]]) -> tuple[int, list[int]]:
    """Matula-Beck peeling: remove a minimum-degree vertex (smallest index on ties).

    ``adj[v]`` lists the neighbours of ``v``.  Returns the degeneracy and the
    elimination order.
    """
    n = len(adj)
    nbrs = [set(a) for a in adj]
    deg = [len(a) for a in nbrs]
    heap = [(deg[v], v) for v in range(n)]
    heapq.heapify(heap)
    removed = [False] * n
    order = []
    d = 0
    while heap:
        dv, v = heapq.heappop(heap)
        if removed[v] or dv != deg[v]:
            continue
        removed[v] = True
        order.append(v)
        d = max(d, dv)
        for w in nbrs[v]:
            if not removed[w]:
                deg[w] -= 1
                heapq.heappush(heap, (deg[w], w))
    return d, order


def check_elimination_order(adj: Sequence[Iterable[int]], order: Sequence[int], d: int) -> bool:
    """Every vertex has at most ``d`` neighbours later in ``order``."""
    pos = {v: i for i, v in enumerate(order)}
    if sorted(pos) != list(range(len(adj))):
        return False
    return all(sum(1 for w in adj[v] if pos[w] > pos[v]) <= d for v in range(len(adj)))


@dataclass(frozen=True)
class LllCheck:
    passed: bool
    slack: mpmath.mpf


def check_poly_lll_condition(t, b, r, eps) -> LllCheck:
    """t^(1-eps) >= (e * 4b(r-1))^(1+eps), evaluated with mpmath.

    ``slack`` is the ratio of the two sides (``inf`` when the right side is 0).
    """
    if not 0 < eps < 1:
        raise ValueError("eps must lie in (0, 1)")
    if r < 2:
        raise ValueError("need r >= 2")
    if b < 0:
        raise ValueError("b must be non-negative")
    if t < 1:
        raise ValueError("t must be at least 1")
    with mpmath.workdps(working_dps()):
        eps = mpmath.mpf(eps)
        lhs = mpmath.power(mpmath.mpf(t), 1 - eps)
        rhs = mpmath.power(mpmath.e * 4 * mpmath.mpf(b) * (r - 1), 1 + eps)
        slack = mpmath.inf if rhs == 0 else lhs / rhs
        return LllCheck(bool(lhs >= rhs), +slack)


def minimal_passing_t(b, r, eps) -> int:
    """Smallest integer t meeting the polynomial LLL condition."""
    t = 1
    while not check_poly_lll_condition(t, b, r, eps).passed:
        t *= 2
    lo, hi = t // 2, t
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if check_poly_lll_condition(mid, b, r, eps).passed:
            hi = mid
        else:
            lo = mid
    return hi if t > 1 else 1


class PartitionedConflictGraph:
    """Graph on ``0..n-1`` whose vertices are split into ``r`` parts of equal size ``t``.

    ``b`` is the declared degeneracy bound for every union of two parts.
    """

    def __init__(self, n: int, edges: Iterable[tuple[int, int]], parts: Sequence[Sequence[int]], b: float):
        self.n = n
        self.parts = tuple(tuple(p) for p in parts)
        self.b = b
        adj = [set() for _ in range(n)]
        for u, v in edges:
            if u == v:
                raise ValueError("self-loops are not allowed")
            adj[u].add(v)
            adj[v].add(u)
        self.adj = tuple(frozenset(a) for a in adj)
        self.part_of = [-1] * n
        for i, part in enumerate(self.parts):
            for v in part:
                if self.part_of[v] != -1:
                    raise ValueError(f"vertex {v} appears in two parts")
                self.part_of[v] = i
        if -1 in self.part_of:
            raise ValueError("parts do not cover every vertex")
        sizes = {len(p) for p in self.parts}
        if len(sizes) != 1:
            raise ValueError("parts must all have the same size")

    @property
    def r(self) -> int:
        return len(self.parts)

    @property
    def t(self) -> int:
        return len(self.parts[0])

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in sorted(self.adj[u]) if u < v]

    def cross_edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u, v in self.edges() if self.part_of[u] != self.part_of[v]]

    def resampling_arrays(self):
        """``(eu, ev, parts, part_of)`` as numpy arrays, built once per graph."""
        cached = getattr(self, "_arrays", None)
        if cached is None:
            cross = self.cross_edges()
            cached = (
                np.array([u for u, _ in cross], dtype=np.int64),
                np.array([v for _, v in cross], dtype=np.int64),
                np.array(self.parts, dtype=np.int64),
                np.array(self.part_of, dtype=np.int64),
            )
            self._arrays = cached
        return cached

    def cross_degree(self, v: int) -> int:
        return sum(1 for w in self.adj[v] if self.part_of[w] != self.part_of[v])

    def pair_degeneracy(self, i: int, j: int) -> int:
        verts = list(self.parts[i]) + list(self.parts[j])
        index = {v: x for x, v in enumerate(verts)}
        sub = [[index[w] for w in self.adj[v] if w in index] for v in verts]
        return degeneracy(sub)[0]

    def validate(self) -> Verdict:
        for i, j in itertools.combinations(range(self.r), 2):
            d = self.pair_degeneracy(i, j)
            if d > self.b:
                return Verdict.failed(f"parts {i} and {j} induce a {d}-degenerate graph > b={self.b}")
        return Verdict.passed()


@dataclass(frozen=True)
class RainbowResult:
    selection: tuple[int, ...]
    resamples: int


def is_rainbow_independent(P: PartitionedConflictGraph, selection: Sequence[int]) -> bool:
    if len(selection) != P.r:
        return False
    if any(P.part_of[v] != i for i, v in enumerate(selection)):
        return False
    chosen = set(selection)
    return all(not (P.adj[v] & chosen) for v in selection)


def rainbow_independent_set(
    P: PartitionedConflictGraph,
    seed: int,
    resample_cap: int | None = None,
    eps: float | None = None,
) -> RainbowResult:
    """One vertex per part, pairwise non-adjacent, by Moser-Tardos resampling.

    Each part draws a uniform vertex from ``numpy.random.default_rng(seed)``;
    while some conflict edge has both ends selected, the lowest-indexed such
    edge has its two parts redrawn.  When ``eps`` is given the polynomial LLL
    condition is checked first.  Raises ``CapExceeded`` after
    ``resample_cap`` (default ``100 * r * t``) resamplings.
    """
    r, t = P.r, P.t
    if eps is not None:
        check = check_poly_lll_condition(t, P.b, r, eps)
        if not check.passed:
            raise ValueError(f"LLL condition fails (slack {mpmath.nstr(check.slack, 6)})")
    cap = 100 * r * t if resample_cap is None else resample_cap
    eu, ev, parts, part_of = P.resampling_arrays()
    rng = np.random.default_rng(seed)
    choice = rng.integers(0, t, size=r)
    selected = np.zeros(P.n, dtype=bool)
    selected[parts[np.arange(r), choice]] = True
    resamples = 0
    while True:
        bad = np.flatnonzero(selected[eu] & selected[ev])
        if bad.size == 0:
            break
        if resamples >= cap:
            raise CapExceeded(f"no independent transversal after {cap} resamplings")
        e = bad[0]
        for part in (part_of[eu[e]], part_of[ev[e]]):
            selected[parts[part, choice[part]]] = False
            choice[part] = rng.integers(0, t)
            selected[parts[part, choice[part]]] = True
        resamples += 1
    selection = tuple(int(parts[i, choice[i]]) for i in range(r))
    if not is_rainbow_independent(P, selection):
        raise AssertionError("resampler returned a dependent selection")
    return RainbowResult(selection, resamples)


def degree_prune(P: PartitionedConflictGraph) -> PartitionedConflictGraph:
    """Keep the ceil(t/2) vertices of smallest cross degree per part (ties by index).

    Returns the induced graph, relabelled to ``0..n'-1`` in part order; the
    attribute ``kept`` maps new labels back to the old ones.
    """
    keep_count = math.ceil(P.t / 2)
    bound = 4 * P.t * (P.r - 1) * P.b
    kept_parts = []
    for part in P.parts:
        ranked = sorted(part, key=lambda v: (P.cross_degree(v), v))
        kept = ranked[:keep_count]
        for v in kept:
            if P.cross_degree(v) > bound:
                raise AssertionError(f"kept vertex {v} exceeds the degree bound {bound}")
        kept_parts.append(sorted(kept))
    old = [v for part in kept_parts for v in part]
    new_of = {v: i for i, v in enumerate(old)}
    edges = [(new_of[u], new_of[v]) for u, v in P.edges() if u in new_of and v in new_of]
    parts = []
    pos = 0
    for part in kept_parts:
        parts.append(list(range(pos, pos + len(part))))
        pos += len(part)
    pruned = PartitionedConflictGraph(len(old), edges, parts, P.b)
    pruned.kept = tuple(old)
    return pruned
