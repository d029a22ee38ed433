"""Brambles, well-linked sets and path systems as checkable certificates."""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

from bramblekit.digraph import Digraph, VertexPath, is_k_strong, menger_paths_and_separator
from bramblekit.errors import CapExceeded, GuardExceeded, PreconditionError
from bramblekit.verdict import Verdict

WELL_LINKED_GUARD = 8
ORDER_BAG_GUARD = 20


def dedup_bags(bags: Iterable[Iterable[int]]) -> list[frozenset[int]]:
    """Bags as frozensets with duplicates removed, first occurrence kept."""
    seen = set()
    out = []
    for bag in bags:
        fs = frozenset(bag)
        if fs not in seen:
            seen.add(fs)
            out.append(fs)
    return out


@dataclass(frozen=True)
class Bramble:
    host: Digraph
    bags: tuple[frozenset[int], ...]

    @classmethod
    def from_bags(cls, host: Digraph, bags: Iterable[Iterable[int]]) -> "Bramble":
        return cls(host, tuple(dedup_bags(bags)))

    def verify(self) -> Verdict:
        return verify_bramble(self.host, self.bags)

    @property
    def congestion(self) -> int:
        return congestion(self.bags)

    def __len__(self):
        return len(self.bags)


def _touch(D: Digraph, X: frozenset[int], Y: frozenset[int]) -> bool:
    if X & Y:
        return True
    forward = any(v in Y for u in X for v in D.out_adj[u])
    backward = any(v in X for u in Y for v in D.out_adj[u])
    return forward and backward


def verify_bramble(D: Digraph, bags: Sequence[Iterable[int]]) -> Verdict:
    """Check strong bags, pairwise touching, and pairwise distinct bags.

    Raises ``ValueError`` for vertex indices outside ``D``.
    """
    bags = [frozenset(b) for b in bags]
    if not bags:
        return Verdict.failed("bramble has no bags")
    for i, bag in enumerate(bags):
        for v in bag:
            if not 0 <= v < D.n:
                raise ValueError(f"bag {i} contains vertex {v} outside 0..{D.n - 1}")
    first_seen = {}
    for i, bag in enumerate(bags):
        if bag in first_seen:
            return Verdict.failed(f"bags {first_seen[bag]} and {i} are identical")
        first_seen[bag] = i
    for i, bag in enumerate(bags):
        if not bag:
            return Verdict.failed(f"bag {i} is empty")
        if not D.is_strong_on(bag):
            return Verdict.failed(f"bag {i} does not induce a strongly connected subgraph")
    for i, j in itertools.combinations(range(len(bags)), 2):
        if not _touch(D, bags[i], bags[j]):
            return Verdict.failed(
                f"bags {i} and {j} are disjoint and lack arcs in both directions"
            )
    return Verdict.passed()


def congestion(bags: Iterable[Iterable[int]]) -> int:
    """Largest number of (deduplicated) bags sharing one vertex; 0 for no bags."""
    counts = Counter(v for bag in dedup_bags(bags) for v in bag)
    return max(counts.values(), default=0)


def _hitting_set(bags: list[frozenset[int]], budget: int) -> list[int] | None:
    if not bags:
        return []
    if budget == 0:
        return None
    pivot = min(bags, key=lambda b: (len(b), sorted(b)))
    for v in sorted(pivot):
        rest = [b for b in bags if v not in b]
        found = _hitting_set(rest, budget - 1)
        if found is not None:
            return [v] + found
    return None


def bramble_order_exact(bags: Sequence[Iterable[int]], size_cap: int) -> tuple[int, list[int]]:
    """Minimum hitting set of the bags by exhaustive branching.

    Returns ``(order, hitting_set)``.  Raises ``GuardExceeded`` for more than
    ``ORDER_BAG_GUARD`` distinct bags and ``CapExceeded`` when no hitting set
    of size at most ``size_cap`` exists.
    """
    family = dedup_bags(bags)
    if any(not b for b in family):
        raise ValueError("an empty bag cannot be hit")
    if len(family) > ORDER_BAG_GUARD:
        raise GuardExceeded(f"{len(family)} bags exceed the guard of {ORDER_BAG_GUARD}")
    for size in range(size_cap + 1):
        found = _hitting_set(family, size)
        if found is not None:
            order = len(found)
            c = congestion(family)
            if family and order < math.ceil(len(family) / c):
                raise AssertionError("hitting set smaller than |bags| / congestion")
            return order, sorted(found)
    raise CapExceeded(f"no hitting set of size <= {size_cap}")


def is_well_linked(D: Digraph, A: Iterable[int], guard: int = WELL_LINKED_GUARD) -> bool:
    """Every ordered disjoint (X, Y) inside A with |X| = |Y| admits an X->Y linkage of size |X|."""
    A = sorted(set(A))
    for v in A:
        if not 0 <= v < D.n:
            raise ValueError(f"vertex {v} is not in the digraph")
    if len(A) > guard:
        raise GuardExceeded(f"|A| = {len(A)} exceeds the well-linkedness guard of {guard}")
    for size in range(1, len(A) // 2 + 1):
        for X in itertools.combinations(A, size):
            rest = [v for v in A if v not in X]
            for Y in itertools.combinations(rest, size):
                if menger_paths_and_separator(D, X, Y).size < size:
                    return False
    return True


@dataclass(frozen=True)
class Linkage:
    paths: tuple[VertexPath, ...]
    source_set: frozenset[int]
    sink_set: frozenset[int]

    def verify(self, D: Digraph) -> Verdict:
        problem = _check_linkage(
            D, self.paths, self.source_set, self.sink_set, len(self.paths), "linkage"
        )
        return Verdict.failed(problem) if problem else Verdict.passed()


@dataclass(frozen=True)
class PathSystem:
    """An (a, b)-path system; spine ``i`` carries ``in_sets[i]`` before ``out_sets[i]``.

    ``linkages[(i, j)]`` runs from ``out_sets[i]`` to ``in_sets[j]``; indices
    are 0-based.
    """

    a: int
    b: int
    spine_paths: tuple[VertexPath, ...]
    in_sets: tuple[tuple[int, ...], ...]
    out_sets: tuple[tuple[int, ...], ...]
    linkages: dict[tuple[int, int], tuple[VertexPath, ...]]


def _check_linkage(D, paths, sources, sinks, size, label):
    if len(paths) != size:
        return f"{label} has {len(paths)} paths, expected {size}"
    used = set()
    for p in paths:
        if not D.is_path(p):
            return f"{label} contains a non-path {list(p)}"
        if p[0] not in sources or p[-1] not in sinks:
            return f"{label} path {list(p)} has wrong endpoints"
        if used & set(p):
            return f"{label} paths are not vertex-disjoint"
        used |= set(p)
    return None


def verify_path_system(D: Digraph, S: PathSystem, guard: int = WELL_LINKED_GUARD) -> Verdict:
    """Check every path-system invariant; well-linkedness only for sets within ``guard``."""
    warnings = []
    if len(S.spine_paths) != S.a or len(S.in_sets) != S.a or len(S.out_sets) != S.a:
        return Verdict.failed("spine/in/out counts do not match a")
    used = set()
    for i, P in enumerate(S.spine_paths):
        if not D.is_path(P):
            return Verdict.failed(f"spine {i} is not a path")
        if used & set(P):
            return Verdict.failed(f"spine {i} meets an earlier spine")
        used |= set(P)
        pos = {v: idx for idx, v in enumerate(P)}
        A_in, A_out = S.in_sets[i], S.out_sets[i]
        if len(set(A_in)) != S.b or len(set(A_out)) != S.b:
            return Verdict.failed(f"spine {i} in/out sets do not have size {S.b}")
        if any(v not in pos for v in (*A_in, *A_out)):
            return Verdict.failed(f"spine {i} in/out sets are not on the spine")
        if max(pos[v] for v in A_in) >= min(pos[v] for v in A_out):
            return Verdict.failed(f"spine {i}: an out-vertex precedes an in-vertex")
    for i in range(S.a):
        for j in range(S.a):
            if i == j:
                continue
            paths = S.linkages.get((i, j))
            if paths is None:
                return Verdict.failed(f"linkage ({i}, {j}) is missing")
            problem = _check_linkage(
                D, paths, set(S.out_sets[i]), set(S.in_sets[j]), S.b, f"linkage ({i}, {j})"
            )
            if problem:
                return Verdict.failed(problem)
    for i in range(S.a):
        for name, A in (("in", S.in_sets[i]), ("out", S.out_sets[i])):
            if len(A) > guard:
                warnings.append(f"{name}-set of spine {i} not checked for well-linkedness (size {len(A)})")
            elif not is_well_linked(D, A, guard):
                return Verdict.failed(f"{name}-set of spine {i} is not well-linked")
    return Verdict.passed(warnings)


def maximal_path(D: Digraph, start: int = 0) -> list[int]:
    """Greedy inclusion-maximal path: extend to the smallest unused out-neighbour."""
    path = [start]
    used = {start}
    while True:
        nxt = next((w for w in D.out_adj[path[-1]] if w not in used), None)
        if nxt is None:
            return path
        path.append(nxt)
        used.add(nxt)


def build_path_system(D: Digraph, k: int, check_precondition: bool = True) -> PathSystem:
    """(k, k)-path system in a 2k^2-strong digraph.

    A greedy maximal path has at least 2k^2 vertices; its first 2k^2 are cut
    into k blocks of 2k, each contributing its first k vertices as the
    in-set and last k as the out-set.  Linkages come from max flow.
    """
    if k < 1:
        raise ValueError("k must be positive")
    need = 2 * k * k
    if check_precondition and not is_k_strong(D, need):
        raise PreconditionError(f"digraph is not {need}-strong")
    path = maximal_path(D)
    if len(path) < need:
        raise PreconditionError(
            f"maximal path has {len(path)} < {need} vertices; digraph is not {need}-strong"
        )
    path = path[:need]
    spines, ins, outs = [], [], []
    for i in range(k):
        block = tuple(path[2 * k * i: 2 * k * (i + 1)])
        spines.append(block)
        ins.append(block[:k])
        outs.append(block[k:])
    linkages = {}
    for i in range(k):
        for j in range(k):
            if i == j:
                continue
            cert = menger_paths_and_separator(D, outs[i], ins[j])
            if cert.size < k:
                raise PreconditionError(
                    f"only {cert.size} disjoint paths from out-set {i} to in-set {j}; "
                    "connectivity precondition violated"
                )
            linkages[(i, j)] = cert.paths
    return PathSystem(k, k, tuple(spines), tuple(ins), tuple(outs), linkages)
