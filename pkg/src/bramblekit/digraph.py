"""Simple digraphs, strong components, and vertex-capacitated flow (Menger)."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

from bramblekit import _kernels

VertexPath = tuple[int, ...]


class Digraph:
    """Loop-free simple digraph on vertices ``0..n-1``.

    Loops are dropped and parallel arcs collapsed on construction.  Instances
    are immutable; adjacency tuples are sorted by vertex index.
    """

    __slots__ = ("n", "edges", "out_adj", "in_adj", "_edge_set")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        arcs = set()
        for u, v in edges:
            u, v = int(u), int(v)
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"arc ({u}, {v}) has an endpoint outside 0..{n - 1}")
            if u != v:
                arcs.add((u, v))
        out_adj: list[list[int]] = [[] for _ in range(n)]
        in_adj: list[list[int]] = [[] for _ in range(n)]
        for u, v in sorted(arcs):
            out_adj[u].append(v)
            in_adj[v].append(u)
        self.n = n
        self.edges = tuple(sorted(arcs))
        self.out_adj = tuple(tuple(a) for a in out_adj)
        self.in_adj = tuple(tuple(sorted(a)) for a in in_adj)
        self._edge_set = frozenset(arcs)

    def has_edge(self, u: int, v: int) -> bool:
        return (u, v) in self._edge_set

    @property
    def m(self) -> int:
        return len(self.edges)

    def __eq__(self, other):
        return isinstance(other, Digraph) and self.n == other.n and self.edges == other.edges

    def __hash__(self):
        return hash((self.n, self.edges))

    def __repr__(self):
        return f"Digraph(n={self.n}, m={self.m})"

    def csr(self) -> tuple[list[int], list[int], list[int], list[int]]:
        """Out- and in-adjacency in CSR form: ``(out_ptr, out_idx, in_ptr, in_idx)``."""
        out_ptr, out_idx, in_ptr, in_idx = [0], [], [0], []
        for v in range(self.n):
            out_idx.extend(self.out_adj[v])
            out_ptr.append(len(out_idx))
            in_idx.extend(self.in_adj[v])
            in_ptr.append(len(in_idx))
        return out_ptr, out_idx, in_ptr, in_idx

    def reachable(self, sources: Iterable[int], blocked: Iterable[int] = (), reverse: bool = False) -> set[int]:
        """Vertices reachable from ``sources`` avoiding ``blocked`` (blocked sources are skipped)."""
        blocked = set(blocked)
        adj = self.in_adj if reverse else self.out_adj
        seen = {s for s in sources if s not in blocked}
        queue = deque(seen)
        while queue:
            x = queue.popleft()
            for y in adj[x]:
                if y not in seen and y not in blocked:
                    seen.add(y)
                    queue.append(y)
        return seen

    def is_path(self, path: Sequence[int]) -> bool:
        """True iff ``path`` is a non-empty sequence of distinct vertices joined by arcs."""
        if not path or len(set(path)) != len(path):
            return False
        if any(not 0 <= v < self.n for v in path):
            return False
        return all(self.has_edge(u, v) for u, v in zip(path, path[1:]))

    def is_strong_on(self, vertices: Iterable[int]) -> bool:
        """Whether the subgraph induced by ``vertices`` is strongly connected (non-empty)."""
        vs = set(vertices)
        if not vs:
            return False
        outside = set(range(self.n)) - vs
        root = next(iter(vs))
        return (
            self.reachable([root], outside) == vs
            and self.reachable([root], outside, reverse=True) == vs
        )


@dataclass(frozen=True)
class SeparatorCertificate:
    """Maximum A->B linkage together with a minimum (A,B)-separator of equal size."""

    paths: tuple[VertexPath, ...]
    separator: frozenset[int]
    source_set: frozenset[int]
    sink_set: frozenset[int]

    @property
    def size(self) -> int:
        return len(self.paths)


def strong_components(D: Digraph) -> list[list[int]]:
    """Strong components via iterative Tarjan; each component sorted, list ordered by min vertex."""
    index = [-1] * D.n
    low = [0] * D.n
    on_stack = [False] * D.n
    stack: list[int] = []
    comps: list[list[int]] = []
    counter = 0
    for root in range(D.n):
        if index[root] >= 0:
            continue
        work = [(root, 0)]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            v, i = work[-1]
            nbrs = D.out_adj[v]
            if i < len(nbrs):
                work[-1] = (v, i + 1)
                w = nbrs[i]
                if index[w] < 0:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, 0))
                elif on_stack[w]:
                    low[v] = min(low[v], index[w])
                continue
            work.pop()
            if work:
                u = work[-1][0]
                low[u] = min(low[u], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                comps.append(sorted(comp))
    comps.sort(key=lambda c: c[0])
    return comps


def menger_paths_and_separator(
    D: Digraph,
    A: Iterable[int],
    B: Iterable[int],
    blocked: Iterable[int] = (),
) -> SeparatorCertificate:
    """Maximum set of vertex-disjoint A->B paths and a minimum (A,B)-separator.

    Each vertex ``v`` is split into ``v_in -> v_out`` of capacity one; arcs,
    source and sink hookups are uncapacitated, so the min cut consists of
    vertices only.  A vertex in both ``A`` and ``B`` yields a one-vertex path.
    Paths are trimmed to start at their last ``A`` vertex and end at their
    first ``B`` vertex afterwards.  ``blocked`` vertices are deleted first.
    """
    A = frozenset(A)
    B = frozenset(B)
    if not A or not B:
        raise ValueError("source and sink sets must be non-empty")
    for v in A | B:
        if not 0 <= v < D.n:
            raise ValueError(f"vertex {v} is not in the digraph")
    blocked = frozenset(blocked)
    n = D.n
    src, snk = 2 * n, 2 * n + 1
    big = n + 1
    tails, heads, caps = [], [], []
    for v in range(n):
        tails.append(2 * v)
        heads.append(2 * v + 1)
        caps.append(0 if v in blocked else 1)
    edge_arcs = []
    for u, v in D.edges:
        if u in blocked or v in blocked:
            continue
        edge_arcs.append((u, v))
        tails.append(2 * u + 1)
        heads.append(2 * v)
        caps.append(big)
    for a in sorted(A - blocked):
        tails.append(src)
        heads.append(2 * a)
        caps.append(big)
    for b in sorted(B - blocked):
        tails.append(2 * b + 1)
        heads.append(snk)
        caps.append(big)

    value, flows, reach = _kernels.max_flow(2 * n + 2, tails, heads, caps, src, snk)

    succ = {}
    for idx, (u, v) in enumerate(edge_arcs):
        if flows[n + idx] > 0:
            succ[u] = v
    # a vertex carrying flow without a flow predecessor was entered from the source
    entered = set(succ.values())
    starts = sorted(v for v in range(n) if flows[v] > 0 and v not in entered)
    paths = []
    for a in starts:
        path = [a]
        while path[-1] in succ:
            path.append(succ[path[-1]])
        paths.append(_trim(path, A, B))
    separator = frozenset(
        v for v in range(n) if reach[2 * v] and not reach[2 * v + 1] and v not in blocked
    )
    if len(paths) != value or len(separator) != value:
        raise AssertionError("flow decomposition does not match the flow value")
    paths.sort()
    return SeparatorCertificate(tuple(paths), separator, A, B)


def _trim(path, A, B):
    start = max(i for i, v in enumerate(path) if v in A)
    path = path[start:]
    end = next(i for i, v in enumerate(path) if v in B)
    return tuple(path[: end + 1])


def local_connectivity(D: Digraph, x: int, y: int, limit: int = -1) -> int:
    """Maximum number of internally disjoint x->y paths, for x != y with no arc x->y."""
    if D.has_edge(x, y):
        raise ValueError("local connectivity is unbounded across an arc")
    n = D.n
    tails, heads, caps = [], [], []
    for v in range(n):
        if v != x and v != y:
            tails.append(2 * v)
            heads.append(2 * v + 1)
            caps.append(1)
    for u, v in D.edges:
        tails.append(2 * u + 1)
        heads.append(2 * v)
        caps.append(n + 1)
    value, _, _ = _kernels.max_flow(2 * n, tails, heads, caps, 2 * x + 1, 2 * y, limit)
    return value


def _pair_cover_min(D: Digraph, bound: int, early_exit: bool) -> int:
    # A minimum separator S misses one of any |S|+1 vertices; some y is then
    # cut off from (or cannot reach) that vertex, so scanning x over the first
    # bound+1 vertices and all y finds kappa whenever kappa <= bound.
    best = bound
    i = 0
    while i <= best and i < D.n:
        x = i
        for y in range(D.n):
            if y == x:
                continue
            for a, b in ((x, y), (y, x)):
                if not D.has_edge(a, b):
                    best = min(best, local_connectivity(D, a, b, limit=best))
                    if early_exit and best < bound:
                        return best
        i += 1
    return best


def strong_connectivity(D: Digraph) -> int:
    """Largest k such that D is k-strong; ``n - 1`` for complete digraphs."""
    if D.n <= 1:
        raise ValueError("strong connectivity needs at least two vertices")
    return _pair_cover_min(D, D.n - 1, early_exit=False)


def is_k_strong(D: Digraph, k: int) -> bool:
    if k < 0:
        raise ValueError("k must be non-negative")
    if D.n < k + 1:
        return False
    if k == 0:
        return True
    return _pair_cover_min(D, k, early_exit=True) >= k
