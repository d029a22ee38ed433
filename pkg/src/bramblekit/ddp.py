"""Congestion-bounded disjoint paths: instances, verification, exact search, dichotomy."""

from __future__ import annotations

import sys
from collections import Counter, deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from bramblekit import _kernels
from bramblekit.digraph import Digraph, VertexPath, menger_paths_and_separator
from bramblekit.errors import CapExceeded
from bramblekit.verdict import Verdict

DEFAULT_NODE_CAP = 200_000


@dataclass(frozen=True)
class DdpInstance:
    host: Digraph
    sources: tuple[int, ...]
    sinks: tuple[int, ...]
    budget: int

    def __post_init__(self):
        object.__setattr__(self, "sources", tuple(int(s) for s in self.sources))
        object.__setattr__(self, "sinks", tuple(int(t) for t in self.sinks))
        k = len(self.sources)
        if k < 1 or len(self.sinks) != k:
            raise ValueError("need k >= 1 sources and the same number of sinks")
        if len(set(self.sources)) != k or len(set(self.sinks)) != k:
            raise ValueError("terminals must be distinct")
        if set(self.sources) & set(self.sinks):
            raise ValueError("sources and sinks must be disjoint")
        if self.budget < 1:
            raise ValueError("congestion budget must be at least 1")
        for v in self.sources + self.sinks:
            if not 0 <= v < self.host.n:
                raise ValueError(f"terminal {v} is not a vertex")

    @property
    def k(self) -> int:
        return len(self.sources)


@dataclass(frozen=True)
class DdpSolution:
    paths: tuple[VertexPath, ...]
    load_map: dict[int, int] = field(compare=False)

    @classmethod
    def from_paths(cls, paths: Iterable[Sequence[int]]) -> "DdpSolution":
        paths = tuple(tuple(p) for p in paths)
        return cls(paths, load_of(paths))

    @property
    def max_load(self) -> int:
        return max(self.load_map.values(), default=0)


class Infeasible(Exception):
    """Raised by ``route_via_bramble`` when no solution exists; carries evidence."""

    def __init__(self, message, evidence=None):
        super().__init__(message)
        self.evidence = evidence


def load_of(paths: Iterable[Sequence[int]]) -> dict[int, int]:
    return dict(Counter(v for p in paths for v in set(p)))


def verify_solution(inst: DdpInstance, paths: Sequence[Sequence[int]]) -> Verdict:
    """Endpoints, path validity and per-vertex load <= budget."""
    if len(paths) != inst.k:
        return Verdict.failed(f"expected {inst.k} paths, got {len(paths)}")
    for i, p in enumerate(paths):
        if not inst.host.is_path(p):
            return Verdict.failed(f"path {i} is not a path of the digraph")
        if p[0] != inst.sources[i] or p[-1] != inst.sinks[i]:
            return Verdict.failed(f"path {i} does not run from s_{i} to t_{i}")
    loads = load_of(paths)
    worst = max(loads, key=lambda v: (loads[v], -v))
    if loads[worst] > inst.budget:
        return Verdict.failed(f"vertex {worst} lies on {loads[worst]} > {inst.budget} paths")
    return Verdict.passed()


def _shortest_path(D: Digraph, s: int, t: int) -> list[int] | None:
    parent = {s: None}
    queue = deque([s])
    while queue:
        x = queue.popleft()
        if x == t:
            path = [t]
            while parent[path[-1]] is not None:
                path.append(parent[path[-1]])
            return path[::-1]
        for y in D.out_adj[x]:
            if y not in parent:
                parent[y] = x
                queue.append(y)
    return None


@dataclass(frozen=True)
class SolveResult:
    """``status`` is one of ``"solved"``, ``"infeasible"``, ``"cap"``."""

    status: str
    solution: DdpSolution | None
    nodes: int


def solve_exact(inst: DdpInstance, node_cap: int = DEFAULT_NODE_CAP) -> SolveResult:
    """Complete backtracking search; ``c >= k`` reduces to per-pair reachability."""
    D = inst.host
    if inst.budget >= inst.k:
        paths = [_shortest_path(D, s, t) for s, t in zip(inst.sources, inst.sinks)]
        if any(p is None for p in paths):
            return SolveResult("infeasible", None, 0)
        return SolveResult("solved", DdpSolution.from_paths(paths), 0)
    out_ptr, out_idx, in_ptr, in_idx = D.csr()
    if _kernels.BACKEND == "python":
        sys.setrecursionlimit(max(sys.getrecursionlimit(), 4 * inst.k * D.n + 200))
    status, paths, nodes = _kernels.ddp_search(
        D.n, out_ptr, out_idx, in_ptr, in_idx,
        list(inst.sources), list(inst.sinks), inst.budget, node_cap,
    )
    if status == _kernels.FOUND:
        return SolveResult("solved", DdpSolution.from_paths(paths), nodes)
    if status == _kernels.INFEASIBLE:
        return SolveResult("infeasible", None, nodes)
    return SolveResult("cap", None, nodes)


def solve_or_raise(inst: DdpInstance, node_cap: int = DEFAULT_NODE_CAP) -> DdpSolution | None:
    """Solution, or None when infeasible; raises ``CapExceeded`` at the cap."""
    result = solve_exact(inst, node_cap)
    if result.status == "cap":
        raise CapExceeded(f"search stopped after {result.nodes} nodes")
    return result.solution


@dataclass(frozen=True)
class SeparatorEvidence:
    """Fewer than k disjoint paths join the terminals to the bag union.

    ``side`` is ``"sources"`` (separator blocks S -> bags) or ``"sinks"``
    (separator blocks bags -> T).
    """

    side: str
    separator: frozenset[int]
    paths: tuple[VertexPath, ...]
    bag_union: frozenset[int]


def dichotomy_check(
    D: Digraph, bags: Iterable[Iterable[int]], S: Sequence[int], T: Sequence[int], k: int | None = None
) -> SeparatorEvidence | None:
    """None when k disjoint paths exist S -> bags and bags -> T; else the blocking separator."""
    k = len(S) if k is None else k
    union = frozenset(v for bag in bags for v in bag)
    if not union:
        raise ValueError("bags are empty")
    forward = menger_paths_and_separator(D, S, union)
    if forward.size < k:
        return SeparatorEvidence("sources", forward.separator, forward.paths, union)
    backward = menger_paths_and_separator(D, union, T)
    if backward.size < k:
        return SeparatorEvidence("sinks", backward.separator, backward.paths, union)
    return None


def verify_evidence(D: Digraph, S: Sequence[int], T: Sequence[int], ev: SeparatorEvidence, k: int) -> Verdict:
    """Deleting the separator must kill all reachability on the blocked side."""
    if len(ev.separator) > k - 1:
        return Verdict.failed(f"separator has {len(ev.separator)} > k-1 vertices")
    if ev.side == "sources":
        reach = D.reachable(S, ev.separator)
        hit = reach & ev.bag_union
    elif ev.side == "sinks":
        reach = D.reachable(T, ev.separator, reverse=True)
        hit = reach & ev.bag_union
    else:
        return Verdict.failed(f"unknown side {ev.side!r}")
    if hit:
        return Verdict.failed(f"bag vertex {min(hit)} still reachable after deleting the separator")
    return Verdict.passed()
