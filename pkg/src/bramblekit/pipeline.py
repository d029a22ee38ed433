"""Parameter chain, conflict graphs over linkage families, and the three-case split.

The constants ``c_a`` and ``c_t`` stand for unspecified absolute constants of
external lemmas; they default to 1.0 and are not derived from anything here.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Hashable, Iterable, Mapping, Sequence

import mpmath
import networkx as nx

from bramblekit.lll import build_intersection_graph, degeneracy, working_dps

BOUNDARY_TOLERANCE = mpmath.mpf("1e-12")
MAX_DIGITS = 200_000
BOWTIE_DENOMINATOR = 2**9 * 5


def _mpf(x):
    return mpmath.mpf(str(x)) if isinstance(x, float) else mpmath.mpf(x)


def boundary_eps(alpha) -> mpmath.mpf:
    """The eps with alpha(1 - eps) = 1 + eps."""
    alpha = _mpf(alpha)
    return (alpha - 1) / (alpha + 1)


@dataclass(frozen=True)
class PipelineParameters:
    k: int
    alpha: mpmath.mpf
    eps: mpmath.mpf
    c_a: mpmath.mpf
    c_t: mpmath.mpf
    log_base: str
    a: int
    d3: int
    d2: int
    d1: int
    b: int
    x: mpmath.mpf
    d: mpmath.mpf

    def check(self) -> list[str]:
        """Failed chain inequalities (empty when all hold)."""
        problems = []
        with mpmath.workdps(_digits_for(self.b)):
            if not self.d1 > self.d2 > self.d3:
                problems.append("d1 > d2 > d3 fails")
            if self.x * self.d + (self.d - 1) > self.b:
                problems.append("x*d + (d - 1) <= b fails")
            if self.alpha * (1 - self.eps) < 1 + self.eps - BOUNDARY_TOLERANCE:
                problems.append("alpha(1 - eps) >= 1 + eps fails")
        return problems


def _digits_for(value) -> int:
    return len(str(abs(int(value)))) + working_dps()


def _log(x, base):
    return mpmath.log(x) if base == "e" else mpmath.log(x, _mpf(base))


def _chain(k, alpha, c_a, c_t, base):
    e = mpmath.e
    a = int(mpmath.ceil(c_a * k**2 * mpmath.sqrt(1 + _log(k, base))))
    d3 = int(mpmath.ceil(c_t * k * mpmath.sqrt(_log(k, base))))
    d2 = int(mpmath.ceil(BOWTIE_DENOMINATOR * mpmath.power(e * 4 * a**2 * d3, alpha)))
    d1 = int(mpmath.ceil(BOWTIE_DENOMINATOR * mpmath.power(e * 4 * a**2 * d2, alpha)))
    b = int(mpmath.ceil(mpmath.power(e * 4 * a**2 * mpmath.mpf(d1) ** 2, alpha)))
    x = mpmath.power(e * 4 * a**2 * d1, alpha) + 1
    d = mpmath.power(d1, alpha) / BOWTIE_DENOMINATOR
    return a, d3, d2, d1, b, x, d


def compute_parameters(k: int, alpha, eps, c_a=1.0, c_t=1.0, log_base="e") -> PipelineParameters:
    """Evaluate the parameter chain a, d3, d2, d1, b (and x, d) in extended precision.

    ``eps`` may be ``"boundary"`` for the largest admissible value.  The
    working precision grows with the magnitude of ``b`` so every ceiling is
    exact; ``OverflowError`` is raised beyond ``MAX_DIGITS`` digits.
    """
    if k < 2:
        raise ValueError("k must be at least 2")
    log_base = "e" if log_base in (None, "e", "E") else str(log_base)
    with mpmath.workdps(working_dps()):
        alpha_m = _mpf(alpha)
        eps_m = boundary_eps(alpha_m) if eps == "boundary" else _mpf(eps)
        if alpha_m <= 1:
            raise ValueError("alpha must exceed 1")
        if not 0 < eps_m < 1:
            raise ValueError("eps must lie in (0, 1)")
        if alpha_m * (1 - eps_m) < 1 + eps_m - BOUNDARY_TOLERANCE:
            raise ValueError("alpha(1 - eps) >= 1 + eps is violated")
        if log_base != "e" and _mpf(log_base) <= 1:
            raise ValueError("log base must exceed 1")
        c_a_m, c_t_m = _mpf(c_a), _mpf(c_t)
        if c_a_m <= 0 or c_t_m <= 0:
            raise ValueError("constants must be positive")
        # rough pass to size the precision, then an exact pass
        with mpmath.workdps(30):
            rough_b = _chain(k, alpha_m, c_a_m, c_t_m, log_base)[4]
    digits = _digits_for(rough_b) + 10
    if digits > MAX_DIGITS:
        raise OverflowError(f"parameters need about {digits} digits of precision")
    with mpmath.workdps(digits):
        alpha_m = _mpf(alpha)
        eps_m = boundary_eps(alpha_m) if eps == "boundary" else _mpf(eps)
        a, d3, d2, d1, b, x, d = _chain(k, alpha_m, _mpf(c_a), _mpf(c_t), log_base)
    params = PipelineParameters(k, alpha_m, eps_m, _mpf(c_a), _mpf(c_t), log_base, a, d3, d2, d1, b, x, d)
    problems = params.check()
    if problems:
        raise AssertionError("; ".join(problems))
    return params


def build_conflict_graphs(
    families: Mapping[Hashable, Sequence[Sequence[int]]], d1: int, d2: int
) -> tuple[dict, dict]:
    """H1, H2 on the family labels: an edge wherever Int(L ∪ L') is not d_i-degenerate."""
    if d1 < d2:
        raise ValueError("need d1 >= d2")
    labels = sorted(families)
    H1 = {v: set() for v in labels}
    H2 = {v: set() for v in labels}
    for p, q in itertools.combinations(labels, 2):
        G = build_intersection_graph([families[p], families[q]])
        dg = degeneracy(G.adj)[0]
        if dg > d1:
            H1[p].add(q)
            H1[q].add(p)
        if dg > d2:
            H2[p].add(q)
            H2[q].add(p)
    return H1, H2


def maximum_matching(H: Mapping[Hashable, Iterable[Hashable]]) -> list[tuple]:
    """Maximum-cardinality matching of an undirected graph given as adjacency mapping."""
    G = nx.Graph()
    G.add_nodes_from(sorted(H))
    G.add_edges_from(sorted((u, v) if u < v else (v, u) for u in H for v in H[u] if u != v))
    matching = nx.max_weight_matching(G, maxcardinality=True)
    return sorted((u, v) if u < v else (v, u) for u, v in matching)


@dataclass(frozen=True)
class CaseReport:
    V: tuple
    Z: frozenset
    M1: tuple
    M2: tuple
    case: int
    witness: frozenset

    @property
    def size(self) -> int:
        return len(self.witness)


def _covered(matching):
    return {x for e in matching for x in e}


def classify_case(V: Iterable, Z: Iterable, H1: Mapping, H2: Mapping) -> CaseReport:
    """Matchings M1, M2 and the first of the three cases with a witness of size >= 0.6|V|."""
    V = tuple(sorted(V))
    Vset = set(V)
    Z = frozenset(Z)
    if not Z <= Vset:
        raise ValueError("Z must be a subset of V")
    H1_minus_Z = {u: {w for w in H1.get(u, ()) if w not in Z} for u in V if u not in Z}
    M1 = maximum_matching(H1_minus_Z)
    VM1 = _covered(M1)
    H2_rest = {
        u: {w for w in H2.get(u, ()) if w not in VM1 and not (u in Z and w in Z)}
        for u in V
        if u not in VM1
    }
    M2 = maximum_matching(H2_rest)
    VM2 = _covered(M2)
    need = 0.6 * len(V)
    candidates = (
        (1, Vset - (VM1 | Z)),
        (2, VM1 | VM2 | Z),
        (3, Vset - VM2),
    )
    for case, witness in candidates:
        if len(witness) >= need:
            return CaseReport(V, Z, tuple(M1), tuple(M2), case, frozenset(witness))
    raise AssertionError("none of the three cases holds")
