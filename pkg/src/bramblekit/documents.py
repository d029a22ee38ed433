"""JSON documents for instances, graphs and certificates, plus DOT export.

Serialization is canonical: keys sorted, two-space indent, lists of scalars
kept on one line.  Parsing reports JSON syntax errors with line and column
and schema or range errors with the offending field path.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Sequence

import jsonschema
import mpmath

from bramblekit.certificates import (
    PathSystem,
    bramble_order_exact,
    congestion,
    verify_bramble,
    verify_path_system,
)
from bramblekit.congestion import build_reduced_instance, check_reduced_instance
from bramblekit.ddp import DdpInstance, SeparatorEvidence, solve_exact, verify_evidence, verify_solution
from bramblekit.digraph import Digraph
from bramblekit.errors import BramblekitError, CapExceeded
from bramblekit.lll import (
    PartitionedConflictGraph,
    build_intersection_graph,
    check_elimination_order,
    check_poly_lll_condition,
    is_rainbow_independent,
)
from bramblekit.pipeline import compute_parameters, maximum_matching
from bramblekit.verdict import Verdict

SCHEMA_VERSION = 1
CERTIFICATE_KINDS = (
    "bramble",
    "order",
    "pathSystem",
    "ddpSolution",
    "ddpInfeasible",
    "separator",
    "rainbowSelection",
    "parameters",
    "reducedInstance",
    "degeneracy",
    "intersection",
    "caseReport",
    "lllCheck",
)


class DocumentError(BramblekitError, ValueError):
    """Malformed document; the message names the line/column or field."""


# ---------------------------------------------------------------- canonical JSON


def _is_scalar(x) -> bool:
    return x is None or isinstance(x, (bool, int, float, str))


def _encode(value, level: int) -> str:
    pad = "  " * (level + 1)
    if isinstance(value, dict):
        if not value:
            return "{}"
        items = [f"{pad}{json.dumps(k)}: {_encode(value[k], level + 1)}" for k in sorted(value)]
        return "{\n" + ",\n".join(items) + "\n" + "  " * level + "}"
    if isinstance(value, (list, tuple)):
        if all(_is_scalar(x) for x in value):
            return "[" + ", ".join(json.dumps(x) for x in value) + "]"
        items = [pad + _encode(x, level + 1) for x in value]
        return "[\n" + ",\n".join(items) + "\n" + "  " * level + "]"
    if isinstance(value, float) and not math.isfinite(value):
        raise ValueError("non-finite floats cannot be serialized")
    return json.dumps(value)


def canonical_json(value: Any) -> str:
    return _encode(value, 0) + "\n"


def _parse_json(text: str, source: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"{source}:{exc.lineno}:{exc.colno}: {exc.msg}") from None


def _field(path) -> str:
    out = ""
    for part in path:
        out += f"[{part}]" if isinstance(part, int) else (f".{part}" if out else str(part))
    return out or "<root>"


_VALIDATORS: dict[int, jsonschema.Draft202012Validator] = {}


def _validate(data: Any, schema: dict, source: str) -> None:
    validator = _VALIDATORS.get(id(schema))
    if validator is None:
        validator = _VALIDATORS[id(schema)] = jsonschema.Draft202012Validator(schema)
    errors = sorted(validator.iter_errors(data), key=lambda e: list(map(str, e.absolute_path)))
    if errors:
        lines = [f"{source}: field {_field(e.absolute_path)}: {e.message}" for e in errors[:10]]
        raise DocumentError("\n".join(lines))


def _check_edges(edges, n: int, where: str) -> None:
    for i, e in enumerate(edges):
        _check_vertices(e, n, f"{where}[{i}]")


def _check_vertices(values, n: int, where: str) -> None:
    for i, v in enumerate(values):
        if not 0 <= v < n:
            raise DocumentError(f"field {where}[{i}]: vertex {v} out of range for n={n}")


# ---------------------------------------------------------------- schemas

_INT_LIST = {"type": "array", "items": {"type": "integer"}}
_NN_INT = {"type": "integer", "minimum": 0}
_PAIR = {"type": "array", "items": _NN_INT, "minItems": 2, "maxItems": 2}
_GRAPH = {
    "type": "object",
    "required": ["n", "edges"],
    "properties": {"n": _NN_INT, "edges": {"type": "array", "items": _PAIR}},
    "additionalProperties": False,
}
_VERSION = {"const": SCHEMA_VERSION}

INSTANCE_SCHEMA = {
    "type": "object",
    "required": ["schemaVersion", "digraph"],
    "properties": {
        "schemaVersion": _VERSION,
        "digraph": _GRAPH,
        "bramble": {"type": "array", "items": {"type": "array", "items": _NN_INT}},
        "terminals": {
            "type": "object",
            "required": ["sources", "sinks", "budget"],
            "properties": {
                "sources": {"type": "array", "items": _NN_INT},
                "sinks": {"type": "array", "items": _NN_INT},
                "budget": {"type": "integer", "minimum": 1},
            },
            "additionalProperties": False,
        },
        "vertexNames": {"type": "array", "items": {"type": "string"}},
    },
    "additionalProperties": False,
}

GRAPH_SCHEMA = {
    "type": "object",
    "required": ["schemaVersion", "graph"],
    "properties": {
        "schemaVersion": _VERSION,
        "graph": _GRAPH,
        "parts": {"type": "array", "items": {"type": "array", "items": _NN_INT}},
        "b": {"type": "number", "minimum": 0},
    },
    "additionalProperties": False,
}

_FAMILIES = {
    "type": "array",
    "items": {"type": "array", "items": {"type": "array", "items": _NN_INT}},
}

FAMILIES_SCHEMA = {
    "type": "object",
    "required": ["schemaVersion", "families"],
    "properties": {"schemaVersion": _VERSION, "families": _FAMILIES},
    "additionalProperties": False,
}

CASE_SCHEMA = {
    "type": "object",
    "required": ["schemaVersion", "V", "Z"],
    "properties": {
        "schemaVersion": _VERSION,
        "V": _INT_LIST,
        "Z": _INT_LIST,
        "H1": {"type": "array", "items": {"type": "array", "items": {"type": "integer"}, "minItems": 2, "maxItems": 2}},
        "H2": {"type": "array", "items": {"type": "array", "items": {"type": "integer"}, "minItems": 2, "maxItems": 2}},
        "families": _FAMILIES,
        "d1": _NN_INT,
        "d2": _NN_INT,
    },
    "additionalProperties": False,
    "oneOf": [
        {"required": ["H1", "H2"], "not": {"required": ["families"]}},
        {"required": ["families", "d1", "d2"], "not": {"required": ["H1"]}},
    ],
}

CERTIFICATE_SCHEMA = {
    "type": "object",
    "required": ["schemaVersion", "kind", "payload", "provenance", "verified"],
    "properties": {
        "schemaVersion": _VERSION,
        "kind": {"enum": list(CERTIFICATE_KINDS)},
        "payload": {"type": "object"},
        "provenance": {
            "type": "object",
            "required": ["command", "seed", "toolVersion"],
            "properties": {
                "command": {"type": "string"},
                "seed": {"type": ["integer", "null"]},
                "toolVersion": {"type": "string"},
            },
            "additionalProperties": False,
        },
        "verified": {"type": "boolean"},
    },
    "additionalProperties": False,
}

_PATHS = {"type": "array", "items": {"type": "array", "items": _NN_INT}}
_TERMINALS = {"graph": _GRAPH, "sources": _INT_LIST, "sinks": _INT_LIST, "budget": {"type": "integer"}}


def _obj(required, **props):
    return {"type": "object", "required": list(required), "properties": props}


PAYLOAD_SCHEMAS = {
    "bramble": _obj(["graph", "bags", "congestion"], graph=_GRAPH, bags=_PATHS, congestion=_NN_INT),
    "order": _obj(["bags", "order", "hittingSet"], bags=_PATHS, order=_NN_INT, hittingSet=_INT_LIST),
    "pathSystem": _obj(
        ["graph", "a", "b", "spinePaths", "inSets", "outSets", "linkages"],
        graph=_GRAPH, a=_NN_INT, b=_NN_INT, spinePaths=_PATHS, inSets=_PATHS, outSets=_PATHS,
        linkages={"type": "array", "items": _obj(["from", "to", "paths"], paths=_PATHS)},
    ),
    "ddpSolution": _obj(["graph", "sources", "sinks", "budget", "paths", "maxLoad"], paths=_PATHS, **_TERMINALS),
    "ddpInfeasible": _obj(["graph", "sources", "sinks", "budget", "nodes"], **_TERMINALS),
    "separator": {
        "oneOf": [
            _obj(
                ["mode", "graph", "A", "B", "blocked", "paths", "separator"],
                mode={"const": "menger"}, graph=_GRAPH, A=_INT_LIST, B=_INT_LIST,
                blocked=_INT_LIST, paths=_PATHS, separator=_INT_LIST,
            ),
            _obj(
                ["mode", "graph", "sources", "sinks", "bags", "k", "holds"],
                mode={"const": "dichotomy"}, graph=_GRAPH, sources=_INT_LIST, sinks=_INT_LIST,
                bags=_PATHS, k=_NN_INT, holds={"type": "boolean"}, side={"enum": ["sources", "sinks"]},
                separator=_INT_LIST, paths=_PATHS, forwardPaths=_PATHS, backwardPaths=_PATHS,
            ),
        ]
    },
    "rainbowSelection": _obj(
        ["graph", "parts", "b", "seed", "selection", "resamples"],
        graph=_GRAPH, parts=_PATHS, b={"type": "number"}, seed={"type": "integer"},
        selection=_INT_LIST, resamples=_NN_INT,
    ),
    "parameters": _obj(
        ["k", "alpha", "eps", "cA", "cT", "logBase", "a", "d3", "d2", "d1", "b", "x", "d"],
        k=_NN_INT, alpha={"type": "string"}, eps={"type": "string"}, cA={"type": "string"},
        cT={"type": "string"}, logBase={"type": "string"}, a=_NN_INT, d3=_NN_INT, d2=_NN_INT,
        d1=_NN_INT, b=_NN_INT, x={"type": "string"}, d={"type": "string"},
    ),
    "reducedInstance": _obj(
        ["graph", "bags", "sources", "sinks", "reduced"],
        graph=_GRAPH, bags=_PATHS, sources=_INT_LIST, sinks=_INT_LIST,
        reduced=_obj(
            ["graph", "bags", "copyClasses", "sourcesPrime", "sinksPrime", "backMap"],
            graph=_GRAPH, bags=_PATHS, copyClasses=_PATHS, sourcesPrime=_INT_LIST,
            sinksPrime=_INT_LIST, backMap=_INT_LIST,
        ),
    ),
    "degeneracy": _obj(["graph", "degeneracy", "order"], graph=_GRAPH, degeneracy=_NN_INT, order=_INT_LIST),
    "intersection": _obj(["families", "edges"], families=_FAMILIES, edges={"type": "array", "items": _PAIR}),
    "caseReport": _obj(
        ["V", "Z", "H1", "H2", "M1", "M2", "case", "witness"],
        V=_INT_LIST, Z=_INT_LIST, H1=_PATHS, H2=_PATHS, M1=_PATHS, M2=_PATHS,
        case={"enum": [1, 2, 3]}, witness=_INT_LIST,
    ),
    "lllCheck": _obj(
        ["t", "b", "r", "eps", "passed", "slack"],
        t=_NN_INT, b={"type": "number"}, r=_NN_INT, eps={"type": "string"},
        passed={"type": "boolean"}, slack={"type": "string"},
    ),
}


# ---------------------------------------------------------------- documents


def _graph_dict(n: int, edges) -> dict:
    return {"n": n, "edges": [list(e) for e in edges]}


def graph_payload(D: Digraph) -> dict:
    return _graph_dict(D.n, D.edges)


def digraph_of(graph: dict) -> Digraph:
    return Digraph(graph["n"], [tuple(e) for e in graph["edges"]])


@dataclass(frozen=True)
class InstanceDocument:
    n: int
    edges: tuple[tuple[int, int], ...]
    bags: tuple[tuple[int, ...], ...] | None = None
    sources: tuple[int, ...] | None = None
    sinks: tuple[int, ...] | None = None
    budget: int | None = None
    vertex_names: tuple[str, ...] | None = None

    def __post_init__(self):
        _check_edges(self.edges, self.n, "digraph.edges")
        for i, bag in enumerate(self.bags or ()):
            _check_vertices(bag, self.n, f"bramble[{i}]")
        if (self.sources is None) != (self.sinks is None) or (self.sources is None) != (self.budget is None):
            raise DocumentError("field terminals: sources, sinks and budget go together")
        if self.sources is not None:
            _check_vertices(self.sources, self.n, "terminals.sources")
            _check_vertices(self.sinks, self.n, "terminals.sinks")
            if len(self.sources) != len(self.sinks):
                raise DocumentError("field terminals: sources and sinks differ in length")
        if self.vertex_names is not None and len(self.vertex_names) != self.n:
            raise DocumentError(f"field vertexNames: expected {self.n} names, got {len(self.vertex_names)}")

    @classmethod
    def from_digraph(cls, D: Digraph, bags=None, sources=None, sinks=None, budget=None, names=None):
        return cls(
            D.n,
            tuple(D.edges),
            None if bags is None else tuple(tuple(sorted(b)) for b in bags),
            None if sources is None else tuple(sources),
            None if sinks is None else tuple(sinks),
            budget,
            None if names is None else tuple(names),
        )

    @property
    def has_terminals(self) -> bool:
        return self.sources is not None

    def digraph(self) -> Digraph:
        return Digraph(self.n, self.edges)

    def to_dict(self) -> dict:
        out = {"schemaVersion": SCHEMA_VERSION, "digraph": _graph_dict(self.n, self.edges)}
        if self.bags is not None:
            out["bramble"] = [list(b) for b in self.bags]
        if self.sources is not None:
            out["terminals"] = {"sources": list(self.sources), "sinks": list(self.sinks), "budget": self.budget}
        if self.vertex_names is not None:
            out["vertexNames"] = list(self.vertex_names)
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "InstanceDocument":
        term = data.get("terminals")
        return cls(
            data["digraph"]["n"],
            tuple(tuple(e) for e in data["digraph"]["edges"]),
            None if "bramble" not in data else tuple(tuple(b) for b in data["bramble"]),
            None if term is None else tuple(term["sources"]),
            None if term is None else tuple(term["sinks"]),
            None if term is None else term["budget"],
            None if "vertexNames" not in data else tuple(data["vertexNames"]),
        )


@dataclass(frozen=True)
class GraphDocument:
    """Undirected graph, optionally partitioned into parts with a degeneracy bound ``b``."""

    n: int
    edges: tuple[tuple[int, int], ...]
    parts: tuple[tuple[int, ...], ...] | None = None
    b: float | None = None

    def __post_init__(self):
        _check_edges(self.edges, self.n, "graph.edges")
        for i, part in enumerate(self.parts or ()):
            _check_vertices(part, self.n, f"parts[{i}]")

    def adjacency(self) -> list[set[int]]:
        adj = [set() for _ in range(self.n)]
        for u, v in self.edges:
            if u != v:
                adj[u].add(v)
                adj[v].add(u)
        return adj

    def conflict_graph(self) -> PartitionedConflictGraph:
        if self.parts is None or self.b is None:
            raise DocumentError("field parts/b: a partitioned graph needs both")
        try:
            return PartitionedConflictGraph(self.n, self.edges, self.parts, self.b)
        except ValueError as exc:
            raise DocumentError(f"field parts: {exc}") from None

    @classmethod
    def from_conflict_graph(cls, P: PartitionedConflictGraph) -> "GraphDocument":
        return cls(P.n, tuple(P.edges()), P.parts, P.b)

    def to_dict(self) -> dict:
        out = {"schemaVersion": SCHEMA_VERSION, "graph": _graph_dict(self.n, self.edges)}
        if self.parts is not None:
            out["parts"] = [list(p) for p in self.parts]
        if self.b is not None:
            out["b"] = self.b
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "GraphDocument":
        return cls(
            data["graph"]["n"],
            tuple(tuple(e) for e in data["graph"]["edges"]),
            None if "parts" not in data else tuple(tuple(p) for p in data["parts"]),
            data.get("b"),
        )


@dataclass(frozen=True)
class FamiliesDocument:
    """Families of vertex sets (typically linkages, each a list of paths)."""

    families: tuple[tuple[tuple[int, ...], ...], ...]

    def to_dict(self) -> dict:
        return {"schemaVersion": SCHEMA_VERSION, "families": [[list(p) for p in f] for f in self.families]}

    @classmethod
    def from_dict(cls, data: dict) -> "FamiliesDocument":
        return cls(tuple(tuple(tuple(p) for p in f) for f in data["families"]))


@dataclass(frozen=True)
class CaseDocument:
    """Input of the three-case split: either H1/H2 edge lists or labelled families plus d1, d2."""

    V: tuple[int, ...]
    Z: tuple[int, ...]
    H1: tuple[tuple[int, int], ...] | None = None
    H2: tuple[tuple[int, int], ...] | None = None
    families: tuple[tuple[tuple[int, ...], ...], ...] | None = None
    d1: int | None = None
    d2: int | None = None

    def __post_init__(self):
        if not set(self.Z) <= set(self.V):
            raise DocumentError("field Z: must be a subset of V")
        if self.families is not None and not set(self.V) <= set(range(len(self.families))):
            raise DocumentError("field V: labels must index into families")

    def to_dict(self) -> dict:
        out = {"schemaVersion": SCHEMA_VERSION, "V": list(self.V), "Z": list(self.Z)}
        if self.families is not None:
            out.update(families=[[list(p) for p in f] for f in self.families], d1=self.d1, d2=self.d2)
        else:
            out.update(H1=[list(e) for e in self.H1], H2=[list(e) for e in self.H2])
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "CaseDocument":
        if "families" in data:
            fam = tuple(tuple(tuple(p) for p in f) for f in data["families"])
            return cls(tuple(data["V"]), tuple(data["Z"]), families=fam, d1=data["d1"], d2=data["d2"])
        return cls(
            tuple(data["V"]),
            tuple(data["Z"]),
            tuple(tuple(e) for e in data["H1"]),
            tuple(tuple(e) for e in data["H2"]),
        )


@dataclass(frozen=True)
class CertificateDocument:
    kind: str
    payload: dict
    command: str
    seed: int | None = None
    tool_version: str = field(default="")
    verified: bool = False

    def __post_init__(self):
        if self.kind not in CERTIFICATE_KINDS:
            raise DocumentError(f"field kind: unknown certificate kind {self.kind!r}")
        if not self.tool_version:
            from bramblekit import __version__

            object.__setattr__(self, "tool_version", __version__)
        # normalise tuples to lists so equality survives a round trip
        object.__setattr__(self, "payload", json.loads(json.dumps(self.payload)))

    def to_dict(self) -> dict:
        return {
            "schemaVersion": SCHEMA_VERSION,
            "kind": self.kind,
            "payload": self.payload,
            "provenance": {"command": self.command, "seed": self.seed, "toolVersion": self.tool_version},
            "verified": self.verified,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "CertificateDocument":
        prov = data["provenance"]
        return cls(data["kind"], data["payload"], prov["command"], prov["seed"], prov["toolVersion"], data["verified"])


_SCHEMAS = {
    InstanceDocument: INSTANCE_SCHEMA,
    GraphDocument: GRAPH_SCHEMA,
    FamiliesDocument: FAMILIES_SCHEMA,
    CaseDocument: CASE_SCHEMA,
    CertificateDocument: CERTIFICATE_SCHEMA,
}


def dumps(doc) -> str:
    return canonical_json(doc.to_dict())


def loads(text: str, cls, source: str = "<string>"):
    data = _parse_json(text, source)
    _validate(data, _SCHEMAS[cls], source)
    if cls is CertificateDocument:
        _validate(data["payload"], PAYLOAD_SCHEMAS[data["kind"]], f"{source}: payload")
    try:
        return cls.from_dict(data)
    except DocumentError as exc:
        raise DocumentError(f"{source}: {exc}") from None


def read(path, cls):
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise DocumentError(f"{path}: {exc.strerror}") from None
    return loads(text, cls, str(path))


def write(path, doc) -> None:
    Path(path).write_text(dumps(doc))


# ---------------------------------------------------------------- certificate payloads


def path_system_payload(D: Digraph, S: PathSystem) -> dict:
    return {
        "graph": graph_payload(D),
        "a": S.a,
        "b": S.b,
        "spinePaths": [list(p) for p in S.spine_paths],
        "inSets": [list(x) for x in S.in_sets],
        "outSets": [list(x) for x in S.out_sets],
        "linkages": [
            {"from": i, "to": j, "paths": [list(p) for p in S.linkages[(i, j)]]}
            for i, j in sorted(S.linkages)
        ],
    }


def path_system_of(payload: dict) -> PathSystem:
    return PathSystem(
        payload["a"],
        payload["b"],
        tuple(tuple(p) for p in payload["spinePaths"]),
        tuple(tuple(x) for x in payload["inSets"]),
        tuple(tuple(x) for x in payload["outSets"]),
        {(L["from"], L["to"]): tuple(tuple(p) for p in L["paths"]) for L in payload["linkages"]},
    )


def mpf_text(x) -> str:
    return mpmath.nstr(x, mpmath.mp.dps, min_fixed=-mpmath.inf, max_fixed=mpmath.inf) if x != mpmath.inf else "inf"


def parameters_payload(p) -> dict:
    with mpmath.workdps(len(str(p.b)) + 60):
        return {
            "k": p.k,
            "alpha": mpf_text(p.alpha),
            "eps": mpf_text(p.eps),
            "cA": mpf_text(p.c_a),
            "cT": mpf_text(p.c_t),
            "logBase": p.log_base,
            "a": p.a,
            "d3": p.d3,
            "d2": p.d2,
            "d1": p.d1,
            "b": p.b,
            "x": mpf_text(p.x),
            "d": mpf_text(p.d),
        }


def reduced_payload(D: Digraph, bags, S, T, R) -> dict:
    return {
        "graph": graph_payload(D),
        "bags": [sorted(b) for b in bags],
        "sources": list(S),
        "sinks": list(T),
        "reduced": {
            "graph": graph_payload(R.d_prime),
            "bags": [sorted(b) for b in R.bags_prime],
            "copyClasses": [list(R.copy_classes[v]) for v in sorted(R.copy_classes)],
            "sourcesPrime": list(R.sources_prime),
            "sinksPrime": list(R.sinks_prime),
            "backMap": list(R.back_map),
        },
    }


def _edges_of(adj) -> list[list]:
    return sorted([u, w] for u in adj for w in adj[u] if u < w)


def adjacency_of(V, edges) -> dict:
    adj = {v: set() for v in V}
    for u, w in edges:
        if u in adj and w in adj and u != w:
            adj[u].add(w)
            adj[w].add(u)
    return adj


def case_payload(report, H1, H2) -> dict:
    return {
        "V": list(report.V),
        "Z": sorted(report.Z),
        "H1": _edges_of(H1),
        "H2": _edges_of(H2),
        "M1": [list(e) for e in report.M1],
        "M2": [list(e) for e in report.M2],
        "case": report.case,
        "witness": sorted(report.witness),
    }


# ---------------------------------------------------------------- re-verification


def _check_disjoint_linkage(D: Digraph, paths, A, B, k, label) -> str | None:
    if len(paths) < k:
        return f"{label}: {len(paths)} < {k} paths"
    used = set()
    for p in paths:
        if not D.is_path(p) or p[0] not in A or p[-1] not in B:
            return f"{label}: {p} is not an A->B path"
        if used & set(p):
            return f"{label}: paths are not disjoint"
        used |= set(p)
    return None


def _re_bramble(p):
    D = digraph_of(p["graph"])
    verdict = verify_bramble(D, p["bags"])
    if verdict and congestion(p["bags"]) != p["congestion"]:
        return Verdict.failed("recorded congestion is wrong")
    return verdict


def _re_order(p):
    bags = [set(b) for b in p["bags"]]
    H = set(p["hittingSet"])
    if len(H) != p["order"]:
        return Verdict.failed("hitting set size differs from the order")
    missed = [i for i, b in enumerate(bags) if not b & H]
    if missed:
        return Verdict.failed(f"bag {missed[0]} is not hit")
    if p["order"] > 0:
        try:
            best, _ = bramble_order_exact(bags, p["order"])
        except CapExceeded as exc:
            return Verdict.failed(f"minimality not rechecked: {exc}")
        if best != p["order"]:
            return Verdict.failed(f"a hitting set of size {best} exists")
    return Verdict.passed()


def _re_path_system(p):
    return verify_path_system(digraph_of(p["graph"]), path_system_of(p))


def _instance_of(p) -> DdpInstance:
    return DdpInstance(digraph_of(p["graph"]), p["sources"], p["sinks"], p["budget"])


def _re_ddp_solution(p):
    inst = _instance_of(p)
    verdict = verify_solution(inst, p["paths"])
    if verdict:
        loads = {}
        for path in p["paths"]:
            for v in set(path):
                loads[v] = loads.get(v, 0) + 1
        if max(loads.values()) != p["maxLoad"]:
            return Verdict.failed("recorded maximum load is wrong")
    return verdict


def _re_ddp_infeasible(p):
    result = solve_exact(_instance_of(p))
    if result.status != "infeasible":
        return Verdict.failed(f"exact search reports {result.status!r}")
    return Verdict.passed()


def _re_separator(p):
    D = digraph_of(p["graph"])
    if p["mode"] == "menger":
        A, B, sep = set(p["A"]), set(p["B"]), set(p["separator"])
        blocked = set(p["blocked"])
        if len(p["paths"]) != len(sep):
            return Verdict.failed("path count differs from separator size")
        problem = _check_disjoint_linkage(D, p["paths"], A, B, len(sep), "linkage")
        if problem:
            return Verdict.failed(problem)
        if any(set(path) & blocked for path in p["paths"]):
            return Verdict.failed("a path uses a blocked vertex")
        hit = D.reachable(A, sep | blocked) & B
        if hit:
            return Verdict.failed(f"{min(hit)} in B still reachable from A")
        return Verdict.passed()
    S, T, k = p["sources"], p["sinks"], p["k"]
    union = {v for bag in p["bags"] for v in bag}
    if p["holds"]:
        problem = _check_disjoint_linkage(D, p.get("forwardPaths", []), set(S), union, k, "S->bags") or \
            _check_disjoint_linkage(D, p.get("backwardPaths", []), union, set(T), k, "bags->T")
        return Verdict.failed(problem) if problem else Verdict.passed()
    if "side" not in p or "separator" not in p:
        return Verdict.failed("negative dichotomy certificate lacks side/separator")
    ev = SeparatorEvidence(p["side"], frozenset(p["separator"]), tuple(map(tuple, p.get("paths", []))), frozenset(union))
    return verify_evidence(D, S, T, ev, k)


def _re_rainbow(p):
    P = PartitionedConflictGraph(p["graph"]["n"], [tuple(e) for e in p["graph"]["edges"]], p["parts"], p["b"])
    if not is_rainbow_independent(P, p["selection"]):
        return Verdict.failed("selection is not a rainbow independent set")
    return Verdict.passed()


def _re_parameters(p):
    eps = p["eps"]
    q = compute_parameters(p["k"], p["alpha"], eps, p["cA"], p["cT"], p["logBase"])
    for name in ("a", "d3", "d2", "d1", "b"):
        if getattr(q, name) != p[name]:
            return Verdict.failed(f"{name} recomputes to {getattr(q, name)}")
    with mpmath.workdps(len(str(q.b)) + 20):
        for name in ("x", "d"):
            got = getattr(q, name)
            if abs(got - mpmath.mpf(p[name])) > abs(got) * mpmath.mpf(10) ** (-40):
                return Verdict.failed(f"{name} recomputes to a different value")
    problems = q.check()
    return Verdict.failed(*problems) if problems else Verdict.passed()


def _re_reduced(p):
    D = digraph_of(p["graph"])
    R = build_reduced_instance(D, p["bags"], p["sources"], p["sinks"])
    if reduced_payload(D, p["bags"], p["sources"], p["sinks"], R)["reduced"] != p["reduced"]:
        return Verdict.failed("reduced instance does not match a fresh reduction")
    return check_reduced_instance(R, p["bags"])


def _re_degeneracy(p):
    n, d, order = p["graph"]["n"], p["degeneracy"], p["order"]
    adj = [set() for _ in range(n)]
    for u, w in p["graph"]["edges"]:
        if u != w:
            adj[u].add(w)
            adj[w].add(u)
    if not check_elimination_order(adj, order, d):
        return Verdict.failed(f"elimination order does not witness degeneracy <= {d}")
    # lower bound: some suffix of the order induces minimum degree >= d
    for i in range(n):
        rest = set(order[i:])
        if min(len(adj[v] & rest) for v in rest) >= d:
            return Verdict.passed()
    if d == 0:
        return Verdict.passed()
    return Verdict.failed(f"no subgraph of minimum degree {d}")


def _re_intersection(p):
    G = build_intersection_graph(p["families"])
    if [list(e) for e in G.edges()] != p["edges"]:
        return Verdict.failed("intersection edges do not match")
    return Verdict.passed()


def _is_matching(M, adj) -> bool:
    seen = set()
    for u, w in M:
        if u in seen or w in seen or w not in adj.get(u, ()):
            return False
        seen |= {u, w}
    return True


def _re_case(p):
    V, Z = set(p["V"]), set(p["Z"])
    H1, H2 = adjacency_of(V, p["H1"]), adjacency_of(V, p["H2"])
    H1z = {u: {w for w in H1[u] if w not in Z} for u in V - Z}
    if not _is_matching(p["M1"], H1z) or len(p["M1"]) != len(maximum_matching(H1z)):
        return Verdict.failed("M1 is not a maximum matching of H1 - Z")
    VM1 = {x for e in p["M1"] for x in e}
    H2r = {u: {w for w in H2[u] if w not in VM1 and not (u in Z and w in Z)} for u in V - VM1}
    if not _is_matching(p["M2"], H2r) or len(p["M2"]) != len(maximum_matching(H2r)):
        return Verdict.failed("M2 is not a maximum matching of the restricted H2")
    VM2 = {x for e in p["M2"] for x in e}
    expected = {1: V - (VM1 | Z), 2: VM1 | VM2 | Z, 3: V - VM2}[p["case"]]
    if expected != set(p["witness"]):
        return Verdict.failed("witness does not match its case")
    if len(expected) < 0.6 * len(V):
        return Verdict.failed("witness is smaller than 0.6|V|")
    return Verdict.passed()


def _re_lll(p):
    check = check_poly_lll_condition(p["t"], p["b"], p["r"], mpmath.mpf(p["eps"]))
    if check.passed != p["passed"]:
        return Verdict.failed("recorded outcome differs")
    return Verdict.passed()


_REVERIFIERS = {
    "bramble": _re_bramble,
    "order": _re_order,
    "pathSystem": _re_path_system,
    "ddpSolution": _re_ddp_solution,
    "ddpInfeasible": _re_ddp_infeasible,
    "separator": _re_separator,
    "rainbowSelection": _re_rainbow,
    "parameters": _re_parameters,
    "reducedInstance": _re_reduced,
    "degeneracy": _re_degeneracy,
    "intersection": _re_intersection,
    "caseReport": _re_case,
    "lllCheck": _re_lll,
}


def reverify(cert: CertificateDocument) -> Verdict:
    """Re-run the standalone verifier for the certificate's kind on its payload."""
    _validate(cert.payload, PAYLOAD_SCHEMAS[cert.kind], "payload")
    try:
        return _REVERIFIERS[cert.kind](cert.payload)
    except (ValueError, KeyError, IndexError) as exc:
        return Verdict.failed(f"payload rejected: {exc}")


# ---------------------------------------------------------------- DOT export

_PALETTE = ("#1b9e77", "#d95f02", "#7570b3", "#e7298a", "#66a61e", "#e6ab02", "#a6761d", "#666666")


def to_dot(doc: InstanceDocument) -> str:
    """Graphviz rendering: bags become coloured clusters holding copies of their vertices.

    A vertex shared by several bags appears once per bag, labelled with its
    occurrence count; dotted edges tie each copy to the base vertex.
    """
    names = doc.vertex_names or tuple(str(v) for v in range(doc.n))
    occ = {}
    for bag in doc.bags or ():
        for v in set(bag):
            occ[v] = occ.get(v, 0) + 1
    lines = ["digraph D {", "  node [shape=circle];"]
    terminals = {}
    if doc.has_terminals:
        for i, (s, t) in enumerate(zip(doc.sources, doc.sinks)):
            terminals[s] = f"s{i + 1}"
            terminals[t] = f"t{i + 1}"
    for v in range(doc.n):
        label = names[v] + (f"\\n{terminals[v]}" if v in terminals else "")
        style = ", shape=doublecircle" if v in terminals else ""
        lines.append(f'  v{v} [label="{label}"{style}];')
    for u, v in doc.edges:
        lines.append(f"  v{u} -> v{v};")
    edge_set = set(doc.edges)
    for i, bag in enumerate(doc.bags or ()):
        color = _PALETTE[i % len(_PALETTE)]
        lines.append(f"  subgraph cluster_bag{i} {{")
        lines.append(f'    label="bag {i}"; color="{color}"; fontcolor="{color}";')
        members = sorted(set(bag))
        for v in members:
            note = f" (x{occ[v]})" if occ[v] > 1 else ""
            lines.append(f'    b{i}_{v} [label="{names[v]}{note}", color="{color}"];')
        for u in members:
            for v in members:
                if (u, v) in edge_set:
                    lines.append(f'    b{i}_{u} -> b{i}_{v} [color="{color}"];')
        lines.append("  }")
        for v in members:
            lines.append(f"  b{i}_{v} -> v{v} [style=dotted, arrowhead=none];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def planted_document(P) -> InstanceDocument:
    return InstanceDocument.from_digraph(P.digraph, P.bags, P.sources, P.sinks, P.budget)

