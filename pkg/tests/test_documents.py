import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bramblekit import documents as docs
from bramblekit.certificates import build_path_system
from bramblekit.generators import gen_complete, gen_conflict_graph, gen_planted_bramble_instance
from bramblekit.pipeline import compute_parameters


@st.composite
def instance_documents(draw):
    n = draw(st.integers(2, 8))
    vertex = st.integers(0, n - 1)
    edges = tuple(draw(st.lists(st.tuples(vertex, vertex), max_size=12)))
    bags = draw(st.none() | st.lists(st.lists(vertex, min_size=1, max_size=3).map(tuple), max_size=4).map(tuple))
    terminals = draw(st.none() | st.integers(1, n // 2))
    names = draw(st.none() | st.lists(st.text(max_size=4), min_size=n, max_size=n).map(tuple))
    if terminals:
        S, T = tuple(range(terminals)), tuple(range(terminals, 2 * terminals))
        budget = draw(st.integers(1, 4))
    else:
        S = T = budget = None
    return docs.InstanceDocument(n, edges, bags, S, T, budget, names)


@settings(max_examples=100, deadline=None)
@given(instance_documents())
def test_instance_round_trip(doc):
    text = docs.dumps(doc)
    assert docs.loads(text, docs.InstanceDocument) == doc
    assert docs.dumps(docs.loads(text, docs.InstanceDocument)) == text


def test_canonical_layout():
    doc = docs.InstanceDocument(3, ((0, 1), (1, 2)), ((0, 1),), (0,), (2,), 1)
    text = docs.dumps(doc)
    assert text.splitlines()[1] == '  "bramble": ['
    assert '      [0, 1],' in text
    assert '"sources": [0]' in text
    assert text.endswith("}\n")


def test_syntax_errors_carry_line_and_column():
    with pytest.raises(docs.DocumentError, match=r"doc:3:5"):
        docs.loads('{\n "schemaVersion": 1,\n    oops}', docs.InstanceDocument, "doc")


def test_field_errors_carry_the_path():
    bad = {"schemaVersion": 1, "digraph": {"n": 2, "edges": [[0, 1], [1, -1]]}}
    with pytest.raises(docs.DocumentError, match=r"digraph\.edges\[1\]\[1\]"):
        docs.loads(json.dumps(bad), docs.InstanceDocument)
    bad = {"schemaVersion": 1, "digraph": {"n": 2, "edges": []}, "terminals": {"sources": [0], "sinks": [5], "budget": 1}}
    with pytest.raises(docs.DocumentError, match=r"terminals\.sinks\[0\]"):
        docs.loads(json.dumps(bad), docs.InstanceDocument)
    bad = {"schemaVersion": 1, "digraph": {"n": 2, "edges": []}, "vertexNames": ["a"]}
    with pytest.raises(docs.DocumentError, match="vertexNames"):
        docs.loads(json.dumps(bad), docs.InstanceDocument)
    with pytest.raises(docs.DocumentError, match="schemaVersion"):
        docs.loads('{"schemaVersion": 9, "digraph": {"n": 0, "edges": []}}', docs.InstanceDocument)


def test_graph_and_case_documents_round_trip():
    g = docs.GraphDocument.from_conflict_graph(gen_conflict_graph(2, 5, 1, 0))
    assert docs.loads(docs.dumps(g), docs.GraphDocument) == g
    c = docs.CaseDocument((0, 1, 2), (1,), ((0, 1),), ((1, 2),))
    assert docs.loads(docs.dumps(c), docs.CaseDocument) == c
    f = docs.CaseDocument((0, 1), (), families=(((0, 1),), ((1, 2),)), d1=3, d2=1)
    assert docs.loads(docs.dumps(f), docs.CaseDocument) == f
    fam = docs.FamiliesDocument((((0, 1), (2,)), ((3,),)))
    assert docs.loads(docs.dumps(fam), docs.FamiliesDocument) == fam


def test_case_document_needs_one_edge_source():
    with pytest.raises(docs.DocumentError):
        docs.loads('{"schemaVersion": 1, "V": [0], "Z": []}', docs.CaseDocument)


def _cert(kind, payload):
    cert = docs.CertificateDocument(kind, payload, "test")
    return docs.loads(docs.dumps(cert), docs.CertificateDocument)


def test_certificate_round_trip_and_reverify():
    D = gen_complete(9)
    cert = _cert("pathSystem", docs.path_system_payload(D, build_path_system(D, 2)))
    assert docs.reverify(cert)
    params = _cert("parameters", docs.parameters_payload(compute_parameters(3, "1.66", "0.248")))
    assert docs.reverify(params)


def test_tampered_certificates_fail():
    P = gen_planted_bramble_instance(2, 3, 18, 0)
    payload = {"graph": docs.graph_payload(P.digraph), "bags": [list(b) for b in P.bags], "congestion": 3}
    assert docs.reverify(_cert("bramble", payload))
    payload["congestion"] = 2
    assert not docs.reverify(_cert("bramble", payload))
    p = docs.parameters_payload(compute_parameters(3, "1.66", "0.248"))
    p["b"] += 1
    assert not docs.reverify(_cert("parameters", p))
    deg = {"graph": {"n": 3, "edges": [[0, 1], [1, 2], [0, 2]]}, "degeneracy": 1, "order": [0, 1, 2]}
    assert not docs.reverify(_cert("degeneracy", deg))
    deg["degeneracy"] = 3
    assert not docs.reverify(_cert("degeneracy", deg))
    deg["degeneracy"] = 2
    assert docs.reverify(_cert("degeneracy", deg))


def test_unknown_kind_and_payload_shape_rejected():
    with pytest.raises(docs.DocumentError):
        docs.CertificateDocument("mystery", {}, "test")
    bad = docs.CertificateDocument("order", {"bags": [[0]]}, "test")
    with pytest.raises(docs.DocumentError, match="order"):
        docs.loads(docs.dumps(bad), docs.CertificateDocument)


def test_dot_export_annotates_shared_vertices():
    doc = docs.InstanceDocument(3, ((0, 1), (1, 0), (1, 2), (2, 1)), ((0, 1), (1, 2)), (0,), (2,), 2)
    dot = docs.to_dot(doc)
    assert dot.startswith("digraph D {")
    assert "cluster_bag0" in dot and "cluster_bag1" in dot
    assert '"1 (x2)"' in dot
    assert "s1" in dot and "t1" in dot
