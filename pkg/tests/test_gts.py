"""Text format parse/serialize tests, including case-study round-trips."""

import pytest

from gtx.cases import build, case_names
from gtx.graphs import isomorphic
from gtx.gts import (GtsParseError, document_for_case, document_for_system,
                     parse, serialize)

MINIMAL = """
signature
  node dot
  edge plain

graph P
  node 1 dot
  node 2 dot
  edge e 1 2 plain
"""


def test_parse_minimal_graph():
    doc = parse(MINIMAL)
    g = doc.graphs["P"]
    assert len(g.nodes) == 2 and len(g.edges) == 1
    assert g.node_label == {1: "dot", 2: "dot"}
    # symbolic edge name assigned id by first appearance
    assert g.edge_rows == ((0, 1, 2, "plain"),)


def test_parse_rule_with_shared_ids():
    text = """
signature
  node dot
  edge a b

rule r
  lhs
    node 1 dot
    node 2 dot
    edge 0 1 2 a
  interface
    node 1 dot
    node 2 dot
  rhs
    node 1 dot
    node 2 dot
    edge 1 1 2 b
"""
    doc = parse(text)
    rule = doc.rules["r"]
    assert rule.interface.nodes == (1, 2)
    assert rule.lhs.edge_rows == ((0, 1, 2, "a"),)
    assert rule.rhs.edge_rows == ((1, 1, 2, "b"),)


@pytest.mark.parametrize("snippet,fragment", [
    ("signature\n  node dot\n  edge a\ngraph G\n  node 1 bad", "outside the signature"),
    ("signature\n  node dot\n  edge a\ngraph G\n  edge e 1 2 a", "is not a node"),
    ("signature\n  node dot\n  edge a\ngraph G\n  node 1 dot\n  node 1 dot", "duplicate"),
    ("graph G\n  node 1 dot", "no signature"),
    ("signature\n  node dot\n  edge a\nlhs", "outside a rule"),
    ("signature\n  node dot\n  edge a\nwibble x", "unknown directive"),
    ("signature\n  node dot\n  edge a\nstart missing", "not defined"),
])
def test_parse_errors(snippet, fragment):
    with pytest.raises(GtsParseError) as err:
        parse(snippet)
    assert fragment in str(err.value)


def test_broken_inclusion_reported():
    text = """
signature
  node dot
  edge a

rule r
  lhs
    node 1 dot
  interface
    node 1 dot
    node 2 dot
  rhs
    node 1 dot
    node 2 dot
"""
    with pytest.raises(GtsParseError) as err:
        parse(text)
    assert "rule 'r'" in str(err.value)


def _docs_equal(a, b) -> bool:
    if a.signature != b.signature or set(a.graphs) != set(b.graphs) \
            or set(a.rules) != set(b.rules):
        return False
    for name in a.graphs:
        ga, gb = a.graphs[name], b.graphs[name]
        if ga.node_rows != gb.node_rows or ga.edge_rows != gb.edge_rows:
            return False
    for name in a.rules:
        ra, rb = a.rules[name], b.rules[name]
        for pa, pb in ((ra.lhs, rb.lhs), (ra.interface, rb.interface),
                       (ra.rhs, rb.rhs)):
            if pa.node_rows != pb.node_rows or pa.edge_rows != pb.edge_rows:
                return False
    return (a.nonterminal_node_labels == b.nonterminal_node_labels
            and a.nonterminal_edge_labels == b.nonterminal_edge_labels
            and a.start == b.start and a.predicate == b.predicate)


@pytest.mark.parametrize("name", case_names())
def test_case_documents_round_trip(name):
    doc = document_for_case(build(name))
    text = serialize(doc)
    back = parse(text, doc.name)
    assert _docs_equal(doc, back)
    assert serialize(back) == text


def test_sp_document_system_round_trips_behaviour():
    case = build("sp")
    doc = document_for_case(case)
    back = parse(serialize(doc), "sp")
    grammar = back.grammar()
    assert isomorphic(grammar.start, case.grammar.start)
    assert [r.name for r in grammar.rules] == [r.name for r in case.grammar.rules]
