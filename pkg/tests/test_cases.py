"""Case study builder sanity tests (golden counts live in the acceptance suite)."""

import pytest

from gtx.cases import build, case_names, sample_graph
from gtx.graphs import validate
from gtx.rules import invert


def test_case_names_are_stable():
    names = case_names()
    for expected in ("sp", "lsp", "efd", "eg_1", "eg_3", "eg_6", "eg_sub"):
        assert expected in names


@pytest.mark.parametrize("name", case_names())
def test_builders_produce_valid_systems(name):
    case = build(name)
    for rule in case.system.rules:
        for part in (rule.lhs, rule.interface, rule.rhs):
            assert validate(part) == []
        assert not rule.interface.edge_rows
        twice = invert(invert(rule))
        assert twice.lhs.node_rows == rule.lhs.node_rows
        assert twice.lhs.edge_rows == rule.lhs.edge_rows
        assert twice.rhs.node_rows == rule.rhs.node_rows
        assert twice.rhs.edge_rows == rule.rhs.edge_rows
    if case.grammar is not None:
        assert case.recognizer is not None
        assert case.recognizer.accepts_graph(case.grammar.start)


def test_unknown_case_name():
    with pytest.raises(KeyError):
        build("mystery")
    with pytest.raises(KeyError):
        sample_graph("mystery")


def test_sample_graphs():
    assert len(sample_graph("path(3)").nodes) == 3
    assert len(sample_graph("path(3)").edges) == 2
    two = sample_graph("two_cycle")
    assert len(two.nodes) == 2 and len(two.edges) == 2
    assert {(s, t) for _, s, t, _ in two.edge_rows} == {(0, 1), (1, 0)}
    tri = sample_graph("triangle")
    assert len(tri.nodes) == 3 and len(tri.edges) == 3
