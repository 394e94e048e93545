"""Reduction-based language recognition tests."""

import pytest

from gtx.cases import build, sample_graph
from gtx.graphs import Signature, graph, isomorphic
from gtx.recognizer import (recognize, recognize_with_backtracking,
                            terminally_labelled)

UNIT = Signature.of(["dot"], ["plain"])


def test_sp_sample_accepted_and_reduces_to_start():
    case = build("sp")
    sample = sample_graph("sp_example")
    result = recognize(case.recognizer, sample)
    assert result.accepted
    assert isomorphic(result.normal_form, case.grammar.start)
    assert 0 < result.steps <= sample.size - case.grammar.start.size


def test_directed_three_cycle_rejected():
    case = build("sp")
    triangle = sample_graph("triangle")
    assert not recognize(case.recognizer, triangle).accepted
    assert not recognize_with_backtracking(case.recognizer, triangle).accepted


def test_backtracking_agrees_on_sp_samples():
    case = build("sp")
    for name in ("sp_example", "triangle", "two_cycle", "path(3)"):
        g = sample_graph(name)
        det = recognize(case.recognizer, g)
        ref = recognize_with_backtracking(case.recognizer, g)
        assert det.accepted == ref.accepted, name


def test_rejects_foreign_labels():
    case = build("sp")
    ab = graph(Signature.of(["dot"], ["a", "b"]),
               [(0, "dot"), (1, "dot")], [(0, 0, 1, "a")])
    result = recognize(case.recognizer, ab)
    assert not result.accepted
    assert "alphabet" in result.reason


def test_terminally_labelled():
    case = build("sp")
    assert terminally_labelled(case.grammar.start, case.grammar)


def test_lsp_recognizer_accepts_single_edges_only_at_base():
    case = build("lsp")
    a_edge = graph(case.system.signature, [(0, "dot"), (1, "dot")],
                   [(0, 0, 1, "a")])
    assert case.recognizer.accepts_graph(a_edge)
    parallel = graph(case.system.signature, [(0, "dot"), (1, "dot")],
                     [(0, 0, 1, "a"), (1, 0, 1, "b")])
    result = recognize(case.recognizer, parallel)
    assert result.accepted
