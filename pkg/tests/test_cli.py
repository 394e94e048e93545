"""Command-line interface tests: exit codes, tables, porcelain, figures."""

import io
from pathlib import Path

import pytest

from gtx.cases import build
from gtx.cli import (EXIT_BUDGET, EXIT_INCONCLUSIVE, EXIT_OK, EXIT_PARSE,
                     EXIT_USAGE, run)
from gtx.gts import document_for_case, document_for_system, serialize


def invoke(argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(argv, stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def sp_file(tmp_path):
    case = build("sp")
    path = tmp_path / "sp.gts"
    # analysis commands work on the reduction system; keep the sample
    # graphs and the grammar start available for recognition
    doc = document_for_case(case)
    path.write_text(serialize(doc))
    return path


@pytest.fixture
def eg1_file(tmp_path):
    case = build("eg_1")
    doc = document_for_system(case.system)
    path = tmp_path / "eg1.gts"
    path.write_text(serialize(doc))
    return path


def test_usage_errors():
    assert invoke(["no-such-command"])[0] == EXIT_USAGE
    assert invoke(["analyze"])[0] == EXIT_USAGE
    code, _, err = invoke(["analyze", "/nonexistent.gts"])
    assert code == EXIT_PARSE and "cannot read" in err


def test_parse_error_exit_code(tmp_path):
    bad = tmp_path / "bad.gts"
    bad.write_text("signature\n  node dot\n  edge a\nwibble\n")
    code, _, err = invoke(["analyze", str(bad)])
    assert code == EXIT_PARSE
    assert "line 4" in err


def test_critical_pairs_table(eg1_file):
    code, out, _ = invoke(["critical-pairs", str(eg1_file)])
    assert code == EXIT_OK
    assert "pair" in out and "joinable" in out
    assert "r1/r2" in out


def test_analyze_strict_inconclusive(eg1_file):
    code, out, _ = invoke(["analyze", str(eg1_file), "--strict"])
    assert code == EXIT_INCONCLUSIVE
    assert "Inconclusive" in out
    code, _, _ = invoke(["analyze", str(eg1_file)])
    assert code == EXIT_OK


def test_analyze_porcelain(eg1_file):
    code, out, _ = invoke(["analyze", str(eg1_file), "--porcelain"])
    assert code == EXIT_OK
    lines = dict(line.split("=", 1) for line in out.strip().splitlines())
    assert lines["conclusion"] == "Inconclusive"
    assert lines["pairs"] == "1"
    assert lines["pair.1.verdict"] == "JoinableNotStrong"


def test_recognize_and_reduce(sp_file, tmp_path):
    from gtx.cases import sample_graph
    from gtx.gts import parse
    doc = parse(sp_file.read_text(), "sp")
    doc.graphs["input"] = sample_graph("sp_example")
    enriched = tmp_path / "sp2.gts"
    enriched.write_text(serialize(doc))
    code, out, _ = invoke(["recognize", str(enriched), "--input", "input"])
    assert code == EXIT_OK and out.startswith("accept")
    code, out, _ = invoke(["recognize", str(enriched), "--input", "input",
                           "--backtrack", "--porcelain"])
    assert code == EXIT_OK and "accepted=yes" in out


def test_reduce_outputs_normal_form(eg1_file):
    # eg_1's system reduces a single a-edge to a b-loop
    from gtx.cases import AB
    from gtx.graphs import graph
    from gtx.gts import parse
    doc = parse(eg1_file.read_text(), "eg1")
    doc.graphs["g"] = graph(AB, [(0, "dot"), (1, "dot")], [(0, 0, 1, "a")])
    path = eg1_file.parent / "with_input.gts"
    path.write_text(serialize(doc))
    code, out, _ = invoke(["reduce", str(path), "--input", "g",
                           "--porcelain"])
    assert code == EXIT_OK
    assert "steps=1" in out


def test_invert_round_trip(eg1_file):
    code, _, _ = invoke(["invert", str(eg1_file)])
    assert code == EXIT_OK


def test_export_dot_graph_and_pair(sp_file, eg1_file, tmp_path):
    code, _, err = invoke(["export-dot", str(eg1_file)])
    assert code == EXIT_USAGE and "choose exactly one" in err
    code, out, _ = invoke(["export-dot", str(sp_file), "--graph", "start"])
    assert code == EXIT_OK and out.startswith("digraph")
    target = tmp_path / "pair.dot"
    code, _, _ = invoke(["export-dot", str(eg1_file), "--pair", "0",
                         "--output", str(target)])
    assert code == EXIT_OK and "cluster_g" in target.read_text()
    code, _, err = invoke(["export-dot", str(eg1_file), "--pair", "7"])
    assert code == EXIT_USAGE and "out of range" in err


def test_case_study_sp_summary():
    code, out, _ = invoke(["case-study", "sp"])
    assert code == EXIT_OK
    assert "4 pairs, 4 strongly joinable" in out
    assert "conclusion: ConfluentUpToGarbage" in out
    assert "sample sp_example: accept" in out


def test_case_study_figures(tmp_path):
    figdir = tmp_path / "figs"
    code, out, _ = invoke(["case-study", "eg_1", "--figures", str(figdir)])
    assert code == EXIT_OK
    written = sorted(p.name for p in figdir.iterdir())
    assert written == ["pair_00.png", "summary.png"]
    assert "figure:" in out


def test_case_study_porcelain_counts():
    code, out, _ = invoke(["case-study", "eg_6", "--porcelain"])
    assert code == EXIT_OK
    lines = dict(line.split("=", 1) for line in out.strip().splitlines())
    assert lines["pairs"] == "5"
    assert lines["non_garbage"] == "0"
    assert lines["conclusion"] == "ConfluentUpToGarbage"
