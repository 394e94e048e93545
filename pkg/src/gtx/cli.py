"""Command-line interface.

Subcommands: critical-pairs, analyze, recognize, reduce, invert,
export-dot, case-study. Exit codes: 0 success, 1 usage error, 2 parse
error, 3 analysis inconclusive (only with --strict), 4 search budget
exhausted. `--porcelain` switches reports to line-oriented key=value
output for scripting; `--figures DIR` additionally renders PNG figures.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Optional, TextIO

from .cases import build, case_names, sample_graph
from .dot import export_dot
from .graphs import Graph
from .gts import GtsDocument, GtsParseError, document_for_system, parse, serialize
from .pairs import (AnalysisReport, Assumptions, Conclusion,
                    check_strong_joinability, confluence_probe,
                    enumerate_critical_pairs)
from .predicates import (FiniteClosurePredicate, LanguagePredicate,
                         TypeGraphPredicate, builtin, check_size_reducing,
                         closedness_probe)
from .recognizer import (grammar_to_recognizer, recognize,
                         recognize_with_backtracking)
from .rules import BudgetExhausted, GtSystem, invert, reduce_to_normal_form

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_PARSE = 2
EXIT_INCONCLUSIVE = 3
EXIT_BUDGET = 4


class _Exit(Exception):
    def __init__(self, code: int, message: str = ""):
        super().__init__(message)
        self.code = code
        self.message = message


class _Parser(argparse.ArgumentParser):
    """Argparse variant that reports usage problems via exit code 1."""

    def error(self, message: str):
        raise _Exit(EXIT_USAGE, f"usage error: {message}")


def _build_parser() -> _Parser:
    parser = _Parser(prog="gtx", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, figures: bool = False):
        p.add_argument("--porcelain", action="store_true",
                       help="line-oriented key=value output")
        if figures:
            p.add_argument("--figures", metavar="DIR",
                           help="also render PNG figures into DIR")

    p = sub.add_parser("critical-pairs", help="enumerate and verify pairs")
    p.add_argument("file")
    p.add_argument("--predicate", help="built-in language predicate name")
    p.add_argument("--type-graph", metavar="GRAPH",
                   help="language of graphs typable over the named graph")
    p.add_argument("--finite", metavar="G1,G2,...",
                   help="language of subgraphs of the named graphs")
    common(p, figures=True)

    p = sub.add_parser("analyze", help="full confluence analysis")
    p.add_argument("file")
    p.add_argument("--mode", choices=("confluence", "subcommutativity"),
                   default="confluence")
    p.add_argument("--predicate")
    p.add_argument("--type-graph", metavar="GRAPH")
    p.add_argument("--finite", metavar="G1,G2,...")
    p.add_argument("--assume-terminating", action="store_true")
    p.add_argument("--assume-closed", action="store_true")
    p.add_argument("--probe-size", type=int, metavar="N",
                   help="probe closedness on language members up to N nodes")
    p.add_argument("--strict", action="store_true",
                   help="exit 3 when the conclusion is Inconclusive")
    common(p, figures=True)

    p = sub.add_parser("recognize", help="test language membership")
    p.add_argument("file")
    p.add_argument("--input", required=True, metavar="GRAPH",
                   help="name of the input graph in the document")
    p.add_argument("--backtrack", action="store_true",
                   help="explore every reduction sequence")
    common(p)

    p = sub.add_parser("reduce", help="reduce a graph to normal form")
    p.add_argument("file")
    p.add_argument("--input", required=True, metavar="GRAPH")
    common(p)

    p = sub.add_parser("invert", help="print the reversed system")
    p.add_argument("file")

    p = sub.add_parser("export-dot", help="render DOT output")
    p.add_argument("file")
    p.add_argument("--graph", metavar="NAME", help="a named graph")
    p.add_argument("--pair", type=int, metavar="N",
                   help="critical pair with this index")
    p.add_argument("--output", metavar="PATH", help="write to a file")

    p = sub.add_parser("case-study", help="run a built-in case end to end")
    p.add_argument("name", choices=case_names())
    p.add_argument("--strict", action="store_true")
    common(p, figures=True)

    return parser


def _load(path: str) -> GtsDocument:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise _Exit(EXIT_PARSE, f"cannot read {path}: {exc}")
    try:
        return parse(text, Path(path).stem)
    except GtsParseError as exc:
        raise _Exit(EXIT_PARSE, f"{path}: {exc}")


def _predicate_from(args, doc: GtsDocument) -> LanguagePredicate:
    chosen = [n for n in ("predicate", "type_graph", "finite")
              if getattr(args, n, None)]
    if len(chosen) > 1:
        raise _Exit(EXIT_USAGE, "choose at most one of --predicate, "
                                "--type-graph, --finite")
    if getattr(args, "type_graph", None):
        name = args.type_graph
        if name not in doc.graphs:
            raise _Exit(EXIT_USAGE, f"unknown graph {name!r}")
        return TypeGraphPredicate.over(name, doc.graphs[name])
    if getattr(args, "finite", None):
        names = args.finite.split(",")
        missing = [n for n in names if n not in doc.graphs]
        if missing:
            raise _Exit(EXIT_USAGE, f"unknown graphs {missing}")
        return FiniteClosurePredicate.over(
            args.finite, tuple(doc.graphs[n] for n in names))
    name = getattr(args, "predicate", None) or doc.predicate or "all"
    try:
        return builtin(name)
    except KeyError:
        raise _Exit(EXIT_USAGE, f"unknown predicate {name!r}")


class _Out:
    """Report writer with a human and a porcelain (key=value) mode."""

    def __init__(self, stream: TextIO, porcelain: bool):
        self.stream = stream
        self.porcelain = porcelain

    def text(self, line: str = "") -> None:
        if not self.porcelain:
            print(line, file=self.stream)

    def kv(self, key: str, value) -> None:
        if self.porcelain:
            print(f"{key}={value}", file=self.stream)


def _pair_table(report: AnalysisReport, out: _Out) -> None:
    out.text(f"{'pair':>4}  {'rules':<14} {'joinable':<10} "
             f"{'strongly':<10} {'non-garbage':<11}")
    for pair, verdict in zip(report.pairs, report.verdicts):
        label = verdict.label
        joinable = "yes" if label in ("StronglyJoinable",
                                      "JoinableNotStrong",
                                      "StronglySubcommutative",
                                      "SubcommutativeNotStrong") else (
            "no" if label == "NotJoinable" else "unknown")
        strong = "yes" if label in ("StronglyJoinable",
                                    "StronglySubcommutative") else "no"
        garbage = "no" if report.is_garbage(pair.index) else "yes"
        rules = f"{pair.rule1.name}/{pair.rule2.name}"
        out.text(f"{pair.index + 1:>4}  {rules:<14} {joinable:<10} "
                 f"{strong:<10} {garbage:<11}")
        key = f"pair.{pair.index + 1}"
        out.kv(f"{key}.rules", rules)
        out.kv(f"{key}.verdict", label)
        out.kv(f"{key}.joinable", joinable)
        out.kv(f"{key}.strongly_joinable", strong)
        out.kv(f"{key}.non_garbage", garbage)


def _summary(report: AnalysisReport, out: _Out) -> None:
    pairs = report.pairs
    strong = [p.index for p, v in zip(pairs, report.verdicts)
              if v.label in ("StronglyJoinable", "StronglySubcommutative")]
    not_joinable = [p.index for p, v in zip(pairs, report.verdicts)
                    if v.label == "NotJoinable"]
    ng = set(report.non_garbage)
    parts = [f"{len(pairs)} pairs", f"{len(strong)} strongly joinable"]
    for i in not_joinable:
        tag = " (garbage)" if i not in ng else ""
        parts.append(f"pair {i + 1} not joinable{tag}")
    out.text(", ".join(parts))
    if ng and all(i in strong for i in ng):
        out.text(f"{len(ng)} non-garbage, all strongly joinable")
    out.text(f"conclusion: {report.conclusion.value}")
    for note in report.notes:
        out.text(f"note: {note}")
    out.kv("pairs", len(pairs))
    out.kv("strongly_joinable", len(strong))
    out.kv("not_joinable", len(not_joinable))
    out.kv("non_garbage", len(ng))
    out.kv("conclusion", report.conclusion.value)
    out.kv("mode", report.mode)
    out.kv("predicate", report.predicate_name)


def _render_figures(report: AnalysisReport, directory: str, out: _Out) -> None:
    from .figures import render_report
    written = render_report(report, Path(directory))
    for path in written:
        out.text(f"figure: {path}")
        out.kv(f"figure.{path.stem}", path)


def _finish_analysis(report: AnalysisReport, args, out: _Out) -> int:
    _pair_table(report, out)
    out.text()
    _summary(report, out)
    if getattr(args, "figures", None):
        _render_figures(report, args.figures, out)
    if getattr(args, "strict", False) and \
            report.conclusion is Conclusion.INCONCLUSIVE:
        return EXIT_INCONCLUSIVE
    return EXIT_OK


def _cmd_critical_pairs(args, out: _Out) -> int:
    from .pairs import analyze
    doc = _load(args.file)
    system = doc.system()
    predicate = _predicate_from(args, doc)
    report = analyze(system, predicate)
    args.strict = False
    return _finish_analysis(report, args, out)


def _cmd_analyze(args, out: _Out) -> int:
    from .pairs import analyze
    doc = _load(args.file)
    system = doc.system()
    predicate = _predicate_from(args, doc)
    terminating = args.assume_terminating or check_size_reducing(system)
    closed = args.assume_closed
    closed_note = "asserted by caller" if args.assume_closed else ""
    if args.probe_size is not None:
        violations, checked = closedness_probe(system, predicate,
                                               args.probe_size)
        if violations:
            v = violations[0]
            out.text(f"closedness violation: rule {v.rule_name} leaves "
                     f"the language from a {len(v.host.nodes)}-node host")
            out.kv("closedness", "violated")
        else:
            closed = True
            closed_note = (f"probed to size {args.probe_size} "
                           f"({checked} hosts)")
            out.kv("closedness", closed_note)
    assumptions = Assumptions(
        terminating=terminating, closed=closed,
        termination_evidence=("size-reducing" if check_size_reducing(system)
                              else "asserted by caller"),
        closedness_evidence=closed_note)
    report = analyze(system, predicate, mode=args.mode,
                     assumptions=assumptions)
    return _finish_analysis(report, args, out)


def _recognizer_from(doc: GtsDocument):
    if doc.start is None:
        raise _Exit(EXIT_USAGE,
                    "document has no start graph; recognition needs one")
    return grammar_to_recognizer(doc.grammar())


def _cmd_recognize(args, out: _Out) -> int:
    doc = _load(args.file)
    spec = _recognizer_from(doc)
    if args.input not in doc.graphs:
        raise _Exit(EXIT_USAGE, f"unknown graph {args.input!r}")
    g = doc.graphs[args.input]
    result = (recognize_with_backtracking(spec, g) if args.backtrack
              else recognize(spec, g))
    verdict = "accept" if result.accepted else "reject"
    out.text(f"{verdict}: {result.reason} ({result.steps} steps)")
    out.kv("accepted", "yes" if result.accepted else "no")
    out.kv("steps", result.steps)
    out.kv("reason", result.reason)
    return EXIT_OK


def _cmd_reduce(args, out: _Out) -> int:
    doc = _load(args.file)
    system = doc.system()
    if args.input not in doc.graphs:
        raise _Exit(EXIT_USAGE, f"unknown graph {args.input!r}")
    nf, trace = reduce_to_normal_form(doc.graphs[args.input], system)
    for i, deriv in enumerate(trace):
        out.text(f"step {i + 1}: {deriv.rule.name}")
        out.kv(f"step.{i + 1}", deriv.rule.name)
    result_doc = document_for_system(
        GtSystem(doc.name, doc.signature, ()), {"normal_form": nf})
    out.text()
    out.text(serialize(result_doc).rstrip())
    out.kv("steps", len(trace))
    out.kv("normal_form.nodes", len(nf.nodes))
    out.kv("normal_form.edges", len(nf.edges))
    return EXIT_OK


def _cmd_invert(args, out: _Out) -> int:
    doc = _load(args.file)
    inverted = doc.system().inverted()
    print(serialize(document_for_system(inverted)), end="",
          file=out.stream)
    return EXIT_OK


def _cmd_export_dot(args, out: _Out) -> int:
    doc = _load(args.file)
    if (args.graph is None) == (args.pair is None):
        raise _Exit(EXIT_USAGE, "choose exactly one of --graph or --pair")
    if args.graph is not None:
        if args.graph not in doc.graphs:
            raise _Exit(EXIT_USAGE, f"unknown graph {args.graph!r}")
        text = export_dot(doc.graphs[args.graph])
    else:
        pairs = enumerate_critical_pairs(doc.system())
        if not 0 <= args.pair < len(pairs):
            raise _Exit(EXIT_USAGE,
                        f"pair index out of range (0..{len(pairs) - 1})")
        text = export_dot(pairs[args.pair])
    if args.output:
        Path(args.output).write_text(text)
    else:
        print(text, end="", file=out.stream)
    return EXIT_OK


def _cmd_case_study(args, out: _Out) -> int:
    from .pairs import analyze
    case = build(args.name)
    report = analyze(case.system, case.predicate, mode=case.analysis_mode,
                     assumptions=case.assumptions)
    out.text(f"case study {case.name}: {case.description}")
    out.kv("case", case.name)
    code = _finish_analysis(report, args, out)
    if case.recognizer is not None and case.name == "sp":
        sample = sample_graph("sp_example")
        result = recognize(case.recognizer, sample)
        verdict = "accept" if result.accepted else "reject"
        out.text(f"sample sp_example: {verdict} ({result.steps} steps)")
        out.kv("sample.sp_example", verdict)
    return code


_COMMANDS = {
    "critical-pairs": _cmd_critical_pairs,
    "analyze": _cmd_analyze,
    "recognize": _cmd_recognize,
    "reduce": _cmd_reduce,
    "invert": _cmd_invert,
    "export-dot": _cmd_export_dot,
    "case-study": _cmd_case_study,
}


def run(argv: Optional[list[str]] = None,
        stdout: Optional[TextIO] = None,
        stderr: Optional[TextIO] = None) -> int:
    """Entry point returning an exit code; streams are injectable for tests."""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        out = _Out(stdout, getattr(args, "porcelain", False))
        return _COMMANDS[args.command](args, out)
    except _Exit as exc:
        if exc.message:
            print(exc.message, file=stderr)
        return exc.code
    except BudgetExhausted as exc:
        print(f"budget exhausted: {exc}", file=stderr)
        return EXIT_BUDGET


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
