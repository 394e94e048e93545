"""The `.gts` text format for graphs, rules, grammars, and predicates.

The format is line oriented. `#` starts a comment. Sections:

    signature
      node dot box
      edge plain t f
    graph NAME
      node ID LABEL
      edge ID SRC TGT LABEL
    rule NAME
      lhs / interface / rhs subsections with node and edge lines
    nonterminals
      node LABEL / edge LABEL
    start GRAPHNAME
    predicate NAME

Item ids may be decimal numbers or symbolic names; a scope (one graph,
or one rule across its three sections) that uses only numbers keeps
them, otherwise ids are assigned by first appearance. Serialization
always emits numeric ids, so parse(serialize(x)) round-trips exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .graphs import Graph, Signature, graph
from .recognizer import Grammar
from .rules import GtSystem, Rule


class GtsParseError(ValueError):
    """A syntax or consistency error, with its 1-based source line."""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass(frozen=True, eq=False)
class GtsDocument:
    """The parsed form of a `.gts` file."""

    name: str
    signature: Signature
    graphs: dict[str, Graph] = field(default_factory=dict)
    rules: dict[str, Rule] = field(default_factory=dict)
    nonterminal_node_labels: frozenset[str] = frozenset()
    nonterminal_edge_labels: frozenset[str] = frozenset()
    start: Optional[str] = None
    predicate: Optional[str] = None

    def system(self) -> GtSystem:
        return GtSystem(self.name, self.signature, tuple(self.rules.values()))

    def grammar(self) -> Grammar:
        if self.start is None:
            raise ValueError("document has no start graph")
        if self.start not in self.graphs:
            raise ValueError(f"start graph {self.start!r} is not defined")
        return Grammar(self.name, self.signature,
                       self.nonterminal_node_labels,
                       self.nonterminal_edge_labels,
                       tuple(self.rules.values()), self.graphs[self.start])


@dataclass
class _ItemLines:
    """Raw node and edge lines of one graph, before id resolution."""

    nodes: list[tuple[int, str, str]] = field(default_factory=list)
    edges: list[tuple[int, str, str, str, str]] = field(default_factory=list)


def _resolve_ids(names: list[str]) -> dict[str, int]:
    """Map item names to ids: keep all-numeric scopes, else enumerate."""
    if all(n.lstrip("-").isdigit() for n in names):
        return {n: int(n) for n in names}
    mapping: dict[str, int] = {}
    for n in names:
        if n not in mapping:
            mapping[n] = len(mapping)
    return mapping


def _build_graph(sig: Signature, items: _ItemLines,
                 shared_nodes: Optional[dict[str, int]] = None,
                 shared_edges: Optional[dict[str, int]] = None) -> Graph:
    node_ids = shared_nodes if shared_nodes is not None else _resolve_ids(
        [n for _, n, _ in items.nodes])
    edge_ids = shared_edges if shared_edges is not None else _resolve_ids(
        [e for _, e, _, _, _ in items.edges])
    nodes = []
    for ln, name, lab in items.nodes:
        if lab not in sig.node_labels:
            raise GtsParseError(f"node label {lab!r} outside the signature", ln)
        nodes.append((node_ids[name], lab))
    edges = []
    for ln, name, src, tgt, lab in items.edges:
        if lab not in sig.edge_labels:
            raise GtsParseError(f"edge label {lab!r} outside the signature", ln)
        if src not in node_ids or tgt not in node_ids:
            missing = src if src not in node_ids else tgt
            raise GtsParseError(f"edge endpoint {missing!r} is not a node", ln)
        edges.append((edge_ids[name], node_ids[src], node_ids[tgt], lab))
    first_line = items.nodes[0][0] if items.nodes else (
        items.edges[0][0] if items.edges else 0)
    try:
        return graph(sig, nodes, edges)
    except ValueError as exc:
        raise GtsParseError(str(exc), first_line) from exc


def parse(text: str, name: str = "document") -> GtsDocument:
    """Parse `.gts` text into a document, or raise GtsParseError."""
    sig_nodes: list[str] = []
    sig_edges: list[str] = []
    graphs_raw: dict[str, _ItemLines] = {}
    rules_raw: dict[str, dict[str, _ItemLines]] = {}
    nt_nodes: list[str] = []
    nt_edges: list[str] = []
    start: Optional[str] = None
    predicate: Optional[str] = None

    section: Optional[str] = None       # signature|graph|rule|nonterminals
    current_graph: Optional[str] = None
    current_rule: Optional[str] = None
    current_part: Optional[str] = None  # lhs|interface|rhs

    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        words = line.split()
        head, rest = words[0], words[1:]

        if head == "signature":
            if rest:
                raise GtsParseError("signature takes no arguments", ln)
            section, current_graph, current_rule = "signature", None, None
        elif head == "graph":
            if len(rest) != 1:
                raise GtsParseError("expected: graph NAME", ln)
            if rest[0] in graphs_raw:
                raise GtsParseError(f"duplicate graph {rest[0]!r}", ln)
            section, current_graph = "graph", rest[0]
            graphs_raw[current_graph] = _ItemLines()
        elif head == "rule":
            if len(rest) != 1:
                raise GtsParseError("expected: rule NAME", ln)
            if rest[0] in rules_raw:
                raise GtsParseError(f"duplicate rule {rest[0]!r}", ln)
            section, current_rule, current_part = "rule", rest[0], None
            rules_raw[current_rule] = {}
        elif head in ("lhs", "interface", "rhs"):
            if section != "rule" or current_rule is None:
                raise GtsParseError(f"{head!r} outside a rule", ln)
            if rest:
                raise GtsParseError(f"{head} takes no arguments", ln)
            if head in rules_raw[current_rule]:
                raise GtsParseError(f"duplicate {head!r} section", ln)
            current_part = head
            rules_raw[current_rule][head] = _ItemLines()
        elif head == "nonterminals":
            section = "nonterminals"
        elif head == "start":
            if len(rest) != 1:
                raise GtsParseError("expected: start GRAPHNAME", ln)
            start = rest[0]
            section = None
        elif head == "predicate":
            if len(rest) != 1:
                raise GtsParseError("expected: predicate NAME", ln)
            predicate = rest[0]
            section = None
        elif head == "node":
            if section == "signature":
                sig_nodes.extend(rest)
            elif section == "nonterminals":
                nt_nodes.extend(rest)
            elif section == "graph" and current_graph is not None:
                if len(rest) != 2:
                    raise GtsParseError("expected: node ID LABEL", ln)
                graphs_raw[current_graph].nodes.append((ln, rest[0], rest[1]))
            elif section == "rule" and current_part is not None:
                if len(rest) != 2:
                    raise GtsParseError("expected: node ID LABEL", ln)
                rules_raw[current_rule][current_part].nodes.append(
                    (ln, rest[0], rest[1]))
            else:
                raise GtsParseError("node line outside a section", ln)
        elif head == "edge":
            if section == "signature":
                sig_edges.extend(rest)
            elif section == "nonterminals":
                nt_edges.extend(rest)
            elif section == "graph" and current_graph is not None:
                if len(rest) != 4:
                    raise GtsParseError("expected: edge ID SRC TGT LABEL", ln)
                graphs_raw[current_graph].edges.append(
                    (ln, rest[0], rest[1], rest[2], rest[3]))
            elif section == "rule" and current_part is not None:
                if len(rest) != 4:
                    raise GtsParseError("expected: edge ID SRC TGT LABEL", ln)
                rules_raw[current_rule][current_part].edges.append(
                    (ln, rest[0], rest[1], rest[2], rest[3]))
            else:
                raise GtsParseError("edge line outside a section", ln)
        else:
            raise GtsParseError(f"unknown directive {head!r}", ln)

    if not sig_nodes and not sig_edges:
        raise GtsParseError("document has no signature section", 1)
    sig = Signature.of(sig_nodes, sig_edges)

    graphs = {gname: _build_graph(sig, items)
              for gname, items in graphs_raw.items()}

    rules: dict[str, Rule] = {}
    for rname, parts in rules_raw.items():
        for part in ("lhs", "interface", "rhs"):
            parts.setdefault(part, _ItemLines())
        node_names: list[str] = []
        edge_names: list[str] = []
        for part in ("lhs", "interface", "rhs"):
            node_names.extend(n for _, n, _ in parts[part].nodes)
            edge_names.extend(row[1] for row in parts[part].edges)
        node_ids = _resolve_ids(node_names)
        edge_ids = _resolve_ids(edge_names)
        built = {part: _build_graph(sig, parts[part], node_ids, edge_ids)
                 for part in ("lhs", "interface", "rhs")}
        node_lines = [rows.nodes[0][0] for rows in parts.values() if rows.nodes]
        first_line = min(node_lines) if node_lines else 1
        try:
            rules[rname] = Rule(rname, built["lhs"], built["interface"],
                                built["rhs"])
        except ValueError as exc:
            raise GtsParseError(f"rule {rname!r}: {exc}", first_line) from exc

    for lab in nt_nodes:
        if lab not in sig.node_labels:
            raise GtsParseError(f"nonterminal node label {lab!r} "
                                "outside the signature", 1)
    for lab in nt_edges:
        if lab not in sig.edge_labels:
            raise GtsParseError(f"nonterminal edge label {lab!r} "
                                "outside the signature", 1)
    if start is not None and start not in graphs:
        raise GtsParseError(f"start graph {start!r} is not defined", 1)

    return GtsDocument(name, sig, graphs, rules,
                       frozenset(nt_nodes), frozenset(nt_edges),
                       start, predicate)


def _serialize_items(g: Graph, indent: str, out: list[str]) -> None:
    for v, lab in g.node_rows:
        out.append(f"{indent}node {v} {lab}")
    for e, s, t, lab in g.edge_rows:
        out.append(f"{indent}edge {e} {s} {t} {lab}")


def serialize(doc: GtsDocument) -> str:
    """Render a document back to `.gts` text."""
    out: list[str] = ["signature"]
    out.append("  node " + " ".join(sorted(doc.signature.node_labels)))
    out.append("  edge " + " ".join(sorted(doc.signature.edge_labels)))
    for gname, g in doc.graphs.items():
        out.append("")
        out.append(f"graph {gname}")
        _serialize_items(g, "  ", out)
    for rname, rule in doc.rules.items():
        out.append("")
        out.append(f"rule {rname}")
        for part, g in (("lhs", rule.lhs), ("interface", rule.interface),
                        ("rhs", rule.rhs)):
            out.append(f"  {part}")
            _serialize_items(g, "    ", out)
    if doc.nonterminal_node_labels or doc.nonterminal_edge_labels:
        out.append("")
        out.append("nonterminals")
        if doc.nonterminal_node_labels:
            out.append("  node " + " ".join(sorted(doc.nonterminal_node_labels)))
        if doc.nonterminal_edge_labels:
            out.append("  edge " + " ".join(sorted(doc.nonterminal_edge_labels)))
    if doc.start is not None:
        out.append("")
        out.append(f"start {doc.start}")
    if doc.predicate is not None:
        out.append("")
        out.append(f"predicate {doc.predicate}")
    return "\n".join(out) + "\n"


def document_for_system(system: GtSystem, graphs: Optional[dict[str, Graph]] = None,
                        start: Optional[str] = None,
                        predicate: Optional[str] = None) -> GtsDocument:
    """Wrap a system (and optional named graphs) as a document."""
    return GtsDocument(system.name, system.signature,
                       dict(graphs or {}),
                       {r.name: r for r in system.rules},
                       frozenset(), frozenset(), start, predicate)


def document_for_case(case) -> GtsDocument:
    """Serialize a case study (its system, grammar, and predicate name).

    Accepts any object with the CaseStudy attributes; the grammar block
    is included when the case carries one, and builtin predicates are
    recorded by name.
    """
    grammar = case.grammar
    graphs: dict[str, Graph] = {}
    nt_nodes: frozenset[str] = frozenset()
    nt_edges: frozenset[str] = frozenset()
    start = None
    rules = tuple(case.system.rules)
    if grammar is not None:
        # A grammar document stores the generation rules; readers invert
        # them again for recognition.
        rules = tuple(grammar.rules)
        graphs["start"] = grammar.start
        nt_nodes = grammar.nonterminal_node_labels
        nt_edges = grammar.nonterminal_edge_labels
        start = "start"
    predicate = None
    try:
        builtin_names = ("all", "discrete", "acyclic", "forest",
                         "two_colourable", "efd_t_cycle")
        if case.predicate.name in builtin_names or \
                case.predicate.name.startswith("bounded_degree"):
            predicate = case.predicate.name
    except AttributeError:
        pass
    return GtsDocument(case.name, case.system.signature, graphs,
                       {r.name: r for r in rules},
                       nt_nodes, nt_edges, start, predicate)
