"""Ready-made rewrite systems, grammars, predicates, and sample graphs.

Each case study packages a system together with the language predicate
its analysis uses, plus grammar and recognizer data where membership
testing applies. Node and edge labels are short lowercase words; "dot"
and "plain" stand for the anonymous node and edge labels of unlabelled
systems.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .graphs import Graph, Signature, graph
from .pairs import Assumptions
from .predicates import (LanguagePredicate, TypeGraphPredicate, builtin,
                         check_size_reducing)
from .recognizer import Grammar, RecognizerSpec, grammar_to_recognizer
from .rules import GtSystem, Rule, invert

DOT = "dot"        # the anonymous node label
PLAIN = "plain"    # the anonymous edge label
BOX = "box"        # statement node
DIA = "dia"        # decision node

UNIT = Signature.of([DOT], [PLAIN])
AB = Signature.of([DOT], ["a", "b"])
FLOW = Signature.of([DOT, BOX, DIA], [PLAIN, "t", "f"])


@dataclass(frozen=True, eq=False)
class CaseStudy:
    """A named system with its analysis configuration."""

    name: str
    description: str
    system: GtSystem
    predicate: LanguagePredicate
    assumptions: Assumptions
    analysis_mode: str = "confluence"
    grammar: Optional[Grammar] = None
    recognizer: Optional[RecognizerSpec] = None


def _rule(name: str, sig: Signature, lhs_nodes, lhs_edges,
          k_nodes, rhs_nodes, rhs_edges) -> Rule:
    """Build a rule with an edgeless interface given by `k_nodes`."""
    lhs = graph(sig, lhs_nodes, lhs_edges)
    node_label = dict(lhs_nodes) | dict(rhs_nodes)
    interface = graph(sig, [(v, node_label[v]) for v in sorted(k_nodes)])
    rhs = graph(sig, rhs_nodes, rhs_edges)
    return Rule(name, lhs, interface, rhs)


def _unit_rule(name: str, lhs_nodes, lhs_edges, k_nodes,
               rhs_nodes, rhs_edges) -> Rule:
    return _rule(name, UNIT,
                 [(v, DOT) for v in lhs_nodes],
                 [(e, s, t, PLAIN) for e, s, t in lhs_edges],
                 k_nodes,
                 [(v, DOT) for v in rhs_nodes],
                 [(e, s, t, PLAIN) for e, s, t in rhs_edges])


def _assumed(system: GtSystem, closed_note: str) -> Assumptions:
    """Termination from the size-reducing check, closedness asserted."""
    return Assumptions(
        terminating=check_size_reducing(system), closed=True,
        termination_evidence="every rule is size-reducing",
        closedness_evidence=closed_note)


# -- series-parallel graphs --------------------------------------------------

def _sp_grammar() -> Grammar:
    serial = _unit_rule("s", [1, 2], [(0, 1, 2)], [1, 2],
                        [1, 2, 3], [(1, 1, 3), (2, 3, 2)])
    parallel = _unit_rule("p", [1, 2], [(0, 1, 2)], [1, 2],
                          [1, 2], [(1, 1, 2), (2, 1, 2)])
    start = graph(UNIT, [(0, DOT), (1, DOT)], [(0, 0, 1, PLAIN)])
    return Grammar("sp", UNIT, frozenset(), frozenset(),
                   (serial, parallel), start)


def _sp_case() -> CaseStudy:
    grammar = _sp_grammar()
    recognizer = grammar_to_recognizer(grammar)
    system = recognizer.system
    return CaseStudy(
        "sp", "series-parallel graph reduction (reversed generation rules)",
        system, builtin("all"), _assumed(system, "no garbage is discarded"),
        grammar=grammar, recognizer=recognizer)


# -- labelled series-parallel ------------------------------------------------

def _ab_edge_rule(name: str, x: str, y: str, sequential: bool) -> Rule:
    if sequential:
        lhs = graph(AB, [(1, DOT), (2, DOT), (3, DOT)],
                    [(0, 1, 3, x), (1, 3, 2, y)])
    else:
        lhs = graph(AB, [(1, DOT), (2, DOT)],
                    [(0, 1, 2, x), (1, 1, 2, y)])
    interface = graph(AB, [(1, DOT), (2, DOT)])
    rhs = graph(AB, [(1, DOT), (2, DOT)], [(2, 1, 2, "a")])
    return Rule(name, lhs, interface, rhs)


def _lsp_sequential() -> tuple[Rule, ...]:
    labels = [("a", "a"), ("a", "b"), ("b", "a"), ("b", "b")]
    return tuple(_ab_edge_rule(f"s{i + 1}", x, y, True)
                 for i, (x, y) in enumerate(labels))


def _lsp_parallel() -> tuple[Rule, ...]:
    labels = [("a", "a"), ("a", "b"), ("b", "b")]
    return tuple(_ab_edge_rule(f"p{i + 1}", x, y, False)
                 for i, (x, y) in enumerate(labels))


def _lsp_case() -> CaseStudy:
    system = GtSystem("lsp", AB, _lsp_sequential() + _lsp_parallel())
    accepting = (graph(AB, [(0, DOT), (1, DOT)], [(0, 0, 1, "a")]),
                 graph(AB, [(0, DOT), (1, DOT)], [(0, 0, 1, "b")]))
    recognizer = RecognizerSpec("lsp", system, accepting, AB)
    return CaseStudy(
        "lsp", "labelled series-parallel reduction over edge labels a, b",
        system, builtin("acyclic"),
        _assumed(system, "probed on small acyclic hosts, then asserted"),
        recognizer=recognizer)


def _eg_b_case() -> CaseStudy:
    system = GtSystem("eg_b", AB, _lsp_sequential())
    return CaseStudy(
        "eg_b", "sequential relabelling rules over edge labels a, b",
        system, builtin("acyclic"),
        _assumed(system, "probed on small acyclic hosts, then asserted"))


def _eg_4_case() -> CaseStudy:
    base = _eg_b_case()
    return CaseStudy(
        "eg_4", "the eg_b rules analysed with the acyclic predicate",
        base.system, base.predicate, base.assumptions)


# -- extended flow diagrams --------------------------------------------------

def _flow_contraction(name: str, nodes, edges, result: str) -> Rule:
    """Contract a two-ended flow segment into a single labelled edge.

    The first and last node of `nodes` form the interface; the nodes in
    between are deleted and one `result` edge joins the two ends.
    """
    first, last = nodes[0], nodes[-1]
    lhs = graph(FLOW, nodes, edges)
    interface = graph(FLOW, [first, last])
    rhs = graph(FLOW, [first, last], [(0, first[0], last[0], result)])
    return Rule(name, lhs, interface, rhs)


def _efd_contractions() -> tuple[Rule, ...]:
    """Reduction rules for structured flow graphs over box/diamond nodes.

    Sequencing collapses box chains, decision collapses a diamond
    between two boxes into a taken branch, and the two chain rules fold
    a branch edge followed by a box chain back into a branch edge.
    """
    seq = _flow_contraction("seq", [(1, BOX), (3, BOX), (2, DIA)],
                            [(0, 1, 3, PLAIN), (1, 3, 2, PLAIN)], PLAIN)
    dec = _flow_contraction("dec", [(1, BOX), (3, DIA), (2, BOX)],
                            [(0, 1, 3, PLAIN), (1, 3, 2, PLAIN)], "t")
    seq_t = _flow_contraction("seq_t", [(1, BOX), (3, BOX), (2, BOX)],
                              [(0, 1, 3, PLAIN), (1, 3, 2, "t")], "t")
    chain_f = _flow_contraction(
        "chain_f", [(1, BOX), (3, BOX), (4, BOX), (2, BOX)],
        [(0, 1, 3, "f"), (1, 3, 4, PLAIN), (2, 4, 2, PLAIN)], "f")
    chain_t = _flow_contraction(
        "chain_t", [(1, BOX), (3, BOX), (4, BOX), (2, BOX)],
        [(0, 1, 3, PLAIN), (1, 3, 4, PLAIN), (2, 4, 2, "t")], "t")
    return (seq, dec, seq_t, chain_f, chain_t)


def _efd_grammar() -> Grammar:
    start = graph(FLOW, [(0, BOX), (1, BOX)], [(0, 0, 1, "t")])
    return Grammar("efd", FLOW, frozenset(), frozenset(),
                   tuple(invert(r) for r in _efd_contractions()), start)


def _efd_case() -> CaseStudy:
    grammar = _efd_grammar()
    recognizer = grammar_to_recognizer(grammar)
    system = recognizer.system
    return CaseStudy(
        "efd", "flow graph contraction (reversed generation rules)",
        system, builtin("efd_t_cycle"),
        _assumed(system, "contractions never introduce a t-free cycle"),
        grammar=grammar, recognizer=recognizer)


# -- small worked examples ---------------------------------------------------

def _eg_a_case() -> CaseStudy:
    r1 = _unit_rule("r1", [1, 2], [(0, 1, 2)], [1, 2], [1, 2], [])
    r2 = _unit_rule("r2", [1, 2], [(0, 1, 2)], [1], [1], [])
    system = GtSystem("eg_a", UNIT, (r1, r2))
    return CaseStudy("eg_a", "edge deletion conflicting with node deletion",
                     system, builtin("all"),
                     _assumed(system, "no garbage is discarded"))


def _eg_0_case() -> CaseStudy:
    r1 = _unit_rule("r1", [1, 2], [(0, 1, 2)], [1], [1], [])
    r2 = _unit_rule("r2", [1, 2], [(0, 1, 2)], [], [3], [(1, 3, 3)])
    r3 = _unit_rule("r3", [1, 2], [(0, 1, 2)], [], [3],
                    [(1, 3, 3), (2, 3, 3)])
    system = GtSystem("eg_0", UNIT, (r1, r2, r3))
    return CaseStudy("eg_0", "three overlapping edge-consuming rules",
                     system, builtin("all"),
                     Assumptions())


def _eg_1_case() -> CaseStudy:
    sig = Signature.of([DOT], ["a", "b"])
    lhs = graph(sig, [(1, DOT), (2, DOT)], [(0, 1, 2, "a")])
    interface = graph(sig, [(1, DOT), (2, DOT)])
    r1 = Rule("r1", lhs, interface,
              graph(sig, [(1, DOT), (2, DOT)], [(1, 1, 1, "b")]))
    r2 = Rule("r2", lhs, interface,
              graph(sig, [(1, DOT), (2, DOT)], [(1, 2, 2, "b")]))
    system = GtSystem("eg_1", sig, (r1, r2))
    return CaseStudy("eg_1", "a-edge replaced by a b-loop at either end",
                     system, builtin("all"), Assumptions())


def _eg_2_case() -> CaseStudy:
    r1 = _unit_rule("r1", [1, 2], [(0, 1, 1), (1, 2, 2)], [1, 2],
                    [1, 2], [(2, 1, 1)])
    r2 = _unit_rule("r2", [1], [(0, 1, 1), (1, 1, 1)], [1],
                    [1], [(2, 1, 1)])
    r3 = _unit_rule("r3", [1, 2], [(0, 1, 2)], [1, 2], [1, 2], [])
    system = GtSystem("eg_2", UNIT, (r1, r2, r3))
    return CaseStudy("eg_2", "loop-consuming rules with shared matches",
                     system, builtin("all"), Assumptions())


def _tree_one_loop() -> LanguagePredicate:
    def member(g: Graph) -> bool:
        loops = [e for e, s, t, _ in g.edge_rows if s == t]
        if len(loops) > 1:
            return False
        plain = [row for row in g.edge_rows if row[1] != row[2]]
        indeg: dict[int, int] = {v: 0 for v in g.nodes}
        for _, _, t, _ in plain:
            indeg[t] += 1
        if any(d > 1 for d in indeg.values()):
            return False
        core = graph(g.signature, g.node_rows, tuple(plain))
        from .predicates import builtin as _b
        return _b("acyclic")(core)

    return LanguagePredicate(
        "tree_one_loop", member, True,
        "forests carrying at most one looped edge")


def _eg_3_case() -> CaseStudy:
    r1 = _unit_rule("r1", [1, 2], [(0, 1, 1), (1, 1, 2)], [1, 2],
                    [1, 2], [(2, 1, 2), (3, 2, 2)])
    r2 = _unit_rule("r2", [1, 3], [(0, 1, 3), (1, 3, 3)], [1],
                    [1], [(2, 1, 1)])
    system = GtSystem("eg_3", UNIT, (r1, r2))
    return CaseStudy("eg_3", "a loop walking along tree edges",
                     system, _tree_one_loop(),
                     _assumed(system, "loop count and tree shape preserved"))


def _eg_6_case() -> CaseStudy:
    triangle_edges = [(0, 1, 2), (1, 2, 3), (2, 3, 1)]
    r1 = _unit_rule("r1", [1, 2, 3], triangle_edges, [], [4], [(3, 4, 4)])
    r2 = _unit_rule("r2", [1, 2, 3], triangle_edges, [], [4],
                    [(3, 4, 4), (4, 4, 4)])
    system = GtSystem("eg_6", UNIT, (r1, r2))
    two_cycle = graph(UNIT, [(0, DOT), (1, DOT)],
                      [(0, 0, 1, PLAIN), (1, 1, 0, PLAIN)])
    predicate = TypeGraphPredicate.over("two_colourable", two_cycle)
    return CaseStudy("eg_6", "triangle deletion over two-colourable graphs",
                     system, predicate,
                     _assumed(system, "asserted for the type-graph language"))


def _eg_sub_case() -> CaseStudy:
    r1 = _unit_rule("r1", [1], [], [1], [1, 2], [])
    r2 = _unit_rule("r2", [1], [], [], [2, 3], [])
    r3 = _unit_rule("r3", [1], [(0, 1, 1)], [], [], [])
    system = GtSystem("eg_sub", UNIT, (r1, r2, r3))
    return CaseStudy("eg_sub", "node-growing rules analysed for "
                     "subcommutativity on discrete graphs",
                     system, builtin("discrete"), Assumptions(),
                     analysis_mode="subcommutativity")


_BUILDERS = {
    "sp": _sp_case,
    "lsp": _lsp_case,
    "efd": _efd_case,
    "eg_a": _eg_a_case,
    "eg_b": _eg_b_case,
    "eg_0": _eg_0_case,
    "eg_1": _eg_1_case,
    "eg_2": _eg_2_case,
    "eg_3": _eg_3_case,
    "eg_4": _eg_4_case,
    "eg_6": _eg_6_case,
    "eg_sub": _eg_sub_case,
}


def case_names() -> tuple[str, ...]:
    return tuple(sorted(_BUILDERS))


def build(name: str) -> CaseStudy:
    """Construct a case study by name; raises KeyError for unknown names."""
    try:
        factory = _BUILDERS[name]
    except KeyError:
        raise KeyError(f"unknown case study {name!r}; known: "
                       + ", ".join(case_names())) from None
    return factory()


# -- sample graphs -----------------------------------------------------------

def _sp_example() -> Graph:
    """A many-node series-parallel graph that reduces to a single edge."""
    names = ["a", "b", "c", "d", "e", "f", "g", "i", "j", "l", "m"]
    idx = {n: i for i, n in enumerate(names)}
    pairs = [("a", "b"), ("a", "b"), ("a", "c"), ("a", "e"), ("b", "d"),
             ("c", "f"), ("d", "g"), ("d", "m"), ("e", "i"), ("f", "i"),
             ("g", "j"), ("i", "m"), ("j", "l"), ("j", "l"), ("l", "m")]
    return graph(UNIT, [(idx[n], DOT) for n in names],
                 [(k, idx[s], idx[t], PLAIN)
                  for k, (s, t) in enumerate(pairs)])


def sample_graph(name: str) -> Graph:
    """Fixed example graphs: sp_example, eg1_counterexample, egb_cycle,
    triangle, two_cycle, and path(n)."""
    if name == "sp_example":
        return _sp_example()
    if name == "eg1_counterexample":
        sig = Signature.of([DOT], ["a", "b"])
        return graph(sig, [(1, DOT), (2, DOT)],
                     [(0, 1, 2, "a"), (1, 2, 1, "b")])
    if name == "egb_cycle":
        return graph(AB, [(1, DOT), (2, DOT), (3, DOT)],
                     [(0, 1, 2, "a"), (1, 2, 3, "a"), (2, 3, 1, "b")])
    if name == "triangle":
        return graph(UNIT, [(1, DOT), (2, DOT), (3, DOT)],
                     [(0, 1, 2, PLAIN), (1, 2, 3, PLAIN), (2, 3, 1, PLAIN)])
    if name == "two_cycle":
        return graph(UNIT, [(0, DOT), (1, DOT)],
                     [(0, 0, 1, PLAIN), (1, 1, 0, PLAIN)])
    if name.startswith("path(") and name.endswith(")"):
        n = int(name[5:-1])
        return graph(UNIT, [(i, DOT) for i in range(n)],
                     [(i, i, i + 1, PLAIN) for i in range(n - 1)])
    raise KeyError(f"unknown sample graph {name!r}")
