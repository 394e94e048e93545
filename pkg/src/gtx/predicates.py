"""Graph language predicates used to discard garbage overlaps.

A predicate describes a (preferably subgraph-closed) graph language.
Critical pairs whose overlap falls outside the language are garbage and
can be ignored by the up-to-garbage analyses, provided the language is
closed under rewriting by the system under study.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Callable, Iterator, Optional

from .graphs import (Graph, Signature, enumerate_graphs,
                     enumerate_monomorphisms, graph)
from .rules import DirectDerivation, GtSystem, all_derivations


@dataclass(frozen=True)
class LanguagePredicate:
    """A named graph language with a decidable membership test."""

    name: str
    membership: Callable[[Graph], bool]
    subgraph_closed: bool = True
    description: str = ""

    def __call__(self, g: Graph) -> bool:
        return self.membership(g)


def _has_directed_cycle(g: Graph, skip_labels: frozenset[str] = frozenset()) -> bool:
    adj: dict[int, list[int]] = {v: [] for v in g.nodes}
    for _, s, t, lab in g.edge_rows:
        if lab not in skip_labels:
            adj[s].append(t)
    state = {v: 0 for v in g.nodes}  # 0 unseen, 1 on stack, 2 done

    def visit(v: int) -> bool:
        state[v] = 1
        for w in adj[v]:
            if state[w] == 1 or (state[w] == 0 and visit(w)):
                return True
        state[v] = 2
        return False

    return any(state[v] == 0 and visit(v) for v in g.nodes)


def _is_acyclic(g: Graph) -> bool:
    return not _has_directed_cycle(g)


def _is_discrete(g: Graph) -> bool:
    return not g.edge_rows


def _is_forest(g: Graph) -> bool:
    """Disjoint unions of rooted trees: in-degree at most one, no cycles."""
    return (all(len(g.in_edges(v)) <= 1 for v in g.nodes)
            and _is_acyclic(g))


def _is_two_colourable(g: Graph) -> bool:
    """Loop-free and bipartite, ignoring edge directions."""
    colour: dict[int, int] = {}
    adj: dict[int, list[int]] = {v: [] for v in g.nodes}
    for _, s, t, _ in g.edge_rows:
        if s == t:
            return False
        adj[s].append(t)
        adj[t].append(s)
    for start in g.nodes:
        if start in colour:
            continue
        colour[start] = 0
        stack = [start]
        while stack:
            v = stack.pop()
            for w in adj[v]:
                if w not in colour:
                    colour[w] = 1 - colour[v]
                    stack.append(w)
                elif colour[w] == colour[v]:
                    return False
    return True


def _every_cycle_has_t_edge(g: Graph) -> bool:
    """No directed cycle may consist entirely of non-t edges."""
    return not _has_directed_cycle(g, skip_labels=frozenset({"t"}))


_BOUNDED_DEGREE = re.compile(r"bounded_degree\((\d+)\)")


def builtin(name: str) -> LanguagePredicate:
    """Look up a built-in predicate by name.

    Available: all, discrete, acyclic, forest, two_colourable,
    efd_t_cycle, and bounded_degree(k).
    """
    fixed = {
        "all": LanguagePredicate(
            "all", lambda g: True, True, "every graph"),
        "discrete": LanguagePredicate(
            "discrete", _is_discrete, True, "graphs without edges"),
        "acyclic": LanguagePredicate(
            "acyclic", _is_acyclic, True, "no directed cycles"),
        "forest": LanguagePredicate(
            "forest", _is_forest, True,
            "disjoint unions of rooted trees (in-degree at most one, acyclic)"),
        "two_colourable": LanguagePredicate(
            "two_colourable", _is_two_colourable, True,
            "loop-free graphs whose underlying undirected graph is bipartite"),
        "efd_t_cycle": LanguagePredicate(
            "efd_t_cycle", _every_cycle_has_t_edge, True,
            "every directed cycle contains a t-labelled edge"),
    }
    if name in fixed:
        return fixed[name]
    m = _BOUNDED_DEGREE.fullmatch(name)
    if m:
        k = int(m.group(1))
        return LanguagePredicate(
            name,
            lambda g: all(len(g.incident_edges(v)) + sum(
                1 for e in g.incident_edges(v)
                if g.source[e] == g.target[e]) <= k for v in g.nodes),
            True, f"total degree at most {k} (loops count twice)")
    raise KeyError(f"unknown predicate {name!r}")


def type_graph_member(g: Graph, type_graph: Graph) -> bool:
    """Whether g admits a (not necessarily injective) morphism to the type graph."""
    order = sorted(g.nodes)
    t = type_graph
    slots: set[tuple[int, int, str]] = {(s, tt, lab) for _, s, tt, lab in t.edge_rows}

    def assign(i: int, nmap: dict[int, int]) -> bool:
        if i == len(order):
            return True
        v = order[i]
        for w in t.nodes:
            if t.node_label[w] != g.node_label[v]:
                continue
            nmap[v] = w
            ok = True
            for e in g.incident_edges(v):
                s, tt = g.source[e], g.target[e]
                if s in nmap and tt in nmap and \
                        (nmap[s], nmap[tt], g.edge_label[e]) not in slots:
                    ok = False
                    break
            if ok and assign(i + 1, nmap):
                return True
            del nmap[v]
        return False

    return assign(0, {})


@dataclass(frozen=True)
class TypeGraphPredicate(LanguagePredicate):
    """The subgraph-closed language of graphs typable over a fixed graph."""

    type_graph: Optional[Graph] = None

    @staticmethod
    def over(name: str, type_graph: Graph) -> "TypeGraphPredicate":
        return TypeGraphPredicate(
            name, lambda g: type_graph_member(g, type_graph), True,
            f"graphs with a morphism into the {name} type graph", type_graph)


def finite_closure_member(g: Graph, members: tuple[Graph, ...]) -> bool:
    """Whether g embeds into one of finitely many listed graphs.

    This is membership in the subgraph closure of the finite language.
    """
    for h in members:
        if next(enumerate_monomorphisms(g, h), None) is not None:
            return True
    return False


@dataclass(frozen=True)
class FiniteClosurePredicate(LanguagePredicate):
    """The subgraph closure of a finite set of graphs."""

    members: tuple[Graph, ...] = ()

    @staticmethod
    def over(name: str, members: tuple[Graph, ...]) -> "FiniteClosurePredicate":
        return FiniteClosurePredicate(
            name, lambda g: finite_closure_member(g, members), True,
            f"subgraphs of {len(members)} listed graphs", members)


@dataclass(frozen=True)
class ClosednessViolation:
    """A rewrite step leaving the language: host inside, result outside."""

    host: Graph
    rule_name: str
    result: Graph


def closedness_probe(system: GtSystem, predicate: LanguagePredicate,
                     max_nodes: int, max_edges: Optional[int] = None,
                     limit: int = 1) -> tuple[list[ClosednessViolation], int]:
    """Search bounded hosts for steps that leave the language.

    Checks every derivation from every language member with at most
    `max_nodes` nodes and `max_edges` edges (default max_nodes + 1).
    Returns up to `limit` violations and the number of hosts checked; an
    empty violation list means the probe found the language closed at
    this size.
    """
    if max_edges is None:
        max_edges = max_nodes + 1
    violations: list[ClosednessViolation] = []
    checked = 0
    for host in enumerate_graphs(system.signature, max_nodes, max_edges):
        if not predicate(host):
            continue
        checked += 1
        for deriv in all_derivations(host, system):
            if not predicate(deriv.result):
                violations.append(
                    ClosednessViolation(host, deriv.rule.name, deriv.result))
                if len(violations) >= limit:
                    return violations, checked
    return violations, checked


def check_size_reducing(system: GtSystem) -> bool:
    """True iff every rule strictly decreases total item count.

    A size-reducing system terminates, since each step removes at least
    one item and no step can add more than it deletes.
    """
    return all(r.size_change() < 0 for r in system.rules)
