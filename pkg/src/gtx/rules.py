"""Double-pushout rewriting: rules, matches, derivations, rewrite systems.

A rule is a span of inclusions L >= K <= R where the interface K shares
item ids with both sides. Matches are injective. A direct derivation
removes the matched copy of L - K (subject to the dangling condition),
keeps the context, and adds the items of R - K under fresh ids, so the
track morphism from input to result is a partial identity on ids.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Optional

from .graphs import (Graph, Morphism, Signature, canonical_key,
                     enumerate_monomorphisms, graph, inclusion, validate)

DEFAULT_STEP_BUDGET = 10_000
_BUDGET_ENV_VAR = "GTX_BUDGET"


def step_budget(default: int = DEFAULT_STEP_BUDGET) -> int:
    """The derivation step budget, overridable via the GTX_BUDGET variable."""
    raw = os.environ.get(_BUDGET_ENV_VAR)
    if raw is None:
        return default
    try:
        value = int(raw)
    except ValueError as exc:
        raise ValueError(f"{_BUDGET_ENV_VAR} must be an integer, got {raw!r}") from exc
    if value <= 0:
        raise ValueError(f"{_BUDGET_ENV_VAR} must be positive, got {value}")
    return value


class BudgetExhausted(Exception):
    """Raised when a reduction exceeds its step budget."""


@dataclass(frozen=True, eq=False)
class Rule:
    """A span of inclusions lhs >= interface <= rhs, sharing item ids."""

    name: str
    lhs: Graph
    interface: Graph
    rhs: Graph

    def __post_init__(self) -> None:
        for defect in (validate(self.lhs) + validate(self.interface)
                       + validate(self.rhs)):
            raise ValueError(f"rule {self.name}: {defect}")
        inclusion(self.interface, self.lhs)
        inclusion(self.interface, self.rhs)

    @cached_property
    def deleted_nodes(self) -> frozenset[int]:
        return frozenset(self.lhs.nodes) - frozenset(self.interface.nodes)

    @cached_property
    def deleted_edges(self) -> frozenset[int]:
        return frozenset(self.lhs.edges) - frozenset(self.interface.edges)

    @cached_property
    def added_nodes(self) -> frozenset[int]:
        return frozenset(self.rhs.nodes) - frozenset(self.interface.nodes)

    @cached_property
    def added_edges(self) -> frozenset[int]:
        return frozenset(self.rhs.edges) - frozenset(self.interface.edges)

    def size_change(self) -> int:
        """Item-count change of one application (negative means shrinking)."""
        return self.rhs.size - self.lhs.size

    def __repr__(self) -> str:
        return f"Rule({self.name})"


def invert(rule: Rule) -> Rule:
    """Swap left and right sides; inverting twice restores the rule."""
    if rule.name.endswith("^-1"):
        name = rule.name[:-3]
    else:
        name = rule.name + "^-1"
    return Rule(name, rule.rhs, rule.interface, rule.lhs)


@dataclass(frozen=True, eq=False)
class GtSystem:
    """A named list of rules over a common signature."""

    name: str
    signature: Signature
    rules: tuple[Rule, ...]

    def __post_init__(self) -> None:
        for r in self.rules:
            for g in (r.lhs, r.interface, r.rhs):
                bad_nodes = {lab for _, lab in g.node_rows} - self.signature.node_labels
                bad_edges = {lab for _, _, _, lab in g.edge_rows} - self.signature.edge_labels
                if bad_nodes or bad_edges:
                    raise ValueError(
                        f"rule {r.name} uses labels outside the signature: "
                        f"{sorted(bad_nodes | bad_edges)}")

    def rule_named(self, name: str) -> Rule:
        for r in self.rules:
            if r.name == name:
                return r
        raise KeyError(name)

    def inverted(self, name_suffix: str = "") -> GtSystem:
        return GtSystem(self.name + (name_suffix or "^-1"), self.signature,
                        tuple(invert(r) for r in self.rules))


@dataclass(frozen=True, eq=False)
class Match:
    """An injective occurrence of a rule's left-hand side in a host graph."""

    rule: Rule
    host: Graph
    morphism: Morphism

    def __post_init__(self) -> None:
        if self.morphism.domain is not self.rule.lhs and \
                self.morphism.domain.node_rows != self.rule.lhs.node_rows:
            raise ValueError("match morphism must start at the rule's lhs")


def check_dangling(match: Match) -> bool:
    """True iff deleting the matched copy of L - K leaves no dangling edge.

    A node scheduled for deletion must not be incident to any host edge
    outside the image of the match.
    """
    g = match.morphism
    host = match.host
    matched_edges = g.edge_image()
    for v in match.rule.deleted_nodes:
        w = g.node_map[v]
        for e in host.incident_edges(w):
            if e not in matched_edges:
                return False
    return True


@dataclass(frozen=True, eq=False)
class DirectDerivation:
    """One DPO rewrite step, with its intermediate context graph.

    `track` is the partial morphism from the input graph to the result,
    defined exactly on the items that survive the step. Because the
    context keeps host ids and added items get fresh ids, the track is a
    partial identity.
    """

    match: Match
    context: Graph
    result: Graph
    comatch: Morphism
    track: Morphism

    @property
    def rule(self) -> Rule:
        return self.match.rule

    @property
    def host(self) -> Graph:
        return self.match.host


def apply(match: Match) -> DirectDerivation:
    """Perform the rewrite step for a dangling-condition-satisfying match."""
    if not check_dangling(match):
        raise ValueError(
            f"match of {match.rule.name} violates the dangling condition")
    rule, host, g = match.rule, match.host, match.morphism

    gone_nodes = {g.node_map[v] for v in rule.deleted_nodes}
    gone_edges = {g.edge_map[e] for e in rule.deleted_edges}
    ctx_nodes = tuple(row for row in host.node_rows if row[0] not in gone_nodes)
    ctx_edges = tuple(row for row in host.edge_rows if row[0] not in gone_edges)
    context = graph(host.signature, ctx_nodes, ctx_edges)

    next_node = max((v for v, _ in host.node_rows), default=-1) + 1
    next_edge = max((e for e, *_ in host.edge_rows), default=-1) + 1
    co_nodes = {v: g.node_map[v] for v in rule.interface.nodes}
    co_edges = {e: g.edge_map[e] for e in rule.interface.edges}
    new_nodes = list(ctx_nodes)
    for v in sorted(rule.added_nodes):
        co_nodes[v] = next_node
        new_nodes.append((next_node, rule.rhs.node_label[v]))
        next_node += 1
    new_edges = list(ctx_edges)
    for e in sorted(rule.added_edges):
        co_edges[e] = next_edge
        new_edges.append((next_edge,
                          co_nodes[rule.rhs.source[e]],
                          co_nodes[rule.rhs.target[e]],
                          rule.rhs.edge_label[e]))
        next_edge += 1
    result = graph(host.signature, new_nodes, new_edges)

    comatch = Morphism(rule.rhs, result, co_nodes, co_edges)
    track = Morphism(host, result,
                     {v: v for v, _ in ctx_nodes},
                     {e: e for e, *_ in ctx_edges})
    return DirectDerivation(match, context, result, comatch, track)


def derivation_roundtrip(deriv: DirectDerivation) -> Graph:
    """Undo a derivation by applying the inverted rule at the comatch."""
    back = Match(invert(deriv.rule), deriv.result, deriv.comatch)
    if not check_dangling(back):
        raise ValueError("comatch violates the dangling condition on the way back")
    return apply(back).result


def all_matches(rule: Rule, host: Graph) -> Iterator[Match]:
    """All injective matches of the rule's lhs, in deterministic order."""
    for m in enumerate_monomorphisms(rule.lhs, host):
        yield Match(rule, host, m)


def applicable_matches(rule: Rule, host: Graph) -> Iterator[Match]:
    for m in all_matches(rule, host):
        if check_dangling(m):
            yield m


def all_derivations(host: Graph, system: GtSystem) -> Iterator[DirectDerivation]:
    """Every direct derivation from the host, without deduplication."""
    for rule in system.rules:
        for match in applicable_matches(rule, host):
            yield apply(match)


def successors(host: Graph, system: GtSystem) -> list[DirectDerivation]:
    """One derivation per isomorphism class of result graph.

    Rules are tried in system order and matches in deterministic match
    order; the first derivation reaching each result class is kept.
    """
    seen: set[bytes] = set()
    out: list[DirectDerivation] = []
    for rule in system.rules:
        for match in applicable_matches(rule, host):
            deriv = apply(match)
            key = canonical_key(deriv.result)
            if key not in seen:
                seen.add(key)
                out.append(deriv)
    return out


def reduce_to_normal_form(host: Graph, system: GtSystem,
                          max_steps: Optional[int] = None) -> tuple[Graph, list[DirectDerivation]]:
    """Apply the first available rewrite step until none applies.

    Deterministic: the first rule in system order with the first match in
    match order is applied at each step. Raises BudgetExhausted if the
    budget (default 10,000 steps, overridable via GTX_BUDGET) runs out.
    """
    budget = step_budget() if max_steps is None else max_steps
    trace: list[DirectDerivation] = []
    current = host
    while True:
        step = None
        for rule in system.rules:
            match = next(applicable_matches(rule, current), None)
            if match is not None:
                step = apply(match)
                break
        if step is None:
            return current, trace
        if len(trace) >= budget:
            raise BudgetExhausted(
                f"no normal form within {budget} steps for system {system.name}")
        trace.append(step)
        current = step.result
