"""Language recognition by reduction with reversed grammar rules.

A graph grammar generates its language from a start graph. Reversing
the rules turns generation into reduction; a terminally labelled input
belongs to the language iff some reduction sequence reaches the start
graph. When the reversed system is confluent up to garbage on a language
containing the generated one, a single deterministic reduction to normal
form decides membership, with no backtracking.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Optional

from .graphs import Graph, Signature, isomorphic
from .rules import (BudgetExhausted, GtSystem, Rule, all_derivations, invert,
                    reduce_to_normal_form, step_budget)


@dataclass(frozen=True, eq=False)
class Grammar:
    """Generation rules over terminals plus nonterminals, with a start graph."""

    name: str
    signature: Signature
    nonterminal_node_labels: frozenset[str]
    nonterminal_edge_labels: frozenset[str]
    rules: tuple[Rule, ...]
    start: Graph

    @property
    def input_signature(self) -> Signature:
        return self.signature.restrict(self.nonterminal_node_labels,
                                       self.nonterminal_edge_labels)


def terminally_labelled(g: Graph, grammar: Grammar) -> bool:
    """Whether the graph uses no nonterminal labels."""
    return (all(lab not in grammar.nonterminal_node_labels
                for _, lab in g.node_rows)
            and all(lab not in grammar.nonterminal_edge_labels
                    for _, _, _, lab in g.edge_rows))


@dataclass(frozen=True, eq=False)
class RecognizerSpec:
    """A reduction system plus accepting graphs and an input alphabet."""

    name: str
    system: GtSystem
    accepting: tuple[Graph, ...]
    input_signature: Signature

    def accepts_graph(self, g: Graph) -> bool:
        return any(isomorphic(g, a) for a in self.accepting)

    def well_labelled(self, g: Graph) -> bool:
        return (all(lab in self.input_signature.node_labels
                    for _, lab in g.node_rows)
                and all(lab in self.input_signature.edge_labels
                        for _, _, _, lab in g.edge_rows))


def grammar_to_recognizer(grammar: Grammar) -> RecognizerSpec:
    """Reverse the grammar rules; the start graph becomes the accepting one."""
    system = GtSystem(grammar.name + "_recognizer", grammar.signature,
                      tuple(invert(r) for r in grammar.rules))
    return RecognizerSpec(grammar.name, system, (grammar.start,),
                          grammar.input_signature)


@dataclass(frozen=True, eq=False)
class RecognitionResult:
    """Outcome of a membership test."""

    accepted: bool
    normal_form: Optional[Graph]
    steps: int
    reason: str


def recognize(spec: RecognizerSpec, g: Graph,
              max_steps: Optional[int] = None) -> RecognitionResult:
    """Decide membership by one deterministic reduction to normal form.

    Sound and complete when the reduction system is confluent up to
    garbage on a closed language containing the grammar's output;
    otherwise `recognize_with_backtracking` is the reference answer.
    """
    if not spec.well_labelled(g):
        return RecognitionResult(False, None, 0,
                                 "input uses labels outside the input alphabet")
    nf, trace = reduce_to_normal_form(g, spec.system, max_steps)
    accepted = spec.accepts_graph(nf)
    reason = ("normal form matches an accepting graph" if accepted
              else "normal form matches no accepting graph")
    return RecognitionResult(accepted, nf, len(trace), reason)


def recognize_with_backtracking(spec: RecognizerSpec, g: Graph,
                                max_states: Optional[int] = None) -> RecognitionResult:
    """Decide membership by exploring every reduction sequence.

    Breadth-first over the reachable reducts, deduplicated up to
    isomorphism; accepts iff any reachable graph is an accepting one.
    """
    if not spec.well_labelled(g):
        return RecognitionResult(False, None, 0,
                                 "input uses labels outside the input alphabet")
    budget = step_budget() if max_states is None else max_states
    seen = {g.canonical_key}
    queue = deque([g])
    explored = 0
    while queue:
        current = queue.popleft()
        explored += 1
        if spec.accepts_graph(current):
            return RecognitionResult(True, current, explored,
                                     "an accepting graph is reachable")
        for deriv in all_derivations(current, spec.system):
            key = deriv.result.canonical_key
            if key in seen:
                continue
            if len(seen) >= budget:
                raise BudgetExhausted(
                    f"backtracking recognizer exceeded {budget} states")
            seen.add(key)
            queue.append(deriv.result)
    return RecognitionResult(False, None, explored,
                             "no reduction sequence reaches an accepting graph")
