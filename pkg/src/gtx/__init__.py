"""Double-pushout graph transformation: confluence analysis up to garbage.

The package provides labelled directed multigraphs and injective-match
DPO rewriting (`graphs`, `rules`), critical pair enumeration with strong
joinability and subcommutativity checking (`pairs`), language predicates
for discarding garbage overlaps (`predicates`), reduction-based language
recognition (`recognizer`), ready-made case studies (`cases`), and a
text format, DOT export, figure rendering, and CLI (`gts`, `dot`,
`figures`, `cli`).
"""

from .graphs import Graph, Morphism, Signature, graph, isomorphic
from .pairs import (AnalysisReport, Assumptions, Conclusion, CriticalPair,
                    analyze, check_strong_joinability,
                    check_strong_subcommutativity, confluence_probe,
                    enumerate_critical_pairs, filter_non_garbage)
from .predicates import (FiniteClosurePredicate, LanguagePredicate,
                         TypeGraphPredicate, builtin, check_size_reducing,
                         closedness_probe)
from .recognizer import (Grammar, RecognitionResult, RecognizerSpec,
                         grammar_to_recognizer, recognize,
                         recognize_with_backtracking)
from .rules import (DirectDerivation, GtSystem, Match, Rule, apply, invert,
                    reduce_to_normal_form, successors)

__all__ = [name for name in dir() if not name.startswith("_")]
