"""Critical pairs, joinability analysis, and confluence verdicts.

Critical pairs are enumerated from gluings of two left-hand sides:
jointly surjective pairs of injective matches that are not parallelly
independent, where both induced rewrite steps satisfy the dangling
condition. One representative per isomorphism class of pairs is kept,
with the two orderings of a pair identified.

Joinability is decided by exhaustive search over reduction successors;
strong joinability additionally requires a common reduct reached without
deleting any persistent node and with the two track morphisms agreeing
on them. Persistent node identities are threaded through the search by
decorating canonical keys.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import Callable, Iterator, Optional

from .graphs import (Graph, Morphism, canonical_key, enumerate_graphs,
                     enumerate_monomorphisms, graph)
from .rules import (BudgetExhausted, DirectDerivation, GtSystem, Match, Rule,
                    all_derivations, apply, check_dangling,
                    reduce_to_normal_form, successors)

from typing import TYPE_CHECKING

if TYPE_CHECKING:  # only needed for annotations; avoids an import cycle
    from .predicates import LanguagePredicate

DEFAULT_SEARCH_BUDGET = 500


def parallel_independent(d1: DirectDerivation, d2: DirectDerivation) -> bool:
    """True iff the two steps touch each other only in preserved items."""
    if d1.host is not d2.host:
        raise ValueError("derivations must share a host graph")
    g1, g2 = d1.match.morphism, d2.match.morphism
    k1_nodes = {g1.node_map[v] for v in d1.rule.interface.nodes}
    k2_nodes = {g2.node_map[v] for v in d2.rule.interface.nodes}
    k1_edges = {g1.edge_map[e] for e in d1.rule.interface.edges}
    k2_edges = {g2.edge_map[e] for e in d2.rule.interface.edges}
    shared_nodes = g1.node_image() & g2.node_image()
    shared_edges = g1.edge_image() & g2.edge_image()
    return (shared_nodes <= (k1_nodes & k2_nodes)
            and shared_edges <= (k1_edges & k2_edges))


def enumerate_gluings(l1: Graph, l2: Graph) -> list[tuple[Graph, Morphism, Morphism]]:
    """All ways to overlap two graphs, one per isomorphism class of triple.

    Each gluing is a graph G with injective, jointly surjective morphisms
    m1: l1 -> G and m2: l2 -> G. Gluings correspond exactly to partial
    injective item correspondences between l1 and l2 (nodes with equal
    labels; edges with equal labels and correspondingly matched
    endpoints), so no post-hoc deduplication is needed.
    """
    out = []
    for node_match, edge_match in _matchings(l1, l2):
        out.append(_glue(l1, l2, node_match, edge_match))
    return out


def _matchings(l1: Graph, l2: Graph) -> Iterator[tuple[dict[int, int], dict[int, int]]]:
    """All partial injective correspondences, nodes then compatible edges."""
    nodes1 = sorted(l1.nodes)

    def node_maps(i: int, nmap: dict[int, int], used: set[int]) -> Iterator[dict[int, int]]:
        if i == len(nodes1):
            yield dict(nmap)
            return
        v = nodes1[i]
        yield from node_maps(i + 1, nmap, used)
        for w in sorted(l2.nodes):
            if w in used or l1.node_label[v] != l2.node_label[w]:
                continue
            nmap[v] = w
            used.add(w)
            yield from node_maps(i + 1, nmap, used)
            del nmap[v]
            used.discard(w)

    for nmap in node_maps(0, {}, set()):
        candidates = [
            (e, f) for e in sorted(l1.edges) for f in sorted(l2.edges)
            if l1.edge_label[e] == l2.edge_label[f]
            and nmap.get(l1.source[e]) == l2.source[f]
            and nmap.get(l1.target[e]) == l2.target[f]]

        def edge_maps(i: int, emap: dict[int, int], used: set[int]) -> Iterator[dict[int, int]]:
            if i == len(candidates):
                yield dict(emap)
                return
            e, f = candidates[i]
            yield from edge_maps(i + 1, emap, used)
            if e not in emap and f not in used:
                emap[e] = f
                used.add(f)
                yield from edge_maps(i + 1, emap, used)
                del emap[e]
                used.discard(f)

        for emap in edge_maps(0, {}, set()):
            yield nmap, emap


def _glue(l1: Graph, l2: Graph, node_match: dict[int, int],
          edge_match: dict[int, int]) -> tuple[Graph, Morphism, Morphism]:
    """Build the overlap graph for a correspondence; l1 keeps its ids."""
    node_back = {w: v for v, w in node_match.items()}
    edge_back = {f: e for e, f in edge_match.items()}

    next_node = max(l1.nodes, default=-1) + 1
    n2_map: dict[int, int] = {}
    nodes = list(l1.node_rows)
    for w in sorted(l2.nodes):
        if w in node_back:
            n2_map[w] = node_back[w]
        else:
            n2_map[w] = next_node
            nodes.append((next_node, l2.node_label[w]))
            next_node += 1

    next_edge = max(l1.edges, default=-1) + 1
    e2_map: dict[int, int] = {}
    edges = list(l1.edge_rows)
    for f in sorted(l2.edges):
        if f in edge_back:
            e2_map[f] = edge_back[f]
        else:
            e2_map[f] = next_edge
            edges.append((next_edge, n2_map[l2.source[f]],
                          n2_map[l2.target[f]], l2.edge_label[f]))
            next_edge += 1

    overlap = graph(l1.signature.union(l2.signature), nodes, edges)
    m1 = Morphism(l1, overlap, {v: v for v in l1.nodes}, {e: e for e in l1.edges})
    m2 = Morphism(l2, overlap, n2_map, e2_map)
    return overlap, m1, m2


@dataclass(frozen=True, eq=False)
class CriticalPair:
    """Two conflicting rewrite steps from a minimal overlap graph."""

    index: int
    rule1: Rule
    rule2: Rule
    overlap: Graph
    deriv1: DirectDerivation
    deriv2: DirectDerivation

    @property
    def match1(self) -> Morphism:
        return self.deriv1.match.morphism

    @property
    def match2(self) -> Morphism:
        return self.deriv2.match.morphism

    @cached_property
    def persistent(self) -> frozenset[int]:
        return persistent_nodes(self)

    def __repr__(self) -> str:
        return (f"CriticalPair({self.index}: {self.rule1.name} <- "
                f"{len(self.overlap.node_rows)}n/{len(self.overlap.edge_rows)}e"
                f" -> {self.rule2.name})")


def persistent_nodes(pair: CriticalPair) -> frozenset[int]:
    """Overlap nodes on which both track morphisms are defined."""
    return (frozenset(pair.overlap.nodes)
            & frozenset(pair.deriv1.track.node_map)
            & frozenset(pair.deriv2.track.node_map))


_SPAN_AUTO_CACHE: dict[int, tuple[Morphism, ...]] = {}


def _span_automorphisms(rule: Rule) -> tuple[Morphism, ...]:
    """Automorphisms of the lhs preserving the interface and extending to the rhs.

    Matches differing by such an automorphism induce the same rewrite
    step, so critical pairs are identified up to them.
    """
    cached = _SPAN_AUTO_CACHE.get(id(rule))
    if cached is not None:
        return cached
    k_nodes = frozenset(rule.interface.nodes)
    k_edges = frozenset(rule.interface.edges)
    autos = []
    for a in enumerate_monomorphisms(rule.lhs, rule.lhs):
        if {a.node_map[v] for v in k_nodes} != k_nodes:
            continue
        if {a.edge_map[e] for e in k_edges} != k_edges:
            continue
        fixed = {v: a.node_map[v] for v in k_nodes}
        extends = any(
            all(b.edge_map[e] == a.edge_map[e] for e in k_edges)
            for b in enumerate_monomorphisms(rule.rhs, rule.rhs,
                                             fixed_nodes=fixed))
        if extends:
            autos.append(a)
    result = tuple(autos)
    _SPAN_AUTO_CACHE[id(rule)] = result
    return result


def _matches_equivalent(rule: Rule, m_a: Morphism, m_b: Morphism,
                        up_to_automorphism: bool) -> bool:
    """Whether two matches into one graph coincide.

    With `up_to_automorphism` the matches may differ by a span
    automorphism of the rule; otherwise they must be equal.
    """
    if not up_to_automorphism:
        return m_a == m_b
    for a in _span_automorphisms(rule):
        if (all(m_b.node_map[a.node_map[v]] == m_a.node_map[v]
                for v in m_a.node_map)
                and all(m_b.edge_map[a.edge_map[e]] == m_a.edge_map[e]
                        for e in m_a.edge_map)):
            return True
    return False


def pairs_isomorphic(p: CriticalPair, q: CriticalPair) -> bool:
    """Whether an overlap isomorphism makes the two step pairs coincide.

    The two orderings of a pair are identified: a swap witness that
    exchanges the roles of the rules also counts. For a rule overlapped
    with itself the matches are additionally compared up to span
    automorphisms of the rule, so that self-overlaps differing only in
    how the rule's symmetries are matched count as one pair; matches of
    two distinct rules are compared exactly.
    """
    if _match_respecting_iso(p, q, swapped=False):
        return True
    return _match_respecting_iso(p, q, swapped=True)


def _match_respecting_iso(p: CriticalPair, q: CriticalPair, swapped: bool) -> bool:
    qr1, qr2 = (q.rule2, q.rule1) if swapped else (q.rule1, q.rule2)
    qm1, qm2 = (q.match2, q.match1) if swapped else (q.match1, q.match2)
    if p.rule1 is not qr1 or p.rule2 is not qr2:
        return False
    if p.overlap.size != q.overlap.size:
        return False
    self_overlap = qr1 is qr2
    for f in enumerate_monomorphisms(p.overlap, q.overlap):
        if (_matches_equivalent(qr1, p.match1.compose(f), qm1, self_overlap)
                and _matches_equivalent(qr2, p.match2.compose(f), qm2,
                                        self_overlap)):
            return True
    return False


def enumerate_critical_pairs(system: GtSystem) -> list[CriticalPair]:
    """All critical pairs of the system, one per isomorphism class.

    A gluing of two left-hand sides yields a critical pair when the two
    matches are not parallelly independent, both steps satisfy the
    dangling condition, and (for a rule overlapped with itself) the
    matches differ. Ordering is deterministic: by rule index pair, then
    by generation order of the underlying correspondence.
    """
    pairs: list[CriticalPair] = []
    for i, r1 in enumerate(system.rules):
        for j in range(i, len(system.rules)):
            r2 = system.rules[j]
            seen_matchings: set[tuple] = set()
            kept_here: list[CriticalPair] = []
            for overlap, m1, m2 in enumerate_gluings(r1.lhs, r2.lhs):
                if i == j:
                    if m1 == m2:
                        continue
                    # Identify the two orderings of a self-overlap.
                    key = _matching_key(m1, m2)
                    if _matching_key(m2, m1) in seen_matchings:
                        continue
                    seen_matchings.add(key)
                match1 = Match(r1, overlap, m1)
                match2 = Match(r2, overlap, m2)
                if not (check_dangling(match1) and check_dangling(match2)):
                    continue
                d1, d2 = apply(match1), apply(match2)
                if parallel_independent(d1, d2):
                    continue
                candidate = CriticalPair(len(pairs), r1, r2, overlap, d1, d2)
                if any(pairs_isomorphic(candidate, kept) for kept in kept_here):
                    continue
                kept_here.append(candidate)
                pairs.append(candidate)
    return pairs


def _matching_key(m1: Morphism, m2: Morphism) -> tuple:
    """The item correspondence induced by two matches into a common graph."""
    inv_nodes = {w: v for v, w in m2.node_map.items()}
    inv_edges = {f: e for e, f in m2.edge_map.items()}
    nodes = tuple(sorted((v, inv_nodes[w]) for v, w in m1.node_map.items()
                         if w in inv_nodes))
    edges = tuple(sorted((e, inv_edges[f]) for e, f in m1.edge_map.items()
                         if f in inv_edges))
    return (nodes, edges)


class Joinability(Enum):
    STRONGLY_JOINABLE = "StronglyJoinable"
    JOINABLE_NOT_STRONG = "JoinableNotStrong"
    NOT_JOINABLE = "NotJoinable"
    UNKNOWN = "Unknown"


class Subcommutativity(Enum):
    STRONGLY_SUBCOMMUTATIVE = "StronglySubcommutative"
    NOT_STRONGLY_SUBCOMMUTATIVE = "NotStronglySubcommutative"


@dataclass(frozen=True)
class PairVerdict:
    """Outcome of a joinability or subcommutativity check for one pair."""

    pair_index: int
    status: Joinability | Subcommutativity
    meet: Optional[Graph] = None
    steps1: tuple[str, ...] = ()
    steps2: tuple[str, ...] = ()
    explored: int = 0
    exhausted: bool = True

    @property
    def label(self) -> str:
        return self.status.value


def _decorated_key(g: Graph, alive: frozenset[int]) -> bytes:
    """Canonical key with still-surviving persistent nodes pinned by id.

    Under the fresh-id policy surviving items keep their ids across
    steps and the track morphisms are partial identities, so equal
    decorated keys witness an isomorphism under which the composed
    tracks agree on the surviving persistent nodes.
    """
    return canonical_key(g, {v: ("persist", v) for v in alive})


@dataclass
class _SearchState:
    graph: Graph
    plain_key: bytes
    alive: frozenset[int]
    path: tuple[str, ...]


def _explore(start: Graph, system: GtSystem, persistent: frozenset[int],
             budget: int) -> tuple[dict[bytes, _SearchState], bool]:
    """BFS over reduction successors, deduplicated by decorated key.

    `alive` is the subset of persistent nodes on which the composed
    track morphism is still defined; it is threaded through each step's
    track explicitly so that a freshly created node reusing a deleted
    id can never masquerade as a persistent one.
    """
    states: dict[bytes, _SearchState] = {}
    first = _SearchState(start, start.canonical_key, persistent, ())
    states[_decorated_key(start, first.alive)] = first
    queue = deque([first])
    exhausted = True
    while queue:
        state = queue.popleft()
        for deriv in all_derivations(state.graph, system):
            h = deriv.result
            alive = frozenset(v for v in state.alive if v in deriv.track.node_map)
            dkey = _decorated_key(h, alive)
            if dkey in states:
                continue
            if len(states) >= budget:
                exhausted = False
                return states, exhausted
            nxt = _SearchState(h, h.canonical_key, alive,
                               state.path + (deriv.rule.name,))
            states[dkey] = nxt
            queue.append(nxt)
    return states, exhausted


def check_strong_joinability(pair: CriticalPair, system: GtSystem,
                             budget: int = DEFAULT_SEARCH_BUDGET) -> PairVerdict:
    """Decide joinability of a pair by two-sided exhaustive search.

    StronglyJoinable: some common reduct keeps every persistent node and
    is reached with the two composed tracks agreeing on them (witnessed
    by equal persistence-decorated keys). NotJoinable is only reported
    when both searches exhaust their reachable sets within budget; when
    a budget runs out without a joinability witness, or with one that is
    not strong, the verdict degrades to Unknown or stays a plain
    joinability claim accordingly.
    """
    persistent = pair.persistent
    side1, done1 = _explore(pair.deriv1.result, system, persistent, budget)
    side2, done2 = _explore(pair.deriv2.result, system, persistent, budget)
    exhausted = done1 and done2
    explored = len(side1) + len(side2)

    for dkey, s1 in side1.items():
        if dkey in side2 and s1.alive == persistent:
            s2 = side2[dkey]
            return PairVerdict(pair.index, Joinability.STRONGLY_JOINABLE,
                               meet=s1.graph, steps1=s1.path, steps2=s2.path,
                               explored=explored, exhausted=exhausted)

    plain2 = {s.plain_key: s for s in side2.values()}
    for s1 in side1.values():
        if s1.plain_key in plain2:
            s2 = plain2[s1.plain_key]
            status = (Joinability.JOINABLE_NOT_STRONG if exhausted
                      else Joinability.UNKNOWN)
            return PairVerdict(pair.index, status, meet=s1.graph,
                               steps1=s1.path, steps2=s2.path,
                               explored=explored, exhausted=exhausted)

    status = Joinability.NOT_JOINABLE if exhausted else Joinability.UNKNOWN
    return PairVerdict(pair.index, status, explored=explored, exhausted=exhausted)


def check_strong_subcommutativity(pair: CriticalPair,
                                  system: GtSystem) -> PairVerdict:
    """Decide whether the pair closes strongly in at most one step per side.

    The candidate reducts are each result graph itself and its one-step
    successors; the check is exact (no budget is involved).
    """
    persistent = pair.persistent

    def candidates(h: Graph) -> dict[bytes, _SearchState]:
        cands = {_decorated_key(h, persistent):
                 _SearchState(h, h.canonical_key, persistent, ())}
        for deriv in all_derivations(h, system):
            r = deriv.result
            alive = frozenset(v for v in persistent if v in deriv.track.node_map)
            cands.setdefault(_decorated_key(r, alive),
                             _SearchState(r, r.canonical_key, alive,
                                          (deriv.rule.name,)))
        return cands

    side1 = candidates(pair.deriv1.result)
    side2 = candidates(pair.deriv2.result)
    explored = len(side1) + len(side2)
    for dkey, s1 in side1.items():
        if dkey in side2 and s1.alive == persistent:
            s2 = side2[dkey]
            return PairVerdict(pair.index,
                               Subcommutativity.STRONGLY_SUBCOMMUTATIVE,
                               meet=s1.graph, steps1=s1.path, steps2=s2.path,
                               explored=explored)
    return PairVerdict(pair.index,
                       Subcommutativity.NOT_STRONGLY_SUBCOMMUTATIVE,
                       explored=explored)


def filter_non_garbage(pairs: list[CriticalPair],
                       predicate: "LanguagePredicate") -> list[CriticalPair]:
    """The pairs whose overlap lies inside the (closed) language."""
    return [p for p in pairs if predicate(p.overlap)]


class Conclusion(Enum):
    CONFLUENT = "ConfluentUpToGarbage"
    LOCALLY_CONFLUENT = "LocallyConfluentUpToGarbage"
    SUBCOMMUTATIVE = "SubcommutativeUpToGarbage"
    NOT_LOCALLY_CONFLUENT = "NotLocallyConfluentUpToGarbage"
    INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class Assumptions:
    """Side conditions the caller supplies or has established separately.

    `terminating` lifts local confluence to confluence; `closed` records
    that the language is preserved by every rewrite step, which the
    up-to-garbage conclusions require. Each flag carries a free-form
    evidence note (for example "size-reducing" or "probed to size 4").
    """

    terminating: bool = False
    closed: bool = False
    termination_evidence: str = ""
    closedness_evidence: str = ""


@dataclass(frozen=True, eq=False)
class AnalysisReport:
    """Everything the confluence analysis established about a system."""

    system: GtSystem
    mode: str
    predicate_name: str
    pairs: tuple[CriticalPair, ...]
    verdicts: tuple[PairVerdict, ...]
    non_garbage: tuple[int, ...]
    conclusion: Conclusion
    assumptions: Assumptions
    notes: tuple[str, ...] = ()

    def verdict_for(self, index: int) -> PairVerdict:
        return self.verdicts[index]

    def is_garbage(self, index: int) -> bool:
        return index not in self.non_garbage


def analyze(system: GtSystem, predicate: "LanguagePredicate",
            mode: str = "confluence",
            assumptions: Optional[Assumptions] = None,
            budget: int = DEFAULT_SEARCH_BUDGET,
            pairs: Optional[list[CriticalPair]] = None) -> AnalysisReport:
    """Run the critical pair analysis and draw the strongest sound conclusion.

    Confluence mode: if every non-garbage pair is strongly joinable the
    system is locally confluent on the language; with termination and
    closedness this lifts to confluence up to garbage. A non-garbage
    pair that is provably not joinable refutes local confluence on the
    language. Anything weaker (a pair joinable but not strongly, or a
    search that ran out of budget) is Inconclusive.

    Subcommutativity mode: if every non-garbage pair closes strongly in
    at most one step per side, the system is subcommutative on the
    language, which gives confluence up to garbage whenever closedness
    holds, with no termination requirement.
    """
    if mode not in ("confluence", "subcommutativity"):
        raise ValueError(f"unknown analysis mode {mode!r}")
    assumptions = assumptions or Assumptions()
    if pairs is None:
        pairs = enumerate_critical_pairs(system)
    non_garbage = tuple(p.index for p in filter_non_garbage(pairs, predicate))
    notes: list[str] = []

    if mode == "subcommutativity":
        verdicts = tuple(check_strong_subcommutativity(p, system) for p in pairs)
        relevant = [verdicts[i] for i in non_garbage]
        if all(v.status is Subcommutativity.STRONGLY_SUBCOMMUTATIVE
               for v in relevant):
            if assumptions.closed:
                conclusion = Conclusion.CONFLUENT
                notes.append("subcommutative up to garbage, hence confluent "
                             "up to garbage by closedness")
            else:
                conclusion = Conclusion.SUBCOMMUTATIVE
                notes.append("closedness not assumed; conclusion limited to "
                             "subcommutativity up to garbage")
        else:
            conclusion = Conclusion.INCONCLUSIVE
    else:
        verdicts = tuple(check_strong_joinability(p, system, budget)
                         for p in pairs)
        relevant = [verdicts[i] for i in non_garbage]
        if any(v.status is Joinability.NOT_JOINABLE for v in relevant):
            conclusion = Conclusion.NOT_LOCALLY_CONFLUENT
            notes.append("a non-garbage critical pair has no common reduct")
        elif all(v.status is Joinability.STRONGLY_JOINABLE for v in relevant):
            if assumptions.terminating and assumptions.closed:
                conclusion = Conclusion.CONFLUENT
            else:
                conclusion = Conclusion.LOCALLY_CONFLUENT
                missing = [name for name, have in
                           (("termination", assumptions.terminating),
                            ("closedness", assumptions.closed)) if not have]
                notes.append("not lifted to confluence: missing "
                             + " and ".join(missing))
        else:
            conclusion = Conclusion.INCONCLUSIVE
            weak = [v.pair_index for v in relevant
                    if v.status is not Joinability.STRONGLY_JOINABLE]
            notes.append("pairs without a strong joinability witness: "
                         + ", ".join(map(str, weak)))

    garbage_count = len(pairs) - len(non_garbage)
    if garbage_count:
        notes.append(f"{garbage_count} garbage pair(s) discarded by "
                     f"predicate {predicate.name}")
    return AnalysisReport(system, mode, predicate.name, tuple(pairs),
                          verdicts, non_garbage, conclusion, assumptions,
                          tuple(notes))


@dataclass(frozen=True)
class ProbeResult:
    """A bounded-size host whose two reducts reach different normal forms."""

    host: Graph
    deriv1: DirectDerivation
    deriv2: DirectDerivation
    normal_form1: Graph
    normal_form2: Graph


def confluence_probe(system: GtSystem, max_nodes: int,
                     max_edges: Optional[int] = None,
                     predicate: Optional["LanguagePredicate"] = None,
                     reduce_budget: int = 200) -> Optional[ProbeResult]:
    """Search bounded hosts for a peak with two distinct normal forms.

    Hosts are enumerated up to isomorphism with at most `max_nodes`
    nodes and `max_edges` edges (default max_nodes + 1), restricted to
    the language when a predicate is given. Hosts whose reduction blows
    the step budget are skipped. Returns the first counterexample found,
    or None.
    """
    if max_edges is None:
        max_edges = max_nodes + 1
    for host in enumerate_graphs(system.signature, max_nodes, max_edges):
        if predicate is not None and not predicate(host):
            continue
        forms: dict[bytes, tuple[DirectDerivation, Graph]] = {}
        try:
            for deriv in successors(host, system):
                nf, _ = reduce_to_normal_form(deriv.result, system,
                                              max_steps=reduce_budget)
                forms.setdefault(nf.canonical_key, (deriv, nf))
                if len(forms) > 1:
                    (d1, n1), (d2, n2) = list(forms.values())[:2]
                    return ProbeResult(host, d1, d2, n1, n2)
        except BudgetExhausted:
            continue
    return None
