"""Labelled directed multigraphs, morphisms, and canonical forms.

Graphs are immutable. Nodes and edges are identified by small integers
that are local to each graph; morphisms are explicit id-to-id maps.
Parallel edges and loops are allowed.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import permutations, product
from typing import Iterable, Iterator, Optional


@dataclass(frozen=True)
class Signature:
    """A pair of finite label alphabets, one for nodes and one for edges."""

    node_labels: frozenset[str]
    edge_labels: frozenset[str]

    @staticmethod
    def of(node_labels: Iterable[str], edge_labels: Iterable[str]) -> Signature:
        return Signature(frozenset(node_labels), frozenset(edge_labels))

    def union(self, other: Signature) -> Signature:
        return Signature(self.node_labels | other.node_labels,
                         self.edge_labels | other.edge_labels)

    def restrict(self, drop_node: Iterable[str] = (), drop_edge: Iterable[str] = ()) -> Signature:
        return Signature(self.node_labels - frozenset(drop_node),
                         self.edge_labels - frozenset(drop_edge))


@dataclass(frozen=True, eq=False)
class Graph:
    """An immutable directed multigraph with labelled nodes and edges.

    `node_rows` holds (id, label) pairs and `edge_rows` holds
    (id, source, target, label) quadruples, both sorted by id.
    """

    signature: Signature
    node_rows: tuple[tuple[int, str], ...]
    edge_rows: tuple[tuple[int, int, int, str], ...]

    @cached_property
    def node_label(self) -> dict[int, str]:
        return {v: lab for v, lab in self.node_rows}

    @cached_property
    def source(self) -> dict[int, int]:
        return {e: s for e, s, _, _ in self.edge_rows}

    @cached_property
    def target(self) -> dict[int, int]:
        return {e: t for e, _, t, _ in self.edge_rows}

    @cached_property
    def edge_label(self) -> dict[int, str]:
        return {e: lab for e, _, _, lab in self.edge_rows}

    @property
    def nodes(self) -> tuple[int, ...]:
        return tuple(v for v, _ in self.node_rows)

    @property
    def edges(self) -> tuple[int, ...]:
        return tuple(e for e, _, _, _ in self.edge_rows)

    @cached_property
    def size(self) -> int:
        """Total number of items (nodes plus edges)."""
        return len(self.node_rows) + len(self.edge_rows)

    def out_edges(self, v: int) -> tuple[int, ...]:
        return tuple(e for e, s, _, _ in self.edge_rows if s == v)

    def in_edges(self, v: int) -> tuple[int, ...]:
        return tuple(e for e, _, t, _ in self.edge_rows if t == v)

    def incident_edges(self, v: int) -> tuple[int, ...]:
        return tuple(e for e, s, t, _ in self.edge_rows if s == v or t == v)

    @cached_property
    def canonical_key(self) -> bytes:
        return canonical_key(self)

    def __repr__(self) -> str:
        ns = ", ".join(f"{v}:{lab}" for v, lab in self.node_rows)
        es = ", ".join(f"{e}:{s}-{lab}->{t}" for e, s, t, lab in self.edge_rows)
        return f"Graph([{ns}], [{es}])"


def graph(signature: Signature,
          nodes: Iterable[tuple[int, str]],
          edges: Iterable[tuple[int, int, int, str]] = ()) -> Graph:
    """Build a graph from (id, label) and (id, src, tgt, label) rows."""
    g = Graph(signature,
              tuple(sorted(nodes)),
              tuple(sorted(edges)))
    defects = validate(g)
    if defects:
        raise ValueError("malformed graph: " + "; ".join(defects))
    return g


def validate(g: Graph) -> list[str]:
    """Return a list of well-formedness defects; an empty list means valid."""
    defects: list[str] = []
    seen_nodes: set[int] = set()
    for v, lab in g.node_rows:
        if v in seen_nodes:
            defects.append(f"duplicate node id {v}")
        seen_nodes.add(v)
        if lab not in g.signature.node_labels:
            defects.append(f"node {v} has label {lab!r} outside the signature")
    seen_edges: set[int] = set()
    for e, s, t, lab in g.edge_rows:
        if e in seen_edges:
            defects.append(f"duplicate edge id {e}")
        seen_edges.add(e)
        if s not in seen_nodes:
            defects.append(f"edge {e} has dangling source {s}")
        if t not in seen_nodes:
            defects.append(f"edge {e} has dangling target {t}")
        if lab not in g.signature.edge_labels:
            defects.append(f"edge {e} has label {lab!r} outside the signature")
    return defects


@dataclass(frozen=True, eq=False)
class Morphism:
    """A structure-preserving map between graphs, given by explicit id maps.

    A morphism may be partial (defined on a subset of the domain's items).
    """

    domain: Graph
    codomain: Graph
    node_map: dict[int, int]
    edge_map: dict[int, int]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Morphism):
            return NotImplemented
        return (self.domain is other.domain and self.codomain is other.codomain
                and self.node_map == other.node_map and self.edge_map == other.edge_map)

    def __hash__(self) -> int:
        return hash((id(self.domain), id(self.codomain),
                     tuple(sorted(self.node_map.items())),
                     tuple(sorted(self.edge_map.items()))))

    def is_total(self) -> bool:
        return (len(self.node_map) == len(self.domain.node_rows)
                and len(self.edge_map) == len(self.domain.edge_rows))

    def is_injective(self) -> bool:
        return (len(set(self.node_map.values())) == len(self.node_map)
                and len(set(self.edge_map.values())) == len(self.edge_map))

    def check(self) -> list[str]:
        """Return structure-preservation defects; empty means well-formed."""
        g, h = self.domain, self.codomain
        defects: list[str] = []
        for v, w in self.node_map.items():
            if v not in g.node_label or w not in h.node_label:
                defects.append(f"node map {v}->{w} leaves the graphs")
            elif g.node_label[v] != h.node_label[w]:
                defects.append(f"node map {v}->{w} changes label")
        for e, f in self.edge_map.items():
            if e not in g.edge_label or f not in h.edge_label:
                defects.append(f"edge map {e}->{f} leaves the graphs")
                continue
            if g.edge_label[e] != h.edge_label[f]:
                defects.append(f"edge map {e}->{f} changes label")
            if g.source[e] not in self.node_map or g.target[e] not in self.node_map:
                defects.append(f"edge map {e}->{f} defined where node map is not")
                continue
            if self.node_map[g.source[e]] != h.source[f]:
                defects.append(f"edge map {e}->{f} breaks sources")
            if self.node_map[g.target[e]] != h.target[f]:
                defects.append(f"edge map {e}->{f} breaks targets")
        return defects

    def compose(self, after: Morphism) -> Morphism:
        """Return `after` composed with self (self first), on the common part."""
        return Morphism(
            self.domain, after.codomain,
            {v: after.node_map[w] for v, w in self.node_map.items()
             if w in after.node_map},
            {e: after.edge_map[f] for e, f in self.edge_map.items()
             if f in after.edge_map})

    def node_image(self) -> frozenset[int]:
        return frozenset(self.node_map.values())

    def edge_image(self) -> frozenset[int]:
        return frozenset(self.edge_map.values())


def identity(g: Graph) -> Morphism:
    return Morphism(g, g, {v: v for v in g.nodes}, {e: e for e in g.edges})


def inclusion(sub: Graph, sup: Graph) -> Morphism:
    """The identity-on-ids inclusion of `sub` into `sup`."""
    m = Morphism(sub, sup, {v: v for v in sub.nodes}, {e: e for e in sub.edges})
    defects = m.check()
    if defects:
        raise ValueError("not a subgraph inclusion: " + "; ".join(defects))
    return m


def enumerate_monomorphisms(pattern: Graph, host: Graph,
                            fixed_nodes: Optional[dict[int, int]] = None) -> Iterator[Morphism]:
    """Yield all injective total morphisms pattern -> host.

    The order is deterministic: node assignments are explored by ascending
    pattern node id and ascending host candidate id, then edge assignments
    by ascending pattern edge id.

    `fixed_nodes` optionally pins part of the node map in advance.
    """
    pnodes = sorted(pattern.nodes)
    if len(pnodes) > len(host.node_rows) or len(pattern.edge_rows) > len(host.edge_rows):
        return

    # Host adjacency index: (src, tgt, label) -> sorted edge ids.
    host_slots: dict[tuple[int, int, str], list[int]] = {}
    for e, s, t, lab in host.edge_rows:
        host_slots.setdefault((s, t, lab), []).append(e)

    fixed = dict(fixed_nodes or {})

    def assign_nodes(i: int, nmap: dict[int, int], used: set[int]) -> Iterator[dict[int, int]]:
        if i == len(pnodes):
            yield dict(nmap)
            return
        v = pnodes[i]
        lab = pattern.node_label[v]
        if v in fixed:
            candidates = [fixed[v]]
        else:
            candidates = [w for w in host.nodes if w not in used
                          and host.node_label[w] == lab]
        for w in candidates:
            if w in used or host.node_label.get(w) != lab:
                continue
            nmap[v] = w
            used.add(w)
            yield from assign_nodes(i + 1, nmap, used)
            del nmap[v]
            used.discard(w)

    pedges = sorted(pattern.edges)

    def assign_edges(i: int, nmap: dict[int, int],
                     emap: dict[int, int], used: set[int]) -> Iterator[dict[int, int]]:
        if i == len(pedges):
            yield dict(emap)
            return
        e = pedges[i]
        slot = (nmap[pattern.source[e]], nmap[pattern.target[e]], pattern.edge_label[e])
        for f in host_slots.get(slot, ()):
            if f in used:
                continue
            emap[e] = f
            used.add(f)
            yield from assign_edges(i + 1, nmap, emap, used)
            del emap[e]
            used.discard(f)

    for nmap in assign_nodes(0, {}, set()):
        for emap in assign_edges(0, nmap, {}, set()):
            yield Morphism(pattern, host, nmap, emap)


def find_isomorphism(g: Graph, h: Graph) -> Optional[Morphism]:
    """Return an isomorphism g -> h, or None if the graphs are not isomorphic."""
    if len(g.node_rows) != len(h.node_rows) or len(g.edge_rows) != len(h.edge_rows):
        return None
    if _profile(g) != _profile(h):
        return None
    # With equal item counts, any monomorphism is bijective.
    return next(enumerate_monomorphisms(g, h), None)


def isomorphic(g: Graph, h: Graph) -> bool:
    return find_isomorphism(g, h) is not None


def _profile(g: Graph) -> tuple:
    """A cheap isomorphism invariant used for pre-filtering."""
    node_stats = sorted(
        (lab, len(g.out_edges(v)), len(g.in_edges(v)))
        for v, lab in g.node_rows)
    edge_stats = sorted(
        (lab, g.node_label[s], g.node_label[t], s == t)
        for _, s, t, lab in g.edge_rows)
    return (tuple(node_stats), tuple(edge_stats))


def enumerate_graphs(signature: Signature, max_nodes: int,
                     max_edges: int) -> Iterator[Graph]:
    """Yield one representative per isomorphism class of bounded graphs.

    Covers every graph with at most `max_nodes` nodes and `max_edges`
    edges over the signature. Generation proceeds by adding edges to
    node-labelled seeds, deduplicating by canonical key at each level so
    isomorphic intermediates are expanded only once.
    """
    node_labs = sorted(signature.node_labels)
    edge_labs = sorted(signature.edge_labels)

    seeds: list[Graph] = []
    seen: set[bytes] = set()
    for n in range(max_nodes + 1):
        for labs in _label_multisets(node_labs, n):
            g = graph(signature, [(i, lab) for i, lab in enumerate(labs)])
            key = g.canonical_key
            if key not in seen:
                seen.add(key)
                seeds.append(g)

    level = seeds
    yield from level
    for _ in range(max_edges):
        nxt: list[Graph] = []
        for g in level:
            eid = len(g.edge_rows)
            for s in g.nodes:
                for t in g.nodes:
                    for lab in edge_labs:
                        h = graph(signature, g.node_rows,
                                  g.edge_rows + ((eid, s, t, lab),))
                        key = h.canonical_key
                        if key not in seen:
                            seen.add(key)
                            nxt.append(h)
        yield from nxt
        level = nxt


def _label_multisets(labels: list[str], n: int) -> Iterator[tuple[str, ...]]:
    """Non-decreasing label tuples of length n (multisets over the alphabet)."""
    if n == 0:
        yield ()
        return
    for i, lab in enumerate(labels):
        for rest in _label_multisets(labels[i:], n - 1):
            yield (lab,) + rest


def canonical_key(g: Graph, decoration: Optional[dict[int, object]] = None) -> bytes:
    """A bytes key equal for two graphs iff they are isomorphic.

    `decoration` optionally attaches extra per-node marks that any key-equal
    witness isomorphism must preserve; decorated keys are equal iff there is
    an isomorphism mapping equally marked nodes to each other.
    """
    deco = decoration or {}

    def mark(v: int) -> object:
        return deco.get(v)

    # Initial partition by (label, mark, degree statistics), refined by
    # neighbourhood colours until stable.
    colour = {v: (g.node_label[v], repr(mark(v)),
                  len(g.out_edges(v)), len(g.in_edges(v)))
              for v in g.nodes}
    for _ in range(len(g.node_rows)):
        nxt = {}
        for v in g.nodes:
            outs = sorted((g.edge_label[e], colour[g.target[e]]) for e in g.out_edges(v))
            ins = sorted((g.edge_label[e], colour[g.source[e]]) for e in g.in_edges(v))
            nxt[v] = (colour[v], tuple(outs), tuple(ins))
        if len(set(nxt.values())) == len(set(colour.values())):
            colour = nxt
            break
        colour = nxt

    cells: dict[object, list[int]] = {}
    for v in sorted(g.nodes):
        cells.setdefault(colour[v], []).append(v)
    ordered_cells = [cells[c] for c in sorted(cells, key=repr)]

    best: Optional[tuple] = None
    for perm_choice in product(*(permutations(cell) for cell in ordered_cells)):
        order = [v for cell in perm_choice for v in cell]
        index = {v: i for i, v in enumerate(order)}
        node_part = tuple((g.node_label[v], repr(mark(v))) for v in order)
        edge_part = tuple(sorted(
            (index[s], index[t], lab) for _, s, t, lab in g.edge_rows))
        enc = (node_part, edge_part)
        if best is None or enc < best:
            best = enc
    return repr(best).encode()
