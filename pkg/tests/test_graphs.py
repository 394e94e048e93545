"""Graph, morphism, and canonical form tests.

The canonical key and monomorphism enumeration are checked against
brute-force reference implementations on exhaustively enumerated small
graphs.
"""

from itertools import permutations

import pytest

from gtx.graphs import (Graph, Morphism, Signature, canonical_key,
                        enumerate_graphs, enumerate_monomorphisms,
                        find_isomorphism, graph, identity, inclusion,
                        isomorphic, validate)

AB = Signature.of(["dot"], ["a", "b"])
UNIT = Signature.of(["dot"], ["plain"])


def brute_isomorphic(g: Graph, h: Graph) -> bool:
    """Reference isomorphism test by trying every node bijection."""
    if len(g.node_rows) != len(h.node_rows) or \
            len(g.edge_rows) != len(h.edge_rows):
        return False
    gn, hn = list(g.nodes), list(h.nodes)
    for perm in permutations(hn):
        nmap = dict(zip(gn, perm))
        if any(g.node_label[v] != h.node_label[nmap[v]] for v in gn):
            continue
        gm = sorted((nmap[s], nmap[t], lab) for _, s, t, lab in g.edge_rows)
        hm = sorted((s, t, lab) for _, s, t, lab in h.edge_rows)
        if gm == hm:
            return True
    return False


def test_graph_accessors():
    g = graph(AB, [(1, "dot"), (2, "dot")], [(0, 1, 2, "a"), (1, 2, 2, "b")])
    assert g.nodes == (1, 2)
    assert g.edges == (0, 1)
    assert g.size == 4
    assert g.out_edges(2) == (1,)
    assert g.in_edges(2) == (0, 1)
    assert g.incident_edges(1) == (0,)


def test_validate_rejects_dangling_and_labels():
    bad = Graph(AB, ((1, "dot"),), ((0, 1, 9, "a"),))
    assert any("dangling" in d for d in validate(bad))
    bad = Graph(AB, ((1, "mystery"),), ())
    assert any("outside the signature" in d for d in validate(bad))
    with pytest.raises(ValueError):
        graph(AB, [(1, "dot"), (1, "dot")])


def test_morphism_check_and_compose():
    g = graph(AB, [(1, "dot"), (2, "dot")], [(0, 1, 2, "a")])
    h = graph(AB, [(5, "dot"), (6, "dot"), (7, "dot")],
              [(3, 5, 6, "a"), (4, 6, 7, "a")])
    m = Morphism(g, h, {1: 5, 2: 6}, {0: 3})
    assert m.check() == []
    assert m.is_total() and m.is_injective()
    broken = Morphism(g, h, {1: 5, 2: 7}, {0: 3})
    assert broken.check() != []
    assert identity(g).compose(m).node_map == m.node_map
    assert inclusion(g, g).edge_map == {0: 0}


def test_monomorphism_enumeration_matches_brute_force():
    """Count embeddings by trying all injective node maps directly."""
    pattern = graph(AB, [(1, "dot"), (2, "dot")], [(0, 1, 2, "a")])
    hosts = list(enumerate_graphs(AB, 3, 3))
    for host in hosts:
        got = list(enumerate_monomorphisms(pattern, host))
        for m in got:
            assert m.check() == []
            assert m.is_injective() and m.is_total()
        expected = 0
        for vs in permutations(host.nodes, 2):
            nmap = dict(zip((1, 2), vs))
            slots = [e for e, s, t, lab in host.edge_rows
                     if s == nmap[1] and t == nmap[2] and lab == "a"]
            expected += len(slots)
        assert len(got) == expected


def test_canonical_key_agrees_with_brute_isomorphism():
    """Key equality must coincide with isomorphism on all small graphs.

    Exhaustive over representatives with at most 4 nodes and 4 edges,
    plus relabelled copies to exercise nontrivial witnesses.
    """
    reps = list(enumerate_graphs(AB, 3, 3))
    for g in reps:
        shifted = graph(AB, [(v + 10, lab) for v, lab in g.node_rows],
                        [(e + 10, s + 10, t + 10, lab)
                         for e, s, t, lab in g.edge_rows])
        assert canonical_key(g) == canonical_key(shifted)
        assert isomorphic(g, shifted)
    keys = [canonical_key(g) for g in reps]
    assert len(set(keys)) == len(keys), \
        "enumeration emitted two isomorphic representatives"
    for i, g in enumerate(reps):
        for h in reps[i + 1:]:
            assert not brute_isomorphic(g, h)


def test_decorated_key_distinguishes_marked_nodes():
    g = graph(UNIT, [(0, "dot"), (1, "dot")], [(0, 0, 1, "plain")])
    plain = canonical_key(g)
    marked_src = canonical_key(g, {0: "x"})
    marked_tgt = canonical_key(g, {1: "x"})
    assert plain != marked_src
    assert marked_src != marked_tgt


def test_find_isomorphism_returns_witness():
    g = graph(AB, [(0, "dot"), (1, "dot")], [(0, 0, 1, "a")])
    h = graph(AB, [(3, "dot"), (4, "dot")], [(7, 4, 3, "a")])
    w = find_isomorphism(g, h)
    assert w is not None and w.check() == []
    assert w.node_map == {0: 4, 1: 3}
    loop = graph(AB, [(0, "dot")], [(0, 0, 0, "a")])
    assert find_isomorphism(g, loop) is None


def test_enumerate_graphs_counts():
    # 0..2 unlabelled nodes, no edges: 3 graphs
    assert sum(1 for _ in enumerate_graphs(UNIT, 2, 0)) == 3
    # single-node graphs with up to 2 plain loops: empty, dot, loop, double loop
    gs = list(enumerate_graphs(UNIT, 1, 2))
    assert len(gs) == 4
