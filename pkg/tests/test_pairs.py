"""Critical pair machinery tests.

The completeness property checks that every conflicting pair of
derivations on a small host embeds one of the enumerated critical
pairs via a monomorphism commuting with the matches.
"""

from gtx.cases import build
from gtx.graphs import (Morphism, Signature, enumerate_graphs,
                        enumerate_monomorphisms, graph)
from gtx.pairs import (check_strong_joinability, check_strong_subcommutativity,
                       enumerate_critical_pairs, enumerate_gluings,
                       pairs_isomorphic, parallel_independent,
                       persistent_nodes)
from gtx.rules import GtSystem, all_derivations

AB = Signature.of(["dot"], ["a", "b"])


def test_gluings_of_single_edges():
    """Two one-edge graphs glue along subsets of an item correspondence.

    For L1 = L2 = a single a-edge, the gluings are: disjoint union,
    one shared endpoint (four ways), two shared endpoints (parallel
    edges, two ways), two shared endpoints crossed plus nothing, and
    the full identification. Checked by count and joint surjectivity.
    """
    e = graph(AB, [(1, "dot"), (2, "dot")], [(0, 1, 2, "a")])
    gluings = enumerate_gluings(e, e)
    for overlap, m1, m2 in gluings:
        assert m1.check() == [] and m2.check() == []
        covered_nodes = m1.node_image() | m2.node_image()
        covered_edges = m1.edge_image() | m2.edge_image()
        assert covered_nodes == frozenset(overlap.nodes)
        assert covered_edges == frozenset(overlap.edges)
    # node correspondences: empty, 1~1', 1~2', 2~1', 2~2', both straight,
    # both crossed; edge sharing possible only for the straight matching
    assert len(gluings) == 8


def test_critical_pairs_exclude_independent_gluings():
    case = build("eg_1")
    pairs = enumerate_critical_pairs(case.system)
    assert len(pairs) == 1
    p = pairs[0]
    assert not parallel_independent(p.deriv1, p.deriv2)
    assert persistent_nodes(p) == p.persistent


def test_pair_isomorphism_quotient_is_sound():
    """Re-enumerating must not depend on rule order for the pair count."""
    case = build("eg_6")
    system = case.system
    flipped = GtSystem(system.name, system.signature,
                       tuple(reversed(system.rules)))
    assert len(enumerate_critical_pairs(system)) == \
        len(enumerate_critical_pairs(flipped))


def test_completeness_on_small_hosts():
    """Every conflicting derivation pair embeds an enumerated critical pair.

    Exhaustive over hosts with at most 4 nodes and 3 edges for the
    two-rule system of the smallest case study.
    """
    case = build("eg_1")
    system = case.system
    pairs = enumerate_critical_pairs(system)
    checked = 0
    for host in enumerate_graphs(AB, 4, 3):
        derivs = list(all_derivations(host, system))
        for i, d1 in enumerate(derivs):
            for d2 in derivs:
                if d1 is d2 or parallel_independent(d1, d2):
                    continue
                m1 = d1.match.morphism
                m2 = d2.match.morphism
                found = False
                for p in pairs:
                    for ordering in ((p.match1, p.match2),
                                     (p.match2, p.match1)):
                        pm1, pm2 = ordering
                        for emb in enumerate_monomorphisms(p.overlap, host):
                            if pm1.compose(emb) == m1 and \
                                    pm2.compose(emb) == m2:
                                found = True
                                break
                        if found:
                            break
                    if found:
                        break
                assert found, (host, d1.rule.name, d2.rule.name)
                checked += 1
    assert checked > 0


def test_strong_joinability_verdicts():
    case = build("eg_1")
    system = case.system
    p = enumerate_critical_pairs(system)[0]
    v = check_strong_joinability(p, system)
    assert v.label == "JoinableNotStrong"
    s = check_strong_subcommutativity(p, system)
    assert s.label == "NotStronglySubcommutative"


def test_pairs_isomorphic_respects_matches():
    case = build("sp")
    pairs = enumerate_critical_pairs(case.system)
    for i, p in enumerate(pairs):
        for j, q in enumerate(pairs):
            assert pairs_isomorphic(p, q) == (i == j)
