"""DOT export tests."""

from gtx.cases import build
from gtx.dot import export_dot, graph_to_dot, pair_to_dot
from gtx.graphs import Signature, graph
from gtx.pairs import enumerate_critical_pairs

UNIT = Signature.of(["dot"], ["plain"])


def test_empty_graph():
    g = graph(UNIT, [])
    assert graph_to_dot(g).split() == ["digraph", "{", "}"]


def test_single_edge_graph():
    g = graph(UNIT, [(1, "dot"), (2, "dot")], [(0, 1, 2, "plain")])
    text = export_dot(g)
    assert text.count("->") == 1
    assert 'label="plain"' in text
    assert text.startswith("digraph {")


def test_pair_renders_three_clusters_with_numbered_nodes():
    case = build("eg_1")
    pairs = enumerate_critical_pairs(case.system)
    assert len(pairs) == 1
    text = pair_to_dot(pairs[0])
    for cluster in ("cluster_l", "cluster_g", "cluster_r"):
        assert cluster in text
    for title in ("H1", "G", "H2"):
        assert f'label="{title}"' in text
    # the persistent nodes carry their shared numbering in all clusters
    assert text.count("(1)") >= 3
