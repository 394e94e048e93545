"""DOT (Graphviz) export for graphs and critical pairs."""

from __future__ import annotations

from .graphs import Graph
from .pairs import CriticalPair, persistent_nodes

_NODE_SHAPE = {"dot": "point", "box": "box", "dia": "diamond"}


def _node_stmt(g: Graph, v: int, prefix: str,
               numbering: dict[int, int]) -> str:
    lab = g.node_label[v]
    text = f"{v}:{lab}"
    if v in numbering:
        text += f" ({numbering[v]})"
    shape = _NODE_SHAPE.get(lab, "ellipse")
    return f'{prefix}{v} [label="{text}", shape={shape}];'


def _edge_stmt(g: Graph, e: int, prefix: str) -> str:
    s, t, lab = g.source[e], g.target[e], g.edge_label[e]
    return f'{prefix}{s} -> {prefix}{t} [label="{lab}"];'


def _graph_body(g: Graph, prefix: str, indent: str,
                numbering: dict[int, int]) -> list[str]:
    lines = [_node_stmt(g, v, prefix, numbering) for v in g.nodes]
    lines += [_edge_stmt(g, e, prefix) for e in g.edges]
    return [indent + line for line in lines]


def graph_to_dot(g: Graph, name: str = "G") -> str:
    """Render one graph as a DOT digraph."""
    body = _graph_body(g, "n", "  ", {})
    if not body:
        return "digraph { }\n"
    return "digraph {\n" + "\n".join(body) + "\n}\n"


def pair_to_dot(pair: CriticalPair) -> str:
    """Render a critical pair as three clusters: H1 <= G => H2.

    Persistent nodes of the overlap are numbered, and the numbering is
    carried to both results along the track morphisms, matching the
    figure style used for pair tables.
    """
    persistent = sorted(persistent_nodes(pair))
    numbering = {v: i + 1 for i, v in enumerate(persistent)}
    d1 = pair.deriv1
    d2 = pair.deriv2
    out = ["digraph {", "  rankdir=LR;"]
    for title, g, prefix, num in (
            ("H1", d1.result, "l",
             {d1.track.node_map[v]: n for v, n in numbering.items()
              if v in d1.track.node_map}),
            ("G", pair.overlap, "g", numbering),
            ("H2", d2.result, "r",
             {d2.track.node_map[v]: n for v, n in numbering.items()
              if v in d2.track.node_map})):
        out.append(f"  subgraph cluster_{prefix} {{")
        out.append(f'    label="{title}";')
        out.extend(_graph_body(g, prefix, "    ", num))
        out.append("  }")
    out.append("}")
    return "\n".join(out) + "\n"


def export_dot(obj: Graph | CriticalPair) -> str:
    """Render a graph or a critical pair to DOT text."""
    if isinstance(obj, CriticalPair):
        return pair_to_dot(obj)
    return graph_to_dot(obj)
