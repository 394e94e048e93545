"""Matplotlib rendering of graphs, critical pairs, and analysis summaries.

Figures are written as PNG files next to the delimited report output.
Layouts are deliberately simple (circular), since every graph involved
is small; the point is a quick visual check, not typography.
"""

from __future__ import annotations

import math
from pathlib import Path
from typing import Optional

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
from matplotlib.patches import FancyArrowPatch

from .graphs import Graph
from .pairs import AnalysisReport, CriticalPair, persistent_nodes

_NODE_COLOUR = {"dot": "#404040", "box": "#4878cf", "dia": "#d65f5f"}
_EDGE_COLOUR = {"t": "#2ca02c", "f": "#d62728"}


def _layout(g: Graph) -> dict[int, tuple[float, float]]:
    nodes = sorted(g.nodes)
    if not nodes:
        return {}
    if len(nodes) == 1:
        return {nodes[0]: (0.0, 0.0)}
    return {v: (math.cos(2 * math.pi * i / len(nodes)),
                math.sin(2 * math.pi * i / len(nodes)))
            for i, v in enumerate(nodes)}


def draw_graph(ax: "plt.Axes", g: Graph, title: str = "",
               numbering: Optional[dict[int, int]] = None) -> None:
    """Draw one graph onto an axis."""
    numbering = numbering or {}
    pos = _layout(g)
    ax.set_title(title, fontsize=9)
    ax.set_xlim(-1.6, 1.6)
    ax.set_ylim(-1.6, 1.6)
    ax.set_aspect("equal")
    ax.axis("off")

    seen: dict[tuple[int, int], int] = {}
    for e, s, t, lab in g.edge_rows:
        rank = seen.get((s, t), 0)
        seen[(s, t)] = rank + 1
        colour = _EDGE_COLOUR.get(lab, "#606060")
        if s == t:
            x, y = pos[s]
            loop = plt.Circle((x, y + 0.22), 0.18, fill=False,
                              color=colour, linewidth=1.2)
            ax.add_patch(loop)
            ax.annotate(lab, (x, y + 0.48), fontsize=7,
                        color=colour, ha="center")
            continue
        bend = 0.15 + 0.18 * rank
        arrow = FancyArrowPatch(pos[s], pos[t], arrowstyle="-|>",
                                connectionstyle=f"arc3,rad={bend}",
                                mutation_scale=12, color=colour,
                                shrinkA=10, shrinkB=10, linewidth=1.2)
        ax.add_patch(arrow)
        mx = (pos[s][0] + pos[t][0]) / 2
        my = (pos[s][1] + pos[t][1]) / 2
        ax.annotate(lab, (mx, my + bend), fontsize=7,
                    color=colour, ha="center")

    for v, lab in g.node_rows:
        x, y = pos[v]
        ax.scatter([x], [y], s=240, zorder=3,
                   color=_NODE_COLOUR.get(lab, "#808080"))
        text = str(numbering[v]) if v in numbering else str(v)
        ax.annotate(text, (x, y), fontsize=7, color="white",
                    ha="center", va="center", zorder=4)


def render_graph(g: Graph, path: Path, title: str = "") -> Path:
    """Write one graph as a PNG file."""
    fig, ax = plt.subplots(figsize=(3.2, 3.2))
    draw_graph(ax, g, title)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def render_pair(pair: CriticalPair, verdict_label: str, garbage: bool,
                path: Path) -> Path:
    """Write a critical pair as H1 <= G => H2 with numbered persistent nodes."""
    numbering = {v: i + 1 for i, v in enumerate(sorted(persistent_nodes(pair)))}
    d1, d2 = pair.deriv1, pair.deriv2
    fig, axes = plt.subplots(1, 3, figsize=(9.0, 3.2))
    draw_graph(axes[0], d1.result, f"H1 ({pair.rule1.name})",
               {d1.track.node_map[v]: n for v, n in numbering.items()
                if v in d1.track.node_map})
    tag = "garbage" if garbage else verdict_label
    draw_graph(axes[1], pair.overlap, f"pair {pair.index}: G [{tag}]",
               numbering)
    draw_graph(axes[2], d2.result, f"H2 ({pair.rule2.name})",
               {d2.track.node_map[v]: n for v, n in numbering.items()
                if v in d2.track.node_map})
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def render_report(report: AnalysisReport, directory: Path) -> list[Path]:
    """Write one figure per critical pair plus a verdict summary chart."""
    directory.mkdir(parents=True, exist_ok=True)
    written: list[Path] = []
    for pair, verdict in zip(report.pairs, report.verdicts):
        out = directory / f"pair_{pair.index:02d}.png"
        render_pair(pair, verdict.label, report.is_garbage(pair.index), out)
        written.append(out)

    counts: dict[str, int] = {}
    for pair, verdict in zip(report.pairs, report.verdicts):
        key = verdict.label + (" (garbage)" if report.is_garbage(pair.index)
                               else "")
        counts[key] = counts.get(key, 0) + 1
    fig, ax = plt.subplots(figsize=(6.0, 3.0))
    labels = sorted(counts)
    ax.barh(labels, [counts[k] for k in labels], color="#4878cf")
    ax.set_xlabel("critical pairs")
    ax.set_title(f"{report.system.name}: {report.conclusion.value}",
                 fontsize=10)
    fig.tight_layout()
    summary = directory / "summary.png"
    fig.savefig(summary, dpi=120)
    plt.close(fig)
    written.append(summary)
    return written
