"""Figure rendering and delimited output for CLI report paths.

Graphs are drawn on a circular layout: arcs as arrows labeled with their
color, edges as plain segments, both colored per type.  Report-producing
subcommands write a CSV next to the figures so runs stay diffable.
"""

from __future__ import annotations

import csv
import math
from pathlib import Path
from typing import Iterable, Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
from matplotlib.patches import FancyArrowPatch

from .graph_core import NMGraph

_TYPE_COLORS = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
]


def _circular_layout(n: int) -> list[tuple[float, float]]:
    if n == 1:
        return [(0.0, 0.0)]
    return [
        (math.cos(2 * math.pi * i / n - math.pi / 2),
         math.sin(2 * math.pi * i / n - math.pi / 2))
        for i in range(n)
    ]


def _type_color(alphabet, t: int) -> str:
    if alphabet.is_arc_view(t):
        color_index = (t + 1) // 2 - 1
    else:
        color_index = alphabet.n + (t - 2 * alphabet.n) - 1
    return _TYPE_COLORS[color_index % len(_TYPE_COLORS)]


def draw_graph(g: NMGraph, ax=None, title: str | None = None):
    """Draw a graph: arrows for arcs (labeled by arc color), segments
    for edges (labeled by edge color)."""
    if ax is None:
        _, ax = plt.subplots(figsize=(5, 5))
    a = g.alphabet
    pos = _circular_layout(g.n_vertices)
    for u, v, t in g.adj_entries():
        ui, vi = g.index_of(u), g.index_of(v)
        color = _type_color(a, t)
        if a.is_arc_view(t):
            # orient from the tail: adj(u,v) even means the arc runs u -> v
            tail, head = (ui, vi) if t % 2 == 0 else (vi, ui)
            label = str((t + 1) // 2)
            arrow = FancyArrowPatch(
                pos[tail], pos[head], arrowstyle="-|>", mutation_scale=14,
                color=color, shrinkA=12, shrinkB=12, lw=1.4)
            ax.add_patch(arrow)
        else:
            label = str(t - 2 * a.n)
            ax.plot([pos[ui][0], pos[vi][0]], [pos[ui][1], pos[vi][1]],
                    color=color, lw=1.4, zorder=1)
        mx = (pos[ui][0] + pos[vi][0]) / 2
        my = (pos[ui][1] + pos[vi][1]) / 2
        ax.annotate(label, (mx, my), fontsize=8, color=color,
                    ha="center", va="center",
                    bbox=dict(boxstyle="circle,pad=0.1", fc="white", ec="none", alpha=0.8))
    for (x, y), label in zip(pos, g.labels):
        ax.scatter([x], [y], s=320, color="#f0f0f0", edgecolors="#404040", zorder=2)
        ax.annotate(label, (x, y), fontsize=8, ha="center", va="center", zorder=3)
    ax.set_xlim(-1.35, 1.35)
    ax.set_ylim(-1.35, 1.35)
    ax.set_aspect("equal")
    ax.axis("off")
    if title:
        ax.set_title(title, fontsize=10)
    return ax


def save_graph_figure(g: NMGraph, path: str | Path, title: str | None = None) -> Path:
    path = Path(path)
    fig, ax = plt.subplots(figsize=(5, 5))
    draw_graph(g, ax=ax, title=title)
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)
    return path


def write_csv(path: str | Path, header: Sequence[str], rows: Iterable[Sequence]) -> Path:
    path = Path(path)
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(header)
        writer.writerows(rows)
    return path
