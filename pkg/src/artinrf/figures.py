"""Matplotlib rendering of Coxeter graphs to image files.

Vertices sit on a circle in sorted order, which keeps output deterministic
without a layout engine.  When a partition is supplied, vertices are coloured
by cell; edge labels sit at edge midpoints.
"""

from __future__ import annotations

import math

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .graph import CoxeterGraph
from .partition import Partition

__all__ = ["render_graph"]

_CELL_CMAP = "tab10"


def _positions(vertices) -> dict[str, tuple[float, float]]:
    n = len(vertices)
    if n == 1:
        return {vertices[0]: (0.0, 0.0)}
    return {
        v: (math.cos(2 * math.pi * i / n - math.pi / 2),
            math.sin(2 * math.pi * i / n - math.pi / 2))
        for i, v in enumerate(vertices)
    }


def render_graph(
    g: CoxeterGraph,
    path,
    partition: Partition | None = None,
    title: str | None = None,
) -> None:
    """Write a PNG (or any savefig-supported format) of the graph."""
    pos = _positions(g.vertices)
    fig, ax = plt.subplots(figsize=(5.0, 5.0))
    for s, t, m in g.edges():
        (x1, y1), (x2, y2) = pos[s], pos[t]
        ax.plot([x1, x2], [y1, y2], color="0.35", linewidth=1.4, zorder=1)
        ax.text(
            (x1 + x2) / 2,
            (y1 + y2) / 2,
            str(m),
            ha="center",
            va="center",
            fontsize=9,
            color="0.15",
            bbox=dict(boxstyle="round,pad=0.15", fc="white", ec="none"),
            zorder=2,
        )
    cmap = plt.get_cmap(_CELL_CMAP)
    if partition is not None:
        colors = [cmap(partition.cell_index(v) % cmap.N) for v in g.vertices]
    else:
        colors = [cmap(0)] * len(g)
    xs = [pos[v][0] for v in g.vertices]
    ys = [pos[v][1] for v in g.vertices]
    ax.scatter(xs, ys, s=600, c=colors, edgecolors="black", linewidths=1.0, zorder=3)
    for v in g.vertices:
        ax.text(pos[v][0], pos[v][1], v, ha="center", va="center", fontsize=10, zorder=4)
    if title:
        ax.set_title(title)
    ax.set_aspect("equal")
    ax.margins(0.15)
    ax.set_axis_off()
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)
