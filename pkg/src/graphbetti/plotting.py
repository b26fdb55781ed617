"""Figure rendering for graphs and support complexes (matplotlib, Agg)."""

from __future__ import annotations

import math
from itertools import combinations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

from .homology import SimplicialComplex
from .multigraph import Multigraph


def circular_layout(names):
    """Positions on the unit circle, one per name, in the given order."""
    n = len(names)
    pos = {}
    for i, name in enumerate(names):
        angle = math.pi / 2 - 2 * math.pi * i / n
        pos[name] = (math.cos(angle), math.sin(angle))
    return pos


def _setup_axes(ax, title):
    ax.set_aspect("equal")
    ax.set_xlim(-1.4, 1.4)
    ax.set_ylim(-1.4, 1.4)
    ax.axis("off")
    if title:
        ax.set_title(title)


def _draw_vertices(ax, pos, emphasized=()):
    for name, (x, y) in pos.items():
        face = "tab:blue" if name in emphasized else "lightgray"
        ax.scatter([x], [y], s=220, zorder=3, color=face,
                   edgecolors="black")
        ax.annotate(name, (x, y), ha="center", va="center", zorder=4)


def draw_graph(g: Multigraph, path, title=None):
    """Render the multigraph with multiplicity labels."""
    fig, ax = plt.subplots(figsize=(4, 4))
    _setup_axes(ax, title)
    pos = circular_layout(g.vertices)
    for pair, m in sorted(g.mult.items(), key=lambda kv: sorted(kv[0])):
        u, v = sorted(pair, key=g.index)
        (x0, y0), (x1, y1) = pos[u], pos[v]
        ax.plot([x0, x1], [y0, y1], color="black", zorder=1)
        if m > 1:
            ax.annotate(str(m), ((x0 + x1) / 2, (y0 + y1) / 2),
                        ha="center", va="center", zorder=2,
                        bbox=dict(boxstyle="circle", fc="white", ec="none"))
    _draw_vertices(ax, pos, emphasized=g.vertices)
    fig.savefig(path, bbox_inches="tight")
    plt.close(fig)


def draw_complex(g: Multigraph, K: SimplicialComplex, path, title=None):
    """Render a support complex on the graph's vertex layout.

    Faces of dimension >= 2 are shown through their shaded triangles;
    edges and vertices are drawn explicitly.
    """
    fig, ax = plt.subplots(figsize=(4, 4))
    _setup_axes(ax, title)
    pos = circular_layout(g.vertices)
    triangles = set()
    for facet in K.facets:
        for tri in combinations(sorted(facet), 3):
            triangles.add(tri)
    for tri in sorted(triangles):
        points = [pos[g.vertices[i]] for i in tri]
        ax.fill([p[0] for p in points], [p[1] for p in points],
                color="tab:blue", alpha=0.2, zorder=0)
    for edge in K.faces_of_dim(1):
        (x0, y0), (x1, y1) = (pos[g.vertices[i]] for i in edge)
        ax.plot([x0, x1], [y0, y1], color="black", zorder=1)
    members = {g.vertices[i] for (i,) in K.faces_of_dim(0)}
    _draw_vertices(ax, pos, emphasized=members)
    fig.savefig(path, bbox_inches="tight")
    plt.close(fig)
