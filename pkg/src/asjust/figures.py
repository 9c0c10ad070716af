"""Render e-graphs to image files with matplotlib.

Layout is a layered DAG: nodes sit on rows by BFS depth from the root, cycle
edges simply route back up.  Positive edges are drawn solid, negative edges
dashed; assume/top/bot get square boxes, mirroring the DOT export.
"""

from __future__ import annotations

from collections import deque
from typing import Optional

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
from matplotlib.patches import FancyArrowPatch

from .egraph import EGraph, ENode, Marker


def _layers(g: EGraph) -> dict[ENode, int]:
    depth: dict[ENode, int] = {}
    roots = [g.root] if g.root is not None else []
    roots += [n for n in sorted(g.nodes) if n not in {e.dst for e in g.edges}]
    queue = deque()
    for r in roots:
        if r not in depth:
            depth[r] = 0
            queue.append(r)
    while queue:
        n = queue.popleft()
        for e in g.outgoing(n):
            if e.dst not in depth:
                depth[e.dst] = depth[n] + 1
                queue.append(e.dst)
    for n in g.nodes:  # unreachable leftovers still get a row
        depth.setdefault(n, 0)
    return depth


def _positions(g: EGraph) -> dict[ENode, tuple[float, float]]:
    depth = _layers(g)
    rows: dict[int, list[ENode]] = {}
    for n, d in depth.items():
        rows.setdefault(d, []).append(n)
    pos = {}
    for d, nodes in rows.items():
        nodes.sort()
        for i, n in enumerate(nodes):
            pos[n] = (i - (len(nodes) - 1) / 2.0, -d)
    return pos


def render_egraph(g: EGraph, path: str, title: Optional[str] = None) -> None:
    """Draw the graph and save it to `path` (format from the extension)."""
    pos = _positions(g)
    n_rows = 1 + max((abs(y) for _, y in pos.values()), default=0)
    n_cols = max(
        (len([p for p in pos.values() if p[1] == y]) for y in {p[1] for p in pos.values()}),
        default=1,
    )
    fig, ax = plt.subplots(figsize=(2.2 + 1.6 * n_cols, 1.6 + 1.1 * n_rows))
    ax.axis("off")
    for e in sorted(g.edges):
        x1, y1 = pos[e.src]
        x2, y2 = pos[e.dst]
        style = "-" if e.sign == "+" else "--"
        rad = 0.25 if (y2 >= y1 or e.src == e.dst) else 0.0
        arrow = FancyArrowPatch(
            (x1, y1),
            (x2, y2),
            connectionstyle=f"arc3,rad={rad}",
            arrowstyle="-|>",
            mutation_scale=14,
            linestyle=style,
            color="black",
            shrinkA=16,
            shrinkB=16,
        )
        ax.add_patch(arrow)
        ax.annotate(
            e.sign,
            ((x1 + x2) / 2, (y1 + y2) / 2),
            fontsize=9,
            ha="center",
            va="bottom",
            color="dimgray",
        )
    for n, (x, y) in pos.items():
        if n.is_annotated:
            box = dict(boxstyle="round,pad=0.35", fc="#cfe3ff" if n.kind.value == "pos" else "#ffd9d2", ec="black")
            label = n.label
        else:
            box = dict(boxstyle="square,pad=0.35", fc="#eeeeee", ec="black")
            label = str(Marker(n.kind.value))
        weight = "bold" if n == g.root else "normal"
        ax.annotate(
            label, (x, y), ha="center", va="center", bbox=box, fontsize=11, fontweight=weight
        )
    xs = [x for x, _ in pos.values()] or [0]
    ys = [y for _, y in pos.values()] or [0]
    ax.set_xlim(min(xs) - 0.9, max(xs) + 0.9)
    ax.set_ylim(min(ys) - 0.7, max(ys) + 0.7)
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
