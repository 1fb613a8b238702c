"""PNG figures for the command-line reports (matplotlib, non-interactive backend)."""

from __future__ import annotations

import math
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .poset import CellPoset  # noqa: E402
from .toric import LatticePolytope  # noqa: E402


def hasse_diagram(p: CellPoset, path: str | Path, title: str = "") -> Path:
    """Draw the cover graph with cells placed in rows by dimension."""
    path = Path(path)
    rows: dict[int, list[int]] = {}
    for i, c in enumerate(p.elements):
        rows.setdefault(c.dim, []).append(i)
    pos = {}
    for d, idx in rows.items():
        for k, i in enumerate(idx):
            pos[i] = ((k + 1) / (len(idx) + 1), d)
    width = max(6.0, 0.35 * max(len(v) for v in rows.values()))
    fig, ax = plt.subplots(figsize=(width, 1.2 * len(rows) + 1))
    for i, j in p.covers:
        ax.plot([pos[i][0], pos[j][0]], [pos[i][1], pos[j][1]], color="0.6", lw=0.6, zorder=1)
    xs = [pos[i][0] for i in range(len(p))]
    ys = [pos[i][1] for i in range(len(p))]
    ax.scatter(xs, ys, s=18, color="k", zorder=2)
    if len(p) <= 40:
        for i, c in enumerate(p.elements):
            ax.annotate(c.label(), pos[i], fontsize=6, ha="center", va="bottom",
                        xytext=(0, 3), textcoords="offset points")
    ax.set_yticks(sorted(rows))
    ax.set_ylabel("dimension")
    ax.set_xticks([])
    ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def polytope_projection(poly: LatticePolytope, path: str | Path, title: str = "") -> Path:
    """Edges of the polytope under a fixed generic linear map to the plane."""
    path = Path(path)
    d = poly.ambient_dim
    # fixed projection directions so that the picture is reproducible
    u = [math.cos(0.7 * k + 0.3) for k in range(d)]
    v = [math.sin(1.3 * k + 0.1) for k in range(d)]

    def proj(pt):
        return (sum(a * b for a, b in zip(u, pt)), sum(a * b for a, b in zip(v, pt)))

    fig, ax = plt.subplots(figsize=(5, 5))
    faces = poly.faces
    for F in faces:
        if len(F) >= 2 and poly.face_dim(F) == 1:
            verts = [poly.points[i] for i in F]
            a, b = min(verts), max(verts)
            (x0, y0), (x1, y1) = proj(a), proj(b)
            ax.plot([x0, x1], [y0, y1], color="0.3", lw=0.8)
    pts = [proj(p) for p in poly.points]
    ax.scatter([p[0] for p in pts], [p[1] for p in pts], s=8, color="tab:blue", zorder=3)
    vs = [proj(p) for p in poly.vertices]
    ax.scatter([p[0] for p in vs], [p[1] for p in vs], s=20, color="tab:red", zorder=4)
    ax.set_aspect("equal")
    ax.axis("off")
    ax.set_title(title or f"dim {poly.dim}, {len(poly.vertices)} vertices")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
