"""PNG figures for sweep curves and rank tables.

Figures are built on ``matplotlib.figure.Figure`` with the Agg canvas, so
nothing touches pyplot's global state or needs a display.
"""

from __future__ import annotations

from pathlib import Path
from typing import Sequence

import numpy as np
from matplotlib.backends.backend_agg import FigureCanvasAgg
from matplotlib.figure import Figure

from .harness.export import numeric_x
from .harness.ranking import RankTable
from .harness.sweep import SweepCurve
from .io import ensure_parent

_XLABEL = {"mu": "mixing parameter mu", "cz": "cluster size", "gamma": "gamma bin"}


def _save(fig: Figure, path) -> Path:
    ensure_parent(path)
    FigureCanvasAgg(fig)
    fig.savefig(path, dpi=120, bbox_inches="tight")
    return Path(path)


def plot_curves(curves: Sequence[SweepCurve], path, title: str | None = None) -> Path:
    """Median NMI per sweep point, one line per algorithm, raw runs as faint dots."""
    fig = Figure(figsize=(6.0, 4.0))
    ax = fig.add_subplot()
    sweep = curves[0].sweep if curves else "mu"
    for c in curves:
        xs = [numeric_x(c.sweep, p.x) for p in c.points]
        (line,) = ax.plot(xs, c.medians, marker="o", label=c.algorithm)
        rx = [numeric_x(c.sweep, p.x) for p in c.points for _ in p.raw]
        ry = [v for p in c.points for _, _, v in p.raw]
        ax.scatter(rx, ry, s=8, alpha=0.3, color=line.get_color())
    if sweep == "cz":
        ax.set_xscale("log", base=2)
    if sweep == "gamma" and curves:
        pts = curves[0].points
        ax.set_xticks([numeric_x("gamma", p.x) for p in pts], [str(p.x) for p in pts])
    ax.set_xlabel(_XLABEL.get(sweep, sweep))
    ax.set_ylabel("NMI")
    ax.set_ylim(-0.02, 1.02)
    ax.grid(True, alpha=0.3)
    if curves:
        ax.legend(frameon=False)
    if title:
        ax.set_title(title)
    return _save(fig, path)


def plot_rank_table(table: RankTable, path) -> Path:
    """Heat map of ranks, rows in summary order."""
    nr, nc = table.ranks.shape
    fig = Figure(figsize=(1.2 + 0.7 * (nc + 1), 0.8 + 0.35 * nr))
    ax = fig.add_subplot()
    grid = np.column_stack([table.ranks, table.summary]).astype(float)
    ax.imshow(grid, cmap="viridis_r", aspect="auto")
    for i in range(nr):
        for j in range(nc + 1):
            val = grid[i, j]
            text = f"{val:g}" if j == nc else str(int(val))
            ax.text(j, i, text, ha="center", va="center", fontsize=8, color="white")
    ax.set_xticks(range(nc + 1), [str(c) for c in table.columns] + [table.summary_kind], rotation=45, ha="right")
    ax.set_yticks(range(nr), table.rows)
    ax.set_title(f"{table.metric} ranks")
    return _save(fig, path)
