"""Per-column dense ranks of algorithms over benchmark records."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .bench import BenchRecord

GAMMA_EDGES = (0.2, 0.4, 0.6, 0.8)
GAMMA_LABELS = ("0.0-0.2", "0.2-0.4", "0.4-0.6", "0.6-0.8", "0.8-1.0")
RUNTIME = "runtime_ms"


def gamma_bin(gamma: float) -> str:
    """Label of the half-open bin holding ``gamma``; the last bin is closed at 1."""
    if gamma < 0:
        raise ValueError("gamma must be non-negative")
    if gamma > 1.0:
        return ">1.0"
    return GAMMA_LABELS[int(np.searchsorted(GAMMA_EDGES, gamma, side="right"))]


def _size(rec: BenchRecord):
    p = rec.spec.params
    if "n" in p:
        return p["n"]
    if "N" in p:
        return p["N"]
    return p["nc"] * p["cz"]


_GROUPERS: dict[str, Callable[[BenchRecord], object]] = {
    "mu": lambda r: r.spec.params["mu"],
    "cz": lambda r: r.spec.params["cz"],
    "gamma": lambda r: gamma_bin(r.spec.gamma),
    "kind": lambda r: r.spec.kind,
    "n": _size,
    "spec": lambda r: r.spec.label(),
}
GROUP_BY = tuple(_GROUPERS)


@dataclass(frozen=True)
class RankTable:
    rows: tuple[str, ...]
    columns: tuple
    ranks: np.ndarray  # int, shape (rows, columns)
    summary: np.ndarray
    values: np.ndarray  # aggregated metric per cell, nan where missing
    metric: str
    summary_kind: str

    def rank_of(self, name: str) -> dict:
        i = self.rows.index(name)
        return dict(zip(self.columns, self.ranks[i].tolist()))


def dense_rank(values: np.ndarray, descending: bool = True, precision: int = 2) -> np.ndarray:
    """Dense ranks of the non-nan entries, ties decided after rounding.

    Values are divided by the column's largest magnitude before rounding to
    ``precision`` decimals, so multiplying a column by a positive constant
    never changes its ranks. Nan entries (missing cells) get the worst
    observed rank plus one.
    """
    values = np.asarray(values, dtype=float)
    ranks = np.empty(len(values), dtype=np.int64)
    present = ~np.isnan(values)
    if not present.any():
        ranks[:] = 1
        return ranks
    v = values[present]
    scale = np.abs(v).max()
    if scale > 0:
        # the inner rounding absorbs float noise from the division itself
        v = np.round(np.round(v / scale, 12), precision)
    if descending:
        v = -v
    uniq = np.unique(v)
    ranks[present] = np.searchsorted(uniq, v) + 1
    ranks[~present] = len(uniq) + 1
    return ranks


def _metric_value(rec: BenchRecord, metric: str) -> float | None:
    if not rec.ok:
        return None
    if metric == RUNTIME:
        return rec.runtime_ms
    return rec.scores.get(metric)


def rank_table(
    records: Sequence[BenchRecord],
    group_by: str | Callable[[BenchRecord], object] = "spec",
    metric: str = "nmi",
    summary: str = "median",
    precision: int = 2,
    algorithms: Sequence[str] | None = None,
) -> RankTable:
    """Rank algorithms within each column and summarize each row.

    A cell holds the median of ``metric`` over the column's successful
    records. Scores rank descending and runtime ascending. Rows come out
    sorted by summary rank, ties broken by name.
    """
    if not records:
        raise ValueError("no records to rank")
    if summary not in ("median", "mean"):
        raise ValueError(f"summary must be 'median' or 'mean', not {summary!r}")
    key = _GROUPERS[group_by] if isinstance(group_by, str) else group_by
    cells: dict[tuple[str, object], list[float]] = defaultdict(list)
    names = set(algorithms or ())
    cols = set()
    for rec in records:
        col = key(rec)
        cols.add(col)
        names.add(rec.algorithm)
        val = _metric_value(rec, metric)
        if val is not None and not np.isnan(val):
            cells[(rec.algorithm, col)].append(val)
    names = sorted(names)
    columns = tuple(sorted(cols, key=lambda c: (isinstance(c, str), c)))
    values = np.full((len(names), len(columns)), np.nan)
    for i, name in enumerate(names):
        for j, col in enumerate(columns):
            got = cells.get((name, col))
            if got:
                values[i, j] = float(np.median(got))
    descending = metric != RUNTIME
    ranks = np.column_stack([dense_rank(values[:, j], descending, precision) for j in range(len(columns))])
    agg = np.median if summary == "median" else np.mean
    summ = agg(ranks, axis=1).astype(float)
    order = sorted(range(len(names)), key=lambda i: (summ[i], names[i]))
    return RankTable(
        rows=tuple(names[i] for i in order),
        columns=columns,
        ranks=ranks[order],
        summary=summ[order],
        values=values[order],
        metric=metric,
        summary_kind=summary,
    )
