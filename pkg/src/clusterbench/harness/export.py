"""CSV and plain-text plot data for records, rank tables and sweep curves."""

from __future__ import annotations

import csv
import json
import math
import re
from collections import defaultdict
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from ..generators import GeneratorSpec
from ..io import ensure_parent
from ..scores import SCORE_NAMES
from .bench import BenchRecord
from .ranking import GAMMA_LABELS, RankTable
from .sweep import SweepCurve

SCORE_COLUMNS = (*SCORE_NAMES, "modularity")
RECORD_COLUMNS = ("algorithm", "kind", "params", "seed", "runtime_ms", "timed_out", "error", "n_clusters", *SCORE_COLUMNS)


def _fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, (float, np.floating)):
        return repr(float(x))
    return str(x)


def _open(path):
    ensure_parent(path)
    return open(path, "w", newline="", encoding="utf-8")


def export_records(records: Iterable[BenchRecord], path, include_runtime: bool = True) -> None:
    """One row per record. Without ``include_runtime`` the output is byte-stable across runs."""
    cols = [c for c in RECORD_COLUMNS if include_runtime or c != "runtime_ms"]
    with _open(path) as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(cols)
        for r in records:
            row = {
                "algorithm": r.algorithm,
                "kind": r.spec.kind,
                "params": json.dumps(r.spec.params, sort_keys=True),
                "seed": r.seed,
                "runtime_ms": r.runtime_ms,
                "timed_out": r.timed_out,
                "error": r.error,
                "n_clusters": r.n_clusters,
                **{s: r.scores.get(s) for s in SCORE_COLUMNS},
            }
            w.writerow([_fmt(row[c]) for c in cols])


def read_records(path) -> list[BenchRecord]:
    """Parse a file written by :func:`export_records`."""
    out = []
    with open(path, newline="", encoding="utf-8") as fh:
        for row in csv.DictReader(fh):
            scores = {s: float(row[s]) for s in SCORE_COLUMNS if row.get(s)}
            runtime = row.get("runtime_ms")
            out.append(
                BenchRecord(
                    algorithm=row["algorithm"],
                    spec=GeneratorSpec(row["kind"], json.loads(row["params"]), int(row["seed"])),
                    seed=int(row["seed"]),
                    runtime_ms=float(runtime) if runtime else None,
                    timed_out=row["timed_out"] == "true",
                    error=row["error"] or None,
                    scores=scores,
                    n_clusters=int(row["n_clusters"]) if row["n_clusters"] else None,
                )
            )
    return out


def export_table(table: RankTable, path) -> None:
    with _open(path) as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["algorithm", *[_fmt(c) for c in table.columns], table.summary_kind])
        for name, ranks, summ in zip(table.rows, table.ranks, table.summary):
            w.writerow([name, *[str(int(r)) for r in ranks], _fmt(float(summ))])


def export_curves(curves: Sequence[SweepCurve], path) -> None:
    with _open(path) as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["algorithm", "sweep", "x", "median_nmi", "runs", "failed"])
        for c in curves:
            for p in c.points:
                failed = sum(math.isnan(v) for _, _, v in p.raw)
                w.writerow([c.algorithm, c.sweep, _fmt(p.x), _fmt(p.median_nmi), len(p.raw), failed])


def export_csv(obj, path, include_runtime: bool = True) -> None:
    """Write records, a rank table or sweep curves as CSV, picking the layout by type."""
    if isinstance(obj, RankTable):
        export_table(obj, path)
        return
    items = list(obj)
    if items and isinstance(items[0], SweepCurve):
        export_curves(items, path)
    else:
        export_records(items, path, include_runtime)


def numeric_x(sweep: str, x) -> float:
    """Plot position of a sweep point; gamma bins map to their midpoints."""
    if sweep == "gamma" and x in GAMMA_LABELS:
        return 0.1 + 0.2 * GAMMA_LABELS.index(x)
    if sweep == "gamma":
        return 1.1
    return float(x)


def _safe(name: str) -> str:
    return re.sub(r"[^A-Za-z0-9_.-]", "_", name)


def export_plotdata(curves: Sequence[SweepCurve], directory) -> list[Path]:
    """Write ``curve_<alg>.dat`` per algorithm in gnuplot-style blocks.

    Each curve contributes a median block followed by a raw-run block,
    separated by two blank lines so ``index`` selects them.
    """
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    grouped: dict[str, list[SweepCurve]] = defaultdict(list)
    for c in curves:
        grouped[c.algorithm].append(c)
    written = []
    for alg, cs in sorted(grouped.items()):
        path = directory / f"curve_{_safe(alg)}.dat"
        blocks = []
        for c in cs:
            lines = [f"# {alg} {c.sweep} median", "# x median_nmi label"]
            lines += [f"{numeric_x(c.sweep, p.x)!r} {p.median_nmi!r} {p.x}" for p in c.points]
            blocks.append("\n".join(lines))
            lines = [f"# {alg} {c.sweep} runs", "# x nmi seed"]
            lines += [f"{numeric_x(c.sweep, p.x)!r} {v!r} {seed}" for p in c.points for _, seed, v in p.raw]
            blocks.append("\n".join(lines))
        path.write_text("\n\n\n".join(blocks) + "\n", encoding="utf-8")
        written.append(path)
    return written
