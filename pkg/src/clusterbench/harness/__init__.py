"""Benchmark orchestration: probing, budgeted runs, rank tables, sweeps and export."""

from .bench import BenchRecord, run_benchmark, score_result
from .export import export_csv, export_plotdata, read_records
from .probe import ProbeResult, probe_support, probe_trials
from .ranking import RankTable, dense_rank, gamma_bin, rank_table
from .sweep import SweepCurve, SweepPoint, curves_from_records, nmi_sweep, sweep_specs

__all__ = [
    "BenchRecord",
    "ProbeResult",
    "RankTable",
    "SweepCurve",
    "SweepPoint",
    "curves_from_records",
    "dense_rank",
    "export_csv",
    "export_plotdata",
    "gamma_bin",
    "nmi_sweep",
    "probe_support",
    "probe_trials",
    "rank_table",
    "read_records",
    "run_benchmark",
    "score_result",
    "sweep_specs",
]
