"""NMI curves along one benchmark dimension."""

from __future__ import annotations

import logging
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from ..algorithms import AlgorithmHandle, get_algorithm
from ..generators import GeneratorSpec, InfeasibleSpec, check_simple
from .bench import DEFAULT_BUDGET_MS, BenchRecord, run_benchmark
from .ranking import GAMMA_LABELS, gamma_bin

log = logging.getLogger(__name__)

SWEEPS = ("mu", "cz", "gamma")
MU_VALUES = (0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9)
CZ_VALUES = (4, 8, 16, 32, 64, 128, 256)
CZ_TOTAL = 1024
GAMMA_VALUES = (0.0, 0.17, 0.5, 0.83, 1.0)

DEFAULT_BASE = {
    "mu": GeneratorSpec("LFR", {"N": 1024, "k": 256, "max_k": 512, "mu": 0.1}),
    # k_i and gamma for the cluster-size sweep; k_i shrinks to cz - 1 for tiny clusters
    "cz": GeneratorSpec("SIMPLE", {"nc": 64, "cz": 16, "k_i": 6, "k_o": 3}),
    "gamma": GeneratorSpec("SIMPLE", {"nc": 8, "cz": 16, "k_i": 6, "k_o": 0}),
}


@dataclass
class SweepPoint:
    x: object  # mu value, cluster size or gamma-bin label
    median_nmi: float
    raw: list[tuple[GeneratorSpec, int, float]] = field(default_factory=list)  # nan for failed runs


@dataclass
class SweepCurve:
    algorithm: str
    sweep: str
    points: list[SweepPoint]
    skipped: list[str] = field(default_factory=list)

    @property
    def xs(self) -> list:
        return [p.x for p in self.points]

    @property
    def medians(self) -> np.ndarray:
        return np.array([p.median_nmi for p in self.points])


def sweep_specs(sweep: str, base: GeneratorSpec | None = None, values: Sequence | None = None):
    """Generator specs along ``sweep`` plus notices for infeasible points."""
    if sweep not in SWEEPS:
        raise ValueError(f"sweep must be one of {SWEEPS}")
    base = base or DEFAULT_BASE[sweep]
    p = dict(base.params)
    specs: list[GeneratorSpec] = []
    skipped: list[str] = []
    if sweep == "mu":
        for mu in values or MU_VALUES:
            specs.append(GeneratorSpec(base.kind, {**p, "mu": float(mu)}))
        return specs, skipped
    if base.kind != "SIMPLE":
        raise ValueError(f"{sweep} sweep needs a SIMPLE base spec")
    if sweep == "cz":
        gamma = p["k_o"] / p["k_i"]
        for cz in values or CZ_VALUES:
            k_i = min(p["k_i"], cz - 1)
            if (k_i * cz) % 2:
                k_i -= 1
            params = {"nc": CZ_TOTAL // cz, "cz": cz, "k_i": k_i, "k_o": int(round(gamma * k_i))}
            reason = _simple_infeasible(**params)
            if CZ_TOTAL % cz:
                reason = f"cluster size does not divide {CZ_TOTAL}"
            if reason:
                skipped.append(f"cz={cz}: {reason}")
                continue
            specs.append(GeneratorSpec("SIMPLE", params))
        return specs, skipped
    for g in values or GAMMA_VALUES:
        params = {**p, "k_o": int(round(g * p["k_i"]))}
        reason = _simple_infeasible(**params)
        if reason:
            skipped.append(f"gamma={g}: {reason}")
            continue
        specs.append(GeneratorSpec("SIMPLE", params))
    return specs, skipped


def _simple_infeasible(**params) -> str | None:
    try:
        check_simple(**params)
    except InfeasibleSpec as exc:
        return str(exc)
    return None


def _column(sweep: str, spec: GeneratorSpec):
    if sweep == "mu":
        return spec.params["mu"]
    if sweep == "cz":
        return spec.params["cz"]
    return gamma_bin(spec.gamma)


def curves_from_records(records: Iterable[BenchRecord], sweep: str, skipped: Sequence[str] = ()) -> list[SweepCurve]:
    """Group records per algorithm and sweep point; the median ignores failed runs."""
    by_alg: dict[str, dict[object, list]] = defaultdict(lambda: defaultdict(list))
    for rec in records:
        val = rec.scores.get("nmi", np.nan) if rec.ok else np.nan
        by_alg[rec.algorithm][_column(sweep, rec.spec)].append((rec.spec, rec.seed, float(val)))
    curves = []
    for alg in sorted(by_alg):
        cols = by_alg[alg]
        if sweep == "gamma":
            order = [c for c in GAMMA_LABELS if c in cols] + sorted(c for c in cols if c not in GAMMA_LABELS)
        else:
            order = sorted(cols)
        points = []
        for x in order:
            raw = cols[x]
            vals = np.array([r[2] for r in raw])
            ok = vals[~np.isnan(vals)]
            points.append(SweepPoint(x, float(np.median(ok)) if len(ok) else float("nan"), raw))
        curves.append(SweepCurve(alg, sweep, points, list(skipped)))
    return curves


def nmi_sweep(
    alg: AlgorithmHandle | str,
    sweep: str,
    base_spec: GeneratorSpec | None = None,
    seeds: Iterable[int] = range(5),
    budget_ms: float = DEFAULT_BUDGET_MS,
    values: Sequence | None = None,
    jobs: int = 1,
) -> SweepCurve:
    """Median NMI of ``alg`` at each point of a mu, cluster-size or gamma sweep.

    The mu sweep varies LFR mixing; the cz sweep keeps 1024 vertices and
    the base gamma while cluster size runs 4 to 256; the gamma sweep varies
    the inter-cluster edge count and bins the points by gamma. Infeasible
    points are dropped and listed in ``skipped``.
    """
    handle = get_algorithm(alg) if isinstance(alg, str) else alg
    specs, skipped = sweep_specs(sweep, base_spec, values)
    for note in skipped:
        log.warning("sweep point skipped: %s", note)
    records = run_benchmark([handle], specs, seeds, budget_ms, jobs)
    curves = curves_from_records(records, sweep, skipped)
    if not curves:
        return SweepCurve(handle.name, sweep, [], skipped)
    return curves[0]
