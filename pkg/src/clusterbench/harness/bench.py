"""Budgeted benchmark runs in isolated, single-core worker processes."""

from __future__ import annotations

import logging
import multiprocessing as mp
import os
import time
from dataclasses import dataclass, field
from multiprocessing.connection import wait
from typing import Iterable, Sequence

from ..algorithms import AlgorithmHandle, get_algorithm, warm_up
from ..fitness import modularity
from ..generators import BenchmarkInstance, GeneratorSpec, InfeasibleSpec, generate
from ..graph import Clustering, crispify
from ..scores import all_scores

log = logging.getLogger(__name__)

DEFAULT_BUDGET_MS = 3_600_000
# time allowed for a forked worker to report in before its budget starts
_STARTUP_GRACE_S = 30.0


@dataclass
class BenchRecord:
    algorithm: str
    spec: GeneratorSpec
    seed: int
    runtime_ms: float | None = None
    timed_out: bool = False
    error: str | None = None
    scores: dict[str, float] = field(default_factory=dict)
    n_clusters: int | None = None

    @property
    def ok(self) -> bool:
        return not self.timed_out and self.error is None

    def sort_key(self):
        return (self.algorithm, self.spec.key, self.seed)


def _pin_to_one_core(slot: int) -> None:
    if not hasattr(os, "sched_setaffinity"):
        return
    cores = sorted(os.sched_getaffinity(0))
    os.sched_setaffinity(0, {cores[slot % len(cores)]})


def _worker(conn, alg: AlgorithmHandle, inst: BenchmarkInstance, seed: int, slot: int) -> None:
    try:
        _pin_to_one_core(slot)
        conn.send(("started",))
        t0 = time.perf_counter()
        result = alg.run(inst.graph, seed)
        elapsed = (time.perf_counter() - t0) * 1000.0
        conn.send(("ok", result.memberships, elapsed))
    except BaseException as exc:  # noqa: BLE001 - report everything to the parent
        conn.send(("error", f"{type(exc).__name__}: {exc}"))
    finally:
        conn.close()


def score_result(inst: BenchmarkInstance, pred: Clustering, seed: int) -> dict[str, float]:
    """All score measures against the truth plus modularity, on a crisp version of ``pred``."""
    crisp = crispify(pred, seed)
    truth = crispify(inst.truth, seed)
    scores = all_scores(truth, crisp)
    scores["modularity"] = modularity(inst.graph, crisp)
    return scores


class _Cell:
    __slots__ = ("record", "alg", "inst", "proc", "conn", "deadline", "started")

    def __init__(self, record, alg, inst):
        self.record = record
        self.alg = alg
        self.inst = inst
        self.proc = None
        self.conn = None
        self.deadline = 0.0
        self.started = False


def _launch(ctx, cell: _Cell, slot: int) -> None:
    parent, child = ctx.Pipe(duplex=False)
    proc = ctx.Process(target=_worker, args=(child, cell.alg, cell.inst, cell.record.seed, slot), daemon=True)
    proc.start()
    child.close()
    cell.proc, cell.conn = proc, parent
    cell.deadline = time.monotonic() + _STARTUP_GRACE_S


def _kill(cell: _Cell) -> None:
    if cell.proc.is_alive():
        cell.proc.kill()
    cell.proc.join()
    cell.conn.close()


def _finish(cell: _Cell, msg, budget_ms: float) -> None:
    rec = cell.record
    if msg[0] == "error":
        rec.error = msg[1]
        return
    _, memberships, elapsed = msg
    if elapsed > budget_ms:
        rec.timed_out = True
        return
    rec.runtime_ms = elapsed
    pred = Clustering(memberships, cell.inst.graph.vertex_ids)
    rec.n_clusters = pred.k
    try:
        rec.scores = score_result(cell.inst, pred, rec.seed)
    except Exception as exc:  # noqa: BLE001 - scoring failure belongs to this record only
        rec.error = f"scoring failed: {type(exc).__name__}: {exc}"


def _run_cells(cells: list[_Cell], budget_ms: float, jobs: int) -> None:
    ctx = mp.get_context("fork")
    pending = list(reversed(cells))
    active: list[_Cell] = []
    free_slots = list(range(jobs))
    slot_of: dict[int, int] = {}
    budget_s = budget_ms / 1000.0
    while pending or active:
        while pending and free_slots:
            cell = pending.pop()
            slot = free_slots.pop(0)
            _launch(ctx, cell, slot)
            slot_of[id(cell)] = slot
            active.append(cell)
        now = time.monotonic()
        timeout = max(0.0, min(c.deadline for c in active) - now)
        ready = wait([c.conn for c in active], timeout=timeout)
        now = time.monotonic()
        done: list[_Cell] = []
        for cell in active:
            if cell.conn in ready:
                try:
                    msg = cell.conn.recv()
                except EOFError:
                    cell.proc.join(timeout=5)
                    cell.record.error = f"worker died (exit code {cell.proc.exitcode})"
                    done.append(cell)
                    continue
                if msg[0] == "started":
                    cell.started = True
                    cell.deadline = now + budget_s
                    continue
                _finish(cell, msg, budget_ms)
                done.append(cell)
            elif now >= cell.deadline:
                if cell.started:
                    cell.record.timed_out = True
                else:
                    cell.record.error = "worker failed to start"
                done.append(cell)
        for cell in done:
            _kill(cell)
            active.remove(cell)
            free_slots.append(slot_of.pop(id(cell)))
            free_slots.sort()


def run_benchmark(
    algs: Sequence[AlgorithmHandle | str],
    specs: Iterable[GeneratorSpec],
    seeds: Iterable[int],
    budget_ms: float = DEFAULT_BUDGET_MS,
    jobs: int = 1,
) -> list[BenchRecord]:
    """Run every algorithm on every (spec, seed) instance.

    Each run happens in a forked worker pinned to one core and is killed
    once it exceeds ``budget_ms`` of wall time. Timeouts, crashes and
    infeasible specs end up in their own records; the result is sorted by
    (algorithm, spec, seed).
    """
    if budget_ms <= 0:
        raise ValueError("budget must be positive")
    if jobs < 1:
        raise ValueError("jobs must be at least 1")
    handles = [get_algorithm(a) if isinstance(a, str) else a for a in algs]
    seeds = list(seeds)
    records: list[BenchRecord] = []
    cells: list[_Cell] = []
    for spec in specs:
        for seed in seeds:
            inst_spec = spec.with_seed(seed)
            try:
                inst = generate(inst_spec)
            except InfeasibleSpec as exc:
                log.warning("skipping %s seed %d: %s", spec.label(), seed, exc)
                records += [BenchRecord(h.name, inst_spec, seed, error=f"infeasible: {exc}") for h in handles]
                continue
            for h in handles:
                rec = BenchRecord(h.name, inst_spec, seed)
                records.append(rec)
                cells.append(_Cell(rec, h, inst))
    if cells:
        warm_up()
    _run_cells(cells, budget_ms, jobs)
    records.sort(key=BenchRecord.sort_key)
    return records
