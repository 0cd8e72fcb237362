import math

import numpy as np
import pytest

import stubs
from clusterbench.algorithms import get_algorithm
from clusterbench.generators import GeneratorSpec
from clusterbench.harness import (
    BenchRecord,
    ProbeResult,
    curves_from_records,
    dense_rank,
    export_csv,
    export_plotdata,
    gamma_bin,
    nmi_sweep,
    probe_support,
    probe_trials,
    rank_table,
    read_records,
    run_benchmark,
    sweep_specs,
)
from clusterbench.harness.probe import bridged_cliques

RAND_SMALL = GeneratorSpec("RAND", {"n": 32, "m": 64})


def lfr_spec(n, mu):
    return GeneratorSpec("LFR", {"N": n, "k": n // 4, "max_k": n // 2, "mu": mu})


def synthetic(scores_by_alg, metric="nmi"):
    """Records with one score per (algorithm, mu column)."""
    out = []
    for alg, row in scores_by_alg.items():
        for mu, value in row.items():
            out.append(BenchRecord(alg, lfr_spec(128, mu), 0, runtime_ms=1.0, scores={metric: value}))
    return out


# probing


def test_bridged_cliques_shape():
    g = bridged_cliques()
    assert (g.n, g.m) == (12, 31) and g.weights.max() == 100.0


def test_probe_weighted_lpa_diverges():
    assert probe_support(get_algorithm("lpa"), "weighted") is ProbeResult.SUPPORTED
    assert all(probe_trials(get_algorithm("lpa"), "weighted"))


@pytest.mark.parametrize("name", ["lpa-unweighted", "cnm", "gce"])
def test_probe_weight_blind_builds(name):
    assert probe_support(get_algorithm(name), "weighted") is ProbeResult.UNSUPPORTED


def test_probe_custom_weight_user_and_crash():
    assert probe_support(stubs.WEIGHT_FOLLOWER, "weighted")
    assert probe_support(stubs.CRASHER, "weighted") is ProbeResult.INCONCLUSIVE
    assert not ProbeResult.INCONCLUSIVE
    with pytest.raises(ValueError):
        probe_support(stubs.CRASHER, "bipartite")


@pytest.mark.parametrize("name", ["lpa", "louvain", "cnm"])
def test_probe_directed_matches_declared(name):
    alg = get_algorithm(name)
    assert bool(probe_support(alg, "directed")) == alg.capabilities.directed


# budgeted runs


def test_lpa_small_random_run_is_fast():
    (rec,) = run_benchmark(["lpa"], [RAND_SMALL], [0], budget_ms=10_000)
    assert rec.ok and rec.runtime_ms < 1000
    assert {"nmi", "ami", "ars", "modularity"} <= set(rec.scores)


def test_timeouts_and_crashes_stay_in_their_records():
    recs = run_benchmark([stubs.SLEEPER, "lpa", stubs.CRASHER, stubs.EXITER], [RAND_SMALL], [0, 1], budget_ms=500)
    assert len(recs) == 8
    by = {(r.algorithm, r.seed): r for r in recs}
    for seed in (0, 1):
        sleeper = by[("sleeper", seed)]
        assert sleeper.timed_out and not sleeper.scores and sleeper.runtime_ms is None
        assert by[("lpa", seed)].ok and by[("lpa", seed)].scores
        assert "boom" in by[("crasher", seed)].error
        assert "worker died" in by[("exiter", seed)].error


def test_parallel_jobs_give_same_scores():
    specs = [GeneratorSpec("SIMPLE", {"nc": 4, "cz": 8, "k_i": 3, "k_o": 1})]
    a = run_benchmark(["lpa", "louvain"], specs, range(3), budget_ms=10_000)
    b = run_benchmark(["lpa", "louvain"], specs, range(3), budget_ms=10_000, jobs=2)
    assert [(r.algorithm, r.seed, r.scores) for r in a] == [(r.algorithm, r.seed, r.scores) for r in b]


def test_infeasible_spec_is_per_record():
    bad = GeneratorSpec("SIMPLE", {"nc": 2, "cz": 4, "k_i": 4, "k_o": 0})
    recs = run_benchmark(["lpa"], [bad, RAND_SMALL], [0], budget_ms=10_000)
    errors = sorted(bool(r.error) for r in recs)
    assert errors == [False, True]
    assert any(r.error and r.error.startswith("infeasible") for r in recs)


def test_bad_budget_rejected():
    with pytest.raises(ValueError):
        run_benchmark(["lpa"], [RAND_SMALL], [0], budget_ms=0)


@pytest.mark.slow
def test_louvain_lfr_grid_has_81_records(tmp_path):
    specs = [lfr_spec(n, mu) for n in (128, 512, 1024) for mu in np.round(np.arange(0.1, 1.0, 0.1), 1)]
    recs = run_benchmark(["louvain"], specs, range(3), budget_ms=60_000)
    assert len(recs) == 81 and all(r.ok for r in recs)
    path = tmp_path / "records.csv"
    export_csv(recs, path)
    assert len(path.read_text().splitlines()) == 82


# ranking


def test_gamma_bins():
    assert [gamma_bin(g) for g in (0.0, 0.17, 0.2, 0.5, 0.83, 1.0)] == [
        "0.0-0.2", "0.0-0.2", "0.2-0.4", "0.4-0.6", "0.8-1.0", "0.8-1.0",
    ]
    assert gamma_bin(1.5) == ">1.0"
    with pytest.raises(ValueError):
        gamma_bin(-0.1)


def test_dense_rank_ties():
    assert dense_rank([0.9, 0.9, 0.5]).tolist() == [1, 1, 2]
    assert dense_rank([0.9, np.nan, 0.5]).tolist() == [1, 3, 2]
    assert dense_rank([3.0, 1.0, 2.0], descending=False).tolist() == [3, 1, 2]


def test_rank_table_examples():
    t = rank_table(synthetic({"A": {0.1: 0.9}, "B": {0.1: 0.9}, "C": {0.1: 0.5}}), group_by="mu")
    assert t.rank_of("A") == {0.1: 1} and t.rank_of("B") == {0.1: 1} and t.rank_of("C") == {0.1: 2}
    single = rank_table(synthetic({"A": {0.1: 0.3, 0.2: 0.1}}), group_by="mu")
    assert single.ranks.tolist() == [[1, 1]] and single.summary.tolist() == [1.0]


def test_rank_table_median_tie_broken_by_name():
    # A ranks (1, 3) and B ranks (2, 2): both medians are 2
    t = rank_table(
        synthetic({"B": {0.1: 0.8, 0.2: 0.5}, "A": {0.1: 0.9, 0.2: 0.1}, "C": {0.1: 0.7, 0.2: 0.9}}), group_by="mu"
    )
    assert t.rank_of("A") == {0.1: 1, 0.2: 3} and t.rank_of("B") == {0.1: 2, 0.2: 2}
    assert t.rows[:2] == ("A", "B") and t.summary[:2].tolist() == [2.0, 2.0]


def test_rank_table_missing_cell_and_runtime():
    recs = synthetic({"A": {0.1: 0.9, 0.2: 0.4}, "B": {0.1: 0.5}})
    recs.append(BenchRecord("B", lfr_spec(128, 0.2), 0, timed_out=True))
    t = rank_table(recs, group_by="mu")
    assert t.rank_of("B") == {0.1: 2, 0.2: 2}
    assert math.isnan(t.values[t.rows.index("B"), 1])
    fast = [BenchRecord(a, lfr_spec(128, 0.1), 0, runtime_ms=ms) for a, ms in [("A", 50.0), ("B", 5.0)]]
    assert rank_table(fast, group_by="mu", metric="runtime_ms").rows == ("B", "A")
    with pytest.raises(ValueError):
        rank_table([])
    with pytest.raises(ValueError):
        rank_table(fast, summary="mode")


def test_rank_table_mean_summary():
    t = rank_table(synthetic({"A": {0.1: 0.9, 0.2: 0.1, 0.3: 0.1}, "B": {0.1: 0.1, 0.2: 0.9, 0.3: 0.9}}), group_by="mu", summary="mean")
    assert t.rows == ("B", "A")
    assert t.summary.tolist() == pytest.approx([4 / 3, 5 / 3])


# sweeps


def test_cz_sweep_has_seven_points():
    specs, skipped = sweep_specs("cz")
    assert [s.params["cz"] for s in specs] == [4, 8, 16, 32, 64, 128, 256] and not skipped
    assert all(s.params["nc"] * s.params["cz"] == 1024 for s in specs)


def test_gamma_sweep_specs_and_skips():
    specs, _ = sweep_specs("gamma")
    assert [s.params["k_o"] for s in specs] == [0, 1, 3, 5, 6]
    base = GeneratorSpec("SIMPLE", {"nc": 2, "cz": 4, "k_i": 3, "k_o": 0})
    specs, skipped = sweep_specs("gamma", base, values=[0.0, 10.0])
    assert len(specs) == 1 and len(skipped) == 1
    with pytest.raises(ValueError):
        sweep_specs("density")


def test_gamma_zero_louvain_is_exact():
    curve = nmi_sweep("louvain", "gamma", values=[0.0], seeds=range(3), budget_ms=30_000)
    assert curve.xs == ["0.0-0.2"] and curve.medians.tolist() == [1.0]
    small = nmi_sweep("louvain", "gamma", GeneratorSpec("SIMPLE", {"nc": 4, "cz": 8, "k_i": 3, "k_o": 0}), seeds=range(3), values=[0.0])
    assert small.medians.tolist() == [1.0]


def test_cz_sweep_curve_shape():
    curve = nmi_sweep("louvain", "cz", seeds=[0], budget_ms=30_000)
    assert curve.xs == [4, 8, 16, 32, 64, 128, 256]
    assert all(0 <= m <= 1 for m in curve.medians)


# export


def test_export_empty_records_is_header_only(tmp_path):
    path = tmp_path / "out" / "records.csv"
    export_csv([], path)
    assert path.read_text().splitlines() == [
        "algorithm,kind,params,seed,runtime_ms,timed_out,error,n_clusters,"
        "mi,nmi,ami,ri,ars,homogeneity,completeness,v_measure,modularity"
    ]


def test_export_round_trip_and_determinism(tmp_path):
    specs = [GeneratorSpec("SIMPLE", {"nc": 4, "cz": 8, "k_i": 3, "k_o": 2}), RAND_SMALL]
    recs = run_benchmark(["lpa", stubs.SLEEPER], specs, [0, 1], budget_ms=300)
    export_csv(recs, tmp_path / "a.csv")
    back = read_records(tmp_path / "a.csv")
    assert [(r.algorithm, r.spec, r.seed, r.timed_out, r.scores, r.runtime_ms) for r in back] == [
        (r.algorithm, r.spec, r.seed, r.timed_out, r.scores, r.runtime_ms) for r in recs
    ]
    again = run_benchmark(["lpa", stubs.SLEEPER], specs, [0, 1], budget_ms=300)
    export_csv(recs, tmp_path / "b.csv", include_runtime=False)
    export_csv(again, tmp_path / "c.csv", include_runtime=False)
    assert (tmp_path / "b.csv").read_bytes() == (tmp_path / "c.csv").read_bytes()


def test_export_table_and_curves(tmp_path):
    t = rank_table(synthetic({"A": {0.1: 0.9}, "B": {0.1: 0.5}}), group_by="mu")
    export_csv(t, tmp_path / "ranks.csv")
    assert (tmp_path / "ranks.csv").read_text().splitlines() == ["algorithm,0.1,median", "A,1,1.0", "B,2,2.0"]
    recs = synthetic({"A": {0.1: 0.9, 0.5: 0.4}})
    curves = curves_from_records(recs, "mu")
    export_csv(curves, tmp_path / "curves.csv")
    assert len((tmp_path / "curves.csv").read_text().splitlines()) == 3
    (path,) = export_plotdata(curves, tmp_path / "plots")
    blocks = path.read_text().split("\n\n\n")
    assert path.name == "curve_A.dat" and len(blocks) == 2
    rows = [line.split() for line in blocks[0].splitlines() if not line.startswith("#")]
    assert [(float(x), float(y)) for x, y, _ in rows] == [(0.1, 0.9), (0.5, 0.4)]
