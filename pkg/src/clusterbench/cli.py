"""Command line entry point: ``clusterbench <command> ...``."""

from __future__ import annotations

import argparse
import csv
import json
import logging
import sys
from contextlib import contextmanager
from pathlib import Path

import numpy as np

from . import algorithms, generators, io, props, scores
from .fitness import FITNESS_FIELDS, clustering_fitness
from .graph import crispify
from .harness import bench, export, probe, ranking, sweep
from .plotting import plot_curves, plot_rank_table

log = logging.getLogger("clusterbench")


@contextmanager
def _output(path):
    """Yield a text stream for ``path``, or stdout when no path is given."""
    if path is None or str(path) == "-":
        yield sys.stdout
        return
    io.ensure_parent(path)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        yield fh


def _writer(fh):
    return csv.writer(fh, lineterminator="\n")


def _fmt(x) -> str:
    if isinstance(x, (float, np.floating)):
        return repr(float(x))
    return str(x)


def _read_graph(args):
    return io.read_edge_list(args.input, directed=args.directed, weighted=args.weighted, strict=args.strict)


# gen


def cmd_gen(args) -> int:
    if args.out is None:
        raise ValueError("gen needs --out PREFIX")
    params = {k: v for k, v in vars(args).items() if k.startswith("p_") and v is not None}
    params = {k[2:]: v for k, v in params.items()}
    spec = generators.GeneratorSpec(args.kind, params, args.seed)
    inst = generators.generate(spec)
    prefix = str(args.out)
    io.write_edge_list(inst.graph, prefix + ".edges")
    io.write_clustering(inst.truth, prefix + ".truth")
    Path(prefix + ".spec.json").write_text(json.dumps(inst.spec_json(), indent=2) + "\n", encoding="utf-8")
    log.info("wrote %s.{edges,truth,spec.json}: n=%d m=%d", prefix, inst.graph.n, inst.graph.m)
    return 0


def _add_gen(sub, parent):
    p = sub.add_parser("gen", help="generate a benchmark graph with ground truth")
    kinds = p.add_subparsers(dest="kind", required=True, metavar="KIND")
    k = kinds.add_parser("rand", parents=[parent], help="uniform random graph RAND(n, m)")
    k.add_argument("--n", dest="p_n", type=int, required=True)
    k.add_argument("--m", dest="p_m", type=int, required=True)
    k = kinds.add_parser("simple", parents=[parent], help="SIMPLE(nc, cz, k_i, k_o)")
    k.add_argument("--nc", dest="p_nc", type=int, required=True, help="number of clusters")
    k.add_argument("--cz", dest="p_cz", type=int, required=True, help="cluster size")
    k.add_argument("--ki", dest="p_k_i", type=int, required=True, help="internal degree")
    k.add_argument("--ko", dest="p_k_o", type=int, required=True, help="edges between each cluster pair")
    for name in ("lfr", "wlfr"):
        k = kinds.add_parser(name, parents=[parent], help=f"{name.upper()} power-law benchmark")
        k.add_argument("--N", dest="p_N", type=int, required=True, help="vertex count")
        k.add_argument("--k", dest="p_k", type=float, required=True, help="average degree")
        k.add_argument("--max-k", dest="p_max_k", type=int, required=True)
        k.add_argument("--mu", dest="p_mu", type=float, required=True, help="topological mixing")
        k.add_argument("--tau1", dest="p_tau1", type=float)
        k.add_argument("--tau2", dest="p_tau2", type=float)
        k.add_argument("--minc", dest="p_minc", type=int)
        k.add_argument("--maxc", dest="p_maxc", type=int)
        if name == "wlfr":
            k.add_argument("--mu-t", dest="p_mu_t", type=float, required=True, help="weight mixing")
            k.add_argument("--beta", dest="p_beta", type=float)
        k.set_defaults(func=cmd_gen)
    for name in ("rand", "simple"):
        kinds.choices[name].set_defaults(func=cmd_gen)


# props / cluster / fitness / score


def cmd_props(args) -> int:
    g = _read_graph(args)
    prof = props.profile(g, sample_size=args.sample_size, seed=args.seed, per_vertex=args.per_vertex is not None)
    with _output(args.out) as fh:
        w = _writer(fh)
        w.writerow(["property", "value"])
        for name in ("density", "diameter", "effective_diameter", "global_cc", "avg_local_cc", "sampled"):
            w.writerow([name, _fmt(getattr(prof, name))])
    if args.per_vertex is not None:
        with _output(args.per_vertex) as fh:
            w = _writer(fh)
            cols = ("degree_centrality", "farness", "closeness", "eccentricity", "local_cc")
            w.writerow(["vertex", *cols])
            for i, vid in enumerate(g.vertex_ids.tolist()):
                w.writerow([vid, *(_fmt(getattr(prof, c)[i]) for c in cols)])
    return 0


def cmd_cluster(args) -> int:
    g = _read_graph(args)
    handle = algorithms.get_algorithm(args.alg)
    result = handle.run(g, args.seed)
    if args.out is None:
        for v, cid in _clustering_lines(result):
            print(v, cid)
    else:
        io.write_clustering(result, args.out)
    log.info("%s: %d clusters on %d vertices", handle.name, result.k, result.n)
    return 0


def _clustering_lines(c):
    for v, ms in zip(c.vertex_ids.tolist(), c.memberships):
        for cid in ms:
            yield v, cid


def cmd_fitness(args) -> int:
    g = _read_graph(args)
    c = io.read_clustering(args.clustering, graph=g)
    if c.overlapped:
        log.warning("overlapping clustering crispified with seed %d", args.seed)
        c = crispify(c, args.seed)
    rows, agg = clustering_fitness(g, c, paper_literal=args.paper_literal, avg_normalizer=args.avg_normalizer)
    with _output(args.out) as fh:
        w = _writer(fh)
        w.writerow(["cluster", *FITNESS_FIELDS, "modularity"])
        for i, r in enumerate(rows):
            w.writerow([i, *(_fmt(getattr(r, f)) for f in FITNESS_FIELDS), ""])
        w.writerow(["mean", *(_fmt(agg[f]) for f in FITNESS_FIELDS), _fmt(agg["modularity"])])
    return 0


def cmd_score(args) -> int:
    truth = io.read_clustering(args.truth)
    pred = io.read_clustering(args.pred)
    if truth.overlapped:
        log.warning("overlapping truth crispified with seed %d", args.seed)
        truth = crispify(truth, args.seed)
    if pred.overlapped:
        log.warning("overlapping prediction crispified with seed %d", args.seed)
        pred = crispify(pred, args.seed)
    vals = scores.all_scores(truth, pred, standard_v=not args.paper_literal)
    with _output(args.out) as fh:
        w = _writer(fh)
        w.writerow(scores.SCORE_NAMES)
        w.writerow([_fmt(vals[s]) for s in scores.SCORE_NAMES])
    return 0


# harness commands


def cmd_probe(args) -> int:
    kinds = ("weighted", "directed") if args.kind == "both" else (args.kind,)
    names = args.alg or list(algorithms.ALGORITHMS)
    with _output(args.out) as fh:
        w = _writer(fh)
        w.writerow(["algorithm", "kind", "result", "declared"])
        for name in names:
            h = algorithms.get_algorithm(name)
            for kind in kinds:
                res = probe.probe_support(h, kind, trials=args.trials, seed=args.seed)
                w.writerow([name, kind, res.value, str(getattr(h.capabilities, kind)).lower()])
    return 0


def _write_rank_outputs(records, outdir: Path, args, group_by, metric, summary) -> None:
    table = ranking.rank_table(records, group_by, metric, summary, precision=args.rank_precision)
    export.export_csv(table, outdir / "ranks.csv")
    plot_rank_table(table, outdir / "ranks.png")


def _write_curves(curves, outdir: Path) -> None:
    export.export_csv(curves, outdir / "curves.csv")
    export.export_plotdata(curves, outdir)
    if curves:
        plot_curves(curves, outdir / f"nmi_{curves[0].sweep}.png")


def cmd_bench(args) -> int:
    cfg = json.loads(Path(args.config).read_text(encoding="utf-8"))
    specs = [generators.GeneratorSpec.from_dict(s) for s in cfg["specs"]]
    seeds = cfg.get("seeds", [args.seed])
    budget = cfg.get("budget_ms", args.budget_ms)
    outdir = Path(args.out or ".")
    records = bench.run_benchmark(cfg["algorithms"], specs, seeds, budget, jobs=cfg.get("jobs", args.jobs))
    outdir.mkdir(parents=True, exist_ok=True)
    export.export_records(records, outdir / "records.csv", include_runtime=not args.no_runtime)
    sweep_dim = cfg.get("sweep")
    group_by = cfg.get("group_by", sweep_dim or "spec")
    _write_rank_outputs(records, outdir, args, group_by, cfg.get("metric", "nmi"), cfg.get("summary", "median"))
    if sweep_dim:
        _write_curves(sweep.curves_from_records(records, sweep_dim), outdir)
    bad = sum(not r.ok for r in records)
    log.info("%d records (%d timed out or failed) written to %s", len(records), bad, outdir)
    return 0


def cmd_rank(args) -> int:
    records = export.read_records(args.records)
    table = ranking.rank_table(records, args.group_by, args.metric, args.summary, precision=args.rank_precision)
    with _output(args.out) as fh:
        w = _writer(fh)
        w.writerow(["algorithm", *[_fmt(c) for c in table.columns], table.summary_kind])
        for name, r, s in zip(table.rows, table.ranks, table.summary):
            w.writerow([name, *r.tolist(), _fmt(float(s))])
    if args.out and args.out != "-":
        plot_rank_table(table, Path(args.out).with_suffix(".png"))
    return 0


def cmd_sweep(args) -> int:
    base = None
    if args.base:
        base = generators.GeneratorSpec.from_dict(json.loads(args.base))
    values = [float(v) if args.sweep != "cz" else int(v) for v in args.values.split(",")] if args.values else None
    seeds = range(args.seed, args.seed + args.seeds)
    curves = [
        sweep.nmi_sweep(a, args.sweep, base, seeds, args.budget_ms, values=values, jobs=args.jobs) for a in args.alg
    ]
    for c in curves:
        for note in c.skipped:
            print(f"skipped {note}", file=sys.stderr)
    outdir = Path(args.out or ".")
    outdir.mkdir(parents=True, exist_ok=True)
    _write_curves(curves, outdir)
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="random seed (default 0)")
    common.add_argument(
        "--budget-ms", type=float, default=bench.DEFAULT_BUDGET_MS, help="per-run wall-time budget (default 1 h)"
    )
    common.add_argument("--paper-literal", action="store_true", help="use the literal variants of V-measure, intra density, flake ODF and normalized cut")
    common.add_argument("--rank-precision", type=int, default=2, help="decimals kept before tie detection")
    common.add_argument("--out", help="output file, prefix or directory depending on the command")
    common.add_argument("--strict", action="store_true", help="reject duplicate edges in input files")
    common.add_argument("-v", "--verbose", action="store_true")

    graph_in = argparse.ArgumentParser(add_help=False)
    graph_in.add_argument("--in", dest="input", required=True, help="edge list file")
    graph_in.add_argument("--weighted", action="store_true")
    graph_in.add_argument("--directed", action="store_true")

    parser = argparse.ArgumentParser(
        prog="clusterbench",
        description="Benchmark graph generators, clustering measures and algorithms.",
        epilog="Shared flags (--seed, --budget-ms, --paper-literal, --rank-precision, --out) go after the command.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    _add_gen(sub, common)

    p = sub.add_parser("props", parents=[common, graph_in], help="graph properties as CSV")
    p.add_argument("--per-vertex", metavar="FILE", help="also write per-vertex centralities")
    p.add_argument("--sample-size", type=int, default=props.SAMPLE_SIZE)
    p.set_defaults(func=cmd_props)

    p = sub.add_parser("cluster", parents=[common, graph_in], help="run a clustering algorithm")
    p.add_argument("--alg", required=True, choices=sorted(algorithms.ALGORITHMS))
    p.set_defaults(func=cmd_cluster)

    p = sub.add_parser("fitness", parents=[common, graph_in], help="per-cluster fitness measures")
    p.add_argument("--clustering", required=True, help="clustering file")
    p.add_argument("--avg-normalizer", choices=("cluster", "clustering"), default="cluster")
    p.set_defaults(func=cmd_fitness)

    p = sub.add_parser("score", parents=[common], help="compare a clustering with ground truth")
    p.add_argument("--truth", required=True)
    p.add_argument("--pred", required=True)
    p.set_defaults(func=cmd_score)

    p = sub.add_parser("probe", parents=[common], help="test which inputs an algorithm honors")
    p.add_argument("--alg", action="append", help="algorithm (repeatable; default all)")
    p.add_argument("--kind", choices=("weighted", "directed", "both"), default="both")
    p.add_argument("--trials", type=int, default=5)
    p.set_defaults(func=cmd_probe)

    p = sub.add_parser("bench", parents=[common], help="run a benchmark described by a JSON config")
    p.add_argument("--config", required=True)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--no-runtime", action="store_true", help="omit runtimes so records.csv is reproducible")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("rank", parents=[common], help="rank table from a records.csv")
    p.add_argument("--records", required=True)
    p.add_argument("--group-by", choices=ranking.GROUP_BY, default="spec")
    p.add_argument("--metric", default="nmi")
    p.add_argument("--summary", choices=("median", "mean"), default="median")
    p.set_defaults(func=cmd_rank)

    p = sub.add_parser("sweep", parents=[common], help="NMI curve along mu, cluster size or gamma")
    p.add_argument("--alg", action="append", required=True)
    p.add_argument("--sweep", choices=sweep.SWEEPS, required=True)
    p.add_argument("--base", help="base generator spec as JSON")
    p.add_argument("--values", help="comma-separated sweep values")
    p.add_argument("--seeds", type=int, default=5, help="number of seeds, counted up from --seed")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(name)s: %(message)s"
    )
    try:
        return args.func(args)
    except (ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
