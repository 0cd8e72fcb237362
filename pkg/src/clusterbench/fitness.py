"""Structural fitness of clusters and clusterings.

Weight sums run over ordered vertex pairs, so an undirected edge inside a
cluster contributes twice to ``sum_intra`` and the grand total over a
partition equals the total degree ``A``. Unweighted graphs use ``w = 1``.

Three measures exist in two forms. ``paper_literal=True`` selects the
literal variants listed first below; the default uses the conventional
ones:

* intra-cluster density: denominator ``|c|(|c|+1)`` vs ``|c|(|c|-1)``
* flake ODF: a vertex counts if it has fewer internal neighbors than
  ``deg`` vs fewer than ``deg/2``
* normalized cut: complementary term uses the undirected edge mass ``m``
  vs the total degree ``A``
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np

from .graph import Clustering, Graph, induced_subgraph
from .props import clustering_coefficients

INF = math.inf
NAN = math.nan


@dataclass(frozen=True)
class ClusterFitness:
    size: int
    sum_intra_weight: float
    sum_out_weight: float
    expansion: float
    cut_ratio: float
    intra_density: float
    inter_density: float
    relative_density: float
    conductance: float
    normalized_cut: float
    max_odf: float
    avg_odf: float
    flake_odf: float
    separability: float
    global_cc: float
    avg_local_cc: float

    def as_dict(self) -> dict:
        return asdict(self)


FITNESS_FIELDS = tuple(ClusterFitness.__dataclass_fields__)


def _members(g: Graph, c) -> np.ndarray:
    c = np.unique(np.asarray(list(c) if not isinstance(c, np.ndarray) else c, dtype=np.int64))
    if len(c) == 0:
        raise ValueError("empty cluster")
    if c[0] < 0 or c[-1] >= g.n:
        raise KeyError("cluster references unknown vertex")
    return c


def _mask(g: Graph, c: np.ndarray) -> np.ndarray:
    m = np.zeros(g.n, dtype=bool)
    m[c] = True
    return m


def _incident(g: Graph, c: np.ndarray, mask: np.ndarray):
    """Per-vertex internal and external neighbor counts and weights for ``c``."""
    starts, ends = g.indptr[c], g.indptr[c + 1]
    lens = ends - starts
    pos = np.repeat(starts - np.cumsum(np.r_[0, lens[:-1]]), lens) + np.arange(lens.sum())
    owner = np.repeat(np.arange(len(c)), lens)
    inside = mask[g.indices[pos]]
    w = g.weights[pos]
    k = len(c)
    in_cnt = np.bincount(owner, weights=inside.astype(float), minlength=k)
    out_cnt = np.bincount(owner, weights=(~inside).astype(float), minlength=k)
    in_w = np.bincount(owner, weights=w * inside, minlength=k)
    out_w = np.bincount(owner, weights=w * ~inside, minlength=k)
    return in_cnt, out_cnt, in_w, out_w


def weight_summary(g: Graph, c) -> tuple[float, float]:
    """``(sum_intra, sum_out)`` over ordered pairs."""
    c = _members(g, c)
    _, _, in_w, out_w = _incident(g, c, _mask(g, c))
    return float(in_w.sum()), float(out_w.sum())


def boundary_measures(g: Graph, c, paper_literal: bool = False) -> dict[str, float]:
    """Expansion, cut ratio, conductance, normalized cut, separability, relative density.

    Separability is ``inf`` when nothing leaves the cluster; cut ratio is
    ``nan`` when the cluster is the whole graph.
    """
    c = _members(g, c)
    intra, out = weight_summary(g, c)
    size, n = len(c), g.n
    total = g.total_weight
    comp_mass = total / 2 if paper_literal else total
    return {
        "expansion": out / size,
        "cut_ratio": out / (size * (n - size)) if size < n else NAN,
        "conductance": _ratio(out, out + intra),
        "normalized_cut": _ratio(out, out + intra) + _ratio(out, out + comp_mass - intra),
        "separability": intra / out if out > 0 else INF,
        "relative_density": 1.0 / (1.0 + out / intra) if intra > 0 else 0.0,
    }


def _ratio(num: float, den: float) -> float:
    if num == 0:
        return 0.0
    return num / den if den != 0 else NAN


def _cut_pairs(g: Graph, labels: np.ndarray) -> int:
    src = np.repeat(np.arange(g.n), g.degrees)
    return int((labels[src] != labels[g.indices]).sum())


def density_measures(g: Graph, clustering: Clustering, c, paper_literal: bool = False) -> tuple[float, float]:
    """Intra- and inter-cluster density of cluster ``c``.

    Intra density counts undirected induced edges. Inter density counts
    ordered cross-cluster pairs (both orientations of each cut edge) over
    ``n(n-1) + sum |V_c|(n - |V_c|)``; it describes the whole clustering and
    is the same for every ``c``.
    """
    c = _members(g, c)
    size, n = len(c), g.n
    in_cnt, _, _, _ = _incident(g, c, _mask(g, c))
    e_c = in_cnt.sum() / 2
    if paper_literal:
        intra = e_c / (size * (size + 1))
    elif size < 2:
        raise ValueError("intra-cluster density needs at least two vertices")
    else:
        intra = e_c / (size * (size - 1))
    sizes = np.array([len(x) for x in clustering.clusters], dtype=np.float64)
    denom = n * (n - 1) + float((sizes * (n - sizes)).sum())
    inter = _cut_pairs(g, clustering.labels) / denom if denom > 0 else 0.0
    return float(intra), float(inter)


def odf_measures(
    g: Graph,
    c,
    paper_literal: bool = False,
    avg_normalizer: str = "cluster",
    n_clusters: int | None = None,
) -> tuple[float, float, float]:
    """``(max_odf, avg_odf, flake_odf)`` for cluster ``c``.

    ``avg_normalizer="cluster"`` divides the average by ``|c|``;
    ``"clustering"`` divides by the number of clusters ``n_clusters``.
    """
    c = _members(g, c)
    in_cnt, out_cnt, _, _ = _incident(g, c, _mask(g, c))
    deg = in_cnt + out_cnt
    if (deg == 0).any():
        raise ValueError("out-degree fraction undefined for a degree-0 vertex")
    frac = out_cnt / deg
    if avg_normalizer == "cluster":
        norm = len(c)
    elif avg_normalizer == "clustering":
        if not n_clusters:
            raise ValueError("avg_normalizer='clustering' needs n_clusters")
        norm = n_clusters
    else:
        raise ValueError(f"unknown avg_normalizer {avg_normalizer!r}")
    threshold = deg if paper_literal else deg / 2
    flake = float((in_cnt < threshold).sum()) / len(c)
    return float(frac.max()), float(frac.sum() / norm), flake


def modularity(g: Graph, clustering: Clustering) -> float:
    """Newman-Girvan modularity ``sum_c intra_c/A - (vol_c/A)^2`` with weighted degrees."""
    if clustering.overlapped:
        raise ValueError("modularity needs a crisp clustering; crispify first")
    if clustering.n != g.n:
        raise ValueError("clustering and graph differ in vertex count")
    A = g.total_weight
    if A == 0:
        raise ValueError("modularity undefined for a graph without edges")
    labels = clustering.labels
    k = clustering.k
    src = np.repeat(np.arange(g.n), g.degrees)
    same = labels[src] == labels[g.indices]
    intra = np.bincount(labels[src[same]], weights=g.weights[same], minlength=k)
    vol = np.bincount(labels, weights=g.strengths, minlength=k)
    return float((intra / A).sum() - ((vol / A) ** 2).sum())


def cluster_fitness(
    g: Graph,
    clustering: Clustering,
    c,
    paper_literal: bool = False,
    avg_normalizer: str = "cluster",
) -> ClusterFitness:
    """All per-cluster measures for one cluster of a crisp clustering."""
    c = _members(g, c)
    intra, out = weight_summary(g, c)
    b = boundary_measures(g, c, paper_literal)
    if len(c) < 2 and not paper_literal:
        intra_d = NAN
        inter_d = density_measures(g, clustering, c, paper_literal=True)[1]
    else:
        intra_d, inter_d = density_measures(g, clustering, c, paper_literal)
    try:
        odf = odf_measures(g, c, paper_literal, avg_normalizer, clustering.k)
    except ValueError:
        odf = (NAN, NAN, NAN)
    sub = induced_subgraph(g, c)
    gcc, lcc = clustering_coefficients(sub) if not g.directed else (NAN, np.array([NAN]))
    return ClusterFitness(
        size=len(c),
        sum_intra_weight=intra,
        sum_out_weight=out,
        expansion=b["expansion"],
        cut_ratio=b["cut_ratio"],
        intra_density=intra_d,
        inter_density=inter_d,
        relative_density=b["relative_density"],
        conductance=b["conductance"],
        normalized_cut=b["normalized_cut"],
        max_odf=odf[0],
        avg_odf=odf[1],
        flake_odf=odf[2],
        separability=b["separability"],
        global_cc=gcc,
        avg_local_cc=float(np.mean(lcc)),
    )


def clustering_fitness(g: Graph, clustering: Clustering, paper_literal: bool = False, avg_normalizer: str = "cluster"):
    """Per-cluster fitness rows plus an aggregate.

    The aggregate is the unweighted mean of each measure over clusters
    (ignoring nan; infinities propagate) together with the modularity.
    """
    rows = [cluster_fitness(g, clustering, c, paper_literal, avg_normalizer) for c in clustering.clusters]
    agg = {}
    for name in FITNESS_FIELDS:
        vals = np.array([getattr(r, name) for r in rows], dtype=np.float64)
        finite = vals[~np.isnan(vals)]
        agg[name] = float(finite.mean()) if len(finite) else NAN
    agg["modularity"] = modularity(g, clustering) if g.total_weight > 0 else NAN
    return rows, agg
