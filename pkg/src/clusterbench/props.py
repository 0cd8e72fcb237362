"""Whole-graph structural properties.

Shortest paths are hop counts even on weighted graphs. On disconnected
graphs the diameter and effective diameter only consider finite distances.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.sparse.csgraph import shortest_path

from .graph import Graph

EXACT_THRESHOLD = 2000
SAMPLE_SIZE = 256
_CHUNK = 512


@dataclass(frozen=True)
class GraphProfile:
    density: float
    diameter: int
    effective_diameter: float
    global_cc: float
    avg_local_cc: float
    degree_centrality: np.ndarray
    farness: np.ndarray
    closeness: np.ndarray
    eccentricity: np.ndarray
    local_cc: np.ndarray
    sampled: bool = False


def _hop_matrix(g: Graph):
    a = g.to_scipy().copy()
    a.data = np.ones_like(a.data)
    return a


def _bfs_rows(g: Graph, sources: np.ndarray):
    """Yield blocks of hop distances (inf when unreachable) from ``sources``."""
    a = _hop_matrix(g)
    for start in range(0, len(sources), _CHUNK):
        idx = sources[start : start + _CHUNK]
        yield idx, shortest_path(a, directed=g.directed, unweighted=True, indices=idx)


def density(g: Graph) -> float:
    """Directed-edge count over ``n(n-1)``; a complete undirected graph gives 1."""
    if g.n < 2:
        raise ValueError("density needs at least two vertices")
    return len(g.indices) / (g.n * (g.n - 1))


def _percentile_from_counts(counts: np.ndarray, q: float) -> float:
    """Linear-interpolated percentile of the multiset ``{d repeated counts[d]}``."""
    total = int(counts.sum())
    if total == 0:
        return 0.0
    h = (total - 1) * q / 100.0
    lo, hi = int(np.floor(h)), int(np.ceil(h))
    cum = np.cumsum(counts)
    v_lo = int(np.searchsorted(cum, lo, side="right"))
    v_hi = int(np.searchsorted(cum, hi, side="right"))
    return v_lo + (h - lo) * (v_hi - v_lo)


def diameters(
    g: Graph,
    sample_size: int = SAMPLE_SIZE,
    seed: int = 0,
    exact_threshold: int = EXACT_THRESHOLD,
) -> tuple[int, float]:
    """Diameter and effective (90th percentile) diameter in hops.

    Exact all-pairs BFS up to ``exact_threshold`` vertices, otherwise BFS
    from ``sample_size`` random sources drawn with ``seed``.
    """
    if g.n == 0:
        raise ValueError("empty graph")
    if g.n <= exact_threshold:
        sources = np.arange(g.n)
    else:
        rng = np.random.default_rng(seed)
        sources = np.sort(rng.choice(g.n, size=min(sample_size, g.n), replace=False))
    counts = np.zeros(g.n + 1, dtype=np.int64)
    for _, dist in _bfs_rows(g, sources):
        finite = dist[np.isfinite(dist) & (dist > 0)].astype(np.int64)
        counts += np.bincount(finite, minlength=g.n + 1)
    nz = np.nonzero(counts)[0]
    diam = int(nz[-1]) if len(nz) else 0
    return diam, _percentile_from_counts(counts, 90.0)


def centralities(g: Graph) -> dict[str, np.ndarray]:
    """Per-vertex degree centrality, farness, closeness and eccentricity.

    Farness is the mean hop distance to the other vertices of the same
    component; closeness is its reciprocal (0 for isolated vertices).
    """
    if g.n < 2:
        raise ValueError("centralities need at least two vertices")
    n = g.n
    farness = np.zeros(n)
    ecc = np.zeros(n, dtype=np.int64)
    for idx, dist in _bfs_rows(g, np.arange(n)):
        reach = np.isfinite(dist) & (dist > 0)
        cnt = reach.sum(axis=1)
        tot = np.where(reach, dist, 0).sum(axis=1)
        farness[idx] = np.divide(tot, cnt, out=np.zeros(len(idx)), where=cnt > 0)
        ecc[idx] = np.where(reach, dist, 0).max(axis=1)
    closeness = np.divide(1.0, farness, out=np.zeros(n), where=farness > 0)
    return {
        "degree_centrality": g.degrees / (n - 1),
        "farness": farness,
        "closeness": closeness,
        "eccentricity": ecc,
    }


def eccentricity(g: Graph, v: int) -> int:
    if not 0 <= v < g.n:
        raise KeyError(f"unknown vertex {v}")
    _, dist = next(_bfs_rows(g, np.array([v])))
    d = dist[0]
    return int(d[np.isfinite(d)].max())


def clustering_coefficients(g: Graph) -> tuple[float, np.ndarray]:
    """Global (transitivity) and per-vertex local clustering coefficients."""
    if g.directed:
        raise ValueError("clustering coefficients are defined for undirected graphs")
    a = _hop_matrix(g).tocsr()
    deg = g.degrees.astype(np.float64)
    # closed walks of length 3 through v = 2 * triangles at v
    tri2 = np.asarray((a @ a).multiply(a).sum(axis=1)).ravel()
    pairs = deg * (deg - 1) / 2
    local = np.divide(tri2 / 2, pairs, out=np.zeros(g.n), where=pairs > 0)
    triplets = pairs.sum()
    glob = float(tri2.sum() / 2 / triplets) if triplets > 0 else 0.0
    return glob, local


def profile(g: Graph, sample_size: int = SAMPLE_SIZE, seed: int = 0, per_vertex: bool = True) -> GraphProfile:
    diam, eff = diameters(g, sample_size=sample_size, seed=seed)
    if g.directed:
        glob, local = float("nan"), np.full(g.n, np.nan)
    else:
        glob, local = clustering_coefficients(g)
    if per_vertex:
        cent = centralities(g)
    else:
        empty = np.zeros(0)
        cent = dict(degree_centrality=empty, farness=empty, closeness=empty, eccentricity=empty.astype(np.int64))
    return GraphProfile(
        density=density(g),
        diameter=diam,
        effective_diameter=eff,
        global_cc=glob,
        avg_local_cc=float(np.mean(local)) if g.n else 0.0,
        local_cc=local,
        sampled=g.n > EXACT_THRESHOLD,
        **cent,
    )
