"""Two-level map equation codelength of a partition (evaluator only)."""

from __future__ import annotations

import numpy as np

from ..graph import Clustering, Graph

TELEPORT = 0.15
MAX_SWEEPS = 10_000
TOL = 1e-12


class ConvergenceError(RuntimeError):
    pass


def visit_rates(g: Graph, teleport: float = TELEPORT) -> np.ndarray:
    """Stationary distribution of a random walk teleporting with probability ``teleport``.

    Dangling vertices always teleport. With ``teleport == 0`` on an undirected
    graph the exact stationary distribution ``strength / total`` is returned,
    which is defined even for disconnected or bipartite graphs.
    """
    n = g.n
    if n == 0:
        raise ValueError("empty graph")
    strength = g.strengths
    if teleport == 0 and not g.directed:
        if strength.sum() == 0:
            return np.full(n, 1.0 / n)
        return strength / strength.sum()
    mat = g.to_scipy()
    inv = np.divide(1.0, strength, out=np.zeros(n), where=strength > 0)
    # transpose of the row-stochastic transition matrix
    trans = (mat.multiply(inv[:, None])).T.tocsr()
    dangling = strength == 0
    p = np.full(n, 1.0 / n)
    for _ in range(MAX_SWEEPS):
        nxt = (1 - teleport) * (trans @ p)
        nxt += ((1 - teleport) * p[dangling].sum() + teleport) / n
        nxt /= nxt.sum()
        if np.abs(nxt - p).sum() < TOL:
            return nxt
        p = nxt
    raise ConvergenceError(f"power iteration did not converge in {MAX_SWEEPS} sweeps")


def _plogp(x: np.ndarray) -> float:
    x = x[x > 0]
    return float((x * np.log2(x)).sum())


def map_equation_codelength(g: Graph, c: Clustering, teleport: float = TELEPORT) -> float:
    """Codelength in bits, ``q H(Q) + sum_i p_i H(P_i)``.

    Teleportation only shapes the visit rates; module exit rates count flow
    along edges leaving the module (unrecorded teleportation).
    """
    if c.overlapped:
        raise ValueError("map equation needs a crisp partition")
    if c.n != g.n:
        raise ValueError("partition and graph differ in vertex count")
    p = visit_rates(g, teleport)
    labels = c.labels
    k = c.k
    strength = g.strengths
    src = np.repeat(np.arange(g.n), g.degrees)
    flow = p[src] * np.divide(g.weights, strength[src], out=np.zeros(len(src)), where=strength[src] > 0)
    crossing = labels[src] != labels[g.indices]
    exit_rate = np.bincount(labels[src[crossing]], weights=flow[crossing], minlength=k)
    module_rate = np.bincount(labels, weights=p, minlength=k)
    q = exit_rate.sum()
    index_term = 0.0
    if q > 0:
        index_term = -_plogp(exit_rate / q) * q
    module_term = 0.0
    for i in range(k):
        total_i = exit_rate[i] + module_rate[i]
        if total_i <= 0:
            continue
        members = c.clusters[i]
        parts = np.concatenate([[exit_rate[i]], p[members]]) / total_i
        module_term += -_plogp(parts) * total_i
    return index_term + module_term
