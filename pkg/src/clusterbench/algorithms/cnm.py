"""Greedy agglomerative modularity maximization (Clauset-Newman-Moore)."""

from __future__ import annotations

import heapq

import numpy as np

from ..graph import Clustering, Graph


def greedy_cnm(g: Graph) -> Clustering:
    """Merge the community pair of largest modularity gain until no gain is positive.

    Weight-blind: every edge counts once. Ties go to the smallest
    ``(i, j)`` community-id pair, so the result is fully deterministic.
    """
    if g.directed:
        raise ValueError("greedy_cnm needs an undirected graph")
    n = g.n
    two_m = float(len(g.indices))
    if two_m == 0:
        return Clustering.from_labels(np.arange(n), g.vertex_ids)
    deg = g.degrees.astype(np.float64)
    a = (deg / two_m).tolist()
    # e[i][j]: fraction of edge ends joining communities i and j (symmetric)
    e: list[dict[int, float]] = [dict() for _ in range(n)]
    for u, v, _ in g.edges():
        e[u][v] = e[u].get(v, 0.0) + 1.0 / two_m
        e[v][u] = e[v].get(u, 0.0) + 1.0 / two_m
    heap = []
    for i in range(n):
        for j, eij in e[i].items():
            if i < j:
                heap.append((-2.0 * (eij - a[i] * a[j]), i, j))
    heapq.heapify(heap)
    parent = list(range(n))
    alive = [True] * n
    while heap:
        neg_dq, i, j = heapq.heappop(heap)
        if not (alive[i] and alive[j]) or j not in e[i]:
            continue
        dq = 2.0 * (e[i][j] - a[i] * a[j])
        if abs(dq + neg_dq) > 1e-15:
            continue  # stale entry; a fresh one was pushed on change
        if dq <= 1e-15:
            break
        # merge j into i
        for k, ejk in e[j].items():
            if k == i:
                continue
            e[i][k] = e[i].get(k, 0.0) + ejk
            e[k][i] = e[i][k]
            del e[k][j]
        del e[i][j]
        e[j] = {}
        a[i] += a[j]
        a[j] = 0.0
        alive[j] = False
        parent[j] = i
        for k, eik in e[i].items():
            lo, hi = (i, k) if i < k else (k, i)
            heapq.heappush(heap, (-2.0 * (eik - a[i] * a[k]), lo, hi))
        # gains of pairs not touching i are unchanged; pairs touching j are gone
    labels = np.array([_find(parent, v) for v in range(n)])
    return Clustering.from_labels(labels, g.vertex_ids)


def _find(parent, v):
    root = v
    while parent[root] != root:
        root = parent[root]
    while parent[v] != root:
        parent[v], v = root, parent[v]
    return root
