"""Louvain modularity optimization."""

from __future__ import annotations

import numba
import numpy as np
import scipy.sparse as sp

from ..graph import Clustering, Graph


@numba.njit(cache=True)
def _local_moves(indptr, indices, weights, strength, order, m2, max_sweeps):
    """Move single nodes to the neighboring community of best modularity gain.

    Works on a graph that may carry self-loops (aggregated communities);
    self-loops never enter the gain. Returns the community of each node and
    whether anything moved.
    """
    n = len(indptr) - 1
    comm = np.arange(n)
    tot = strength.copy()
    acc = np.zeros(n)
    touched = np.empty(n, dtype=np.int64)
    moved_any = False
    for _ in range(max_sweeps):
        moves = 0
        for v in order:
            cv = comm[v]
            kv = strength[v]
            nt = 0
            for p in range(indptr[v], indptr[v + 1]):
                u = indices[p]
                if u == v:
                    continue
                cu = comm[u]
                if acc[cu] == 0.0:
                    touched[nt] = cu
                    nt += 1
                acc[cu] += weights[p]
            tot[cv] -= kv
            best_c = cv
            best_gain = acc[cv] - tot[cv] * kv / m2
            for t in range(nt):
                c = touched[t]
                gain = acc[c] - tot[c] * kv / m2
                if gain > best_gain + 1e-12:
                    best_gain = gain
                    best_c = c
            for t in range(nt):
                acc[touched[t]] = 0.0
            tot[best_c] += kv
            if best_c != cv:
                comm[v] = best_c
                moves += 1
        if moves == 0:
            break
        moved_any = True
    return comm, moved_any


def _aggregate(adj: sp.csr_matrix, comm: np.ndarray) -> sp.csr_matrix:
    k = int(comm.max()) + 1
    proj = sp.csr_matrix((np.ones(len(comm)), (np.arange(len(comm)), comm)), shape=(len(comm), k))
    out = (proj.T @ adj @ proj).tocsr()
    out.sort_indices()
    return out


def louvain(g: Graph, seed: int = 0, max_levels: int = 100, max_sweeps: int = 1000) -> Clustering:
    """Louvain method: local moves, then aggregate communities into nodes; repeat.

    Visit order is reshuffled at every level from ``seed``. Stops when a
    level moves nothing, so the result never has lower modularity than the
    singleton partition.
    """
    if g.directed:
        raise ValueError("louvain needs an undirected graph")
    rng = np.random.default_rng(seed)
    n = g.n
    membership = np.arange(n)
    if g.total_weight == 0 or n == 0:
        return Clustering.from_labels(membership, g.vertex_ids)
    adj = g.to_scipy()
    m2 = float(adj.sum())
    for _ in range(max_levels):
        strength = np.asarray(adj.sum(axis=1)).ravel()
        order = rng.permutation(adj.shape[0])
        comm, moved = _local_moves(
            adj.indptr.astype(np.int64), adj.indices.astype(np.int64), adj.data.astype(np.float64),
            strength, order, m2, max_sweeps,
        )
        if not moved:
            break
        _, comm = np.unique(comm, return_inverse=True)
        membership = comm[membership]
        if comm.max() + 1 == adj.shape[0]:
            break
        adj = _aggregate(adj, comm)
    return Clustering.from_labels(membership, g.vertex_ids)
