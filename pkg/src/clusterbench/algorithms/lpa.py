"""Asynchronous label propagation."""

from __future__ import annotations

import numba
import numpy as np

from ..graph import Clustering, Graph


@numba.njit(cache=True)
def _tally(indptr, indices, weights, labels, v, acc, touched):
    nt = 0
    best = 0.0
    for p in range(indptr[v], indptr[v + 1]):
        lab = labels[indices[p]]
        if acc[lab] == 0.0:
            touched[nt] = lab
            nt += 1
        acc[lab] += weights[p]
        if acc[lab] > best:
            best = acc[lab]
    return nt, best


@numba.njit(cache=True)
def _propagate(indptr, indices, weights, seed, max_iters):
    np.random.seed(seed)
    n = len(indptr) - 1
    labels = np.arange(n)
    acc = np.zeros(n)
    touched = np.empty(n, dtype=np.int64)
    order = np.arange(n)
    sweeps = 0
    for it in range(max_iters):
        sweeps = it + 1
        np.random.shuffle(order)
        for v in order:
            if indptr[v] == indptr[v + 1]:
                continue
            nt, best = _tally(indptr, indices, weights, labels, v, acc, touched)
            tol = 1e-12 * best
            # uniform choice among the maxima (reservoir sampling)
            new = labels[v]
            seen = 0
            for t in range(nt):
                lab = touched[t]
                if acc[lab] >= best - tol:
                    seen += 1
                    if np.random.random() * seen < 1.0:
                        new = lab
            for t in range(nt):
                acc[touched[t]] = 0.0
            labels[v] = new
        # converged when every label is among its vertex's neighborhood maxima
        stable = True
        for v in range(n):
            if indptr[v] == indptr[v + 1]:
                continue
            nt, best = _tally(indptr, indices, weights, labels, v, acc, touched)
            if acc[labels[v]] < best - 1e-12 * best:
                stable = False
            for t in range(nt):
                acc[touched[t]] = 0.0
            if not stable:
                break
        if stable:
            break
    return labels, sweeps


def lpa(g: Graph, seed: int = 0, max_iters: int = 100, use_weights: bool = True) -> Clustering:
    """Label propagation in seeded random order.

    Every vertex starts with its own label; each visit adopts the label of
    largest (weighted) neighbor support, ties broken uniformly at random.
    Stops after the first sweep that leaves every vertex holding one of its
    maximal labels (no label would have to change), or after ``max_iters``.
    """
    if g.directed:
        raise ValueError("lpa needs an undirected graph")
    w = g.weights if use_weights else np.ones(len(g.indices))
    labels, _ = _propagate(g.indptr, g.indices, w, int(seed) % (2**32), int(max_iters))
    return Clustering.from_labels(labels, g.vertex_ids)
