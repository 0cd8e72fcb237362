"""Graph and clustering data model.

Graphs are stored in compressed sparse row form with dense internal vertex
ids ``0..n-1``; the original (external) ids are kept in ``vertex_ids`` for
I/O.  Undirected graphs store both orientations of every edge.
"""

from __future__ import annotations

import logging
from collections.abc import Iterable, Sequence

import numpy as np
import scipy.sparse as sp

log = logging.getLogger(__name__)


def _frozen(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


class Graph:
    """Immutable CSR graph.

    Parameters
    ----------
    indptr, indices, weights : np.ndarray
        CSR arrays. Neighbors of ``v`` are ``indices[indptr[v]:indptr[v+1]]``
        sorted ascending; ``weights`` is aligned with ``indices``.
    directed, weighted : bool
    vertex_ids : np.ndarray, optional
        External id of each internal vertex. Defaults to ``arange(n)``.

    Use :func:`build_graph` rather than calling this directly; the
    constructor trusts its inputs.
    """

    __slots__ = ("indptr", "indices", "weights", "directed", "weighted", "vertex_ids")

    def __init__(self, indptr, indices, weights, directed=False, weighted=False, vertex_ids=None):
        n = len(indptr) - 1
        object.__setattr__(self, "indptr", _frozen(np.asarray(indptr, dtype=np.int64)))
        object.__setattr__(self, "indices", _frozen(np.asarray(indices, dtype=np.int64)))
        object.__setattr__(self, "weights", _frozen(np.asarray(weights, dtype=np.float64)))
        object.__setattr__(self, "directed", bool(directed))
        object.__setattr__(self, "weighted", bool(weighted))
        if vertex_ids is None:
            vertex_ids = np.arange(n, dtype=np.int64)
        object.__setattr__(self, "vertex_ids", _frozen(np.asarray(vertex_ids, dtype=np.int64)))

    def __setattr__(self, name, value):
        raise AttributeError("Graph is immutable")

    @property
    def n(self) -> int:
        return len(self.indptr) - 1

    @property
    def m(self) -> int:
        """Edge count; undirected edges counted once."""
        nnz = len(self.indices)
        return nnz if self.directed else nnz // 2

    @property
    def degrees(self) -> np.ndarray:
        """Neighbor counts (out-degree for directed graphs)."""
        return np.diff(self.indptr)

    @property
    def strengths(self) -> np.ndarray:
        """Weighted degrees. Equal to :attr:`degrees` for unweighted graphs."""
        src = np.repeat(np.arange(self.n), self.degrees)
        return np.bincount(src, weights=self.weights, minlength=self.n)

    @property
    def total_weight(self) -> float:
        """Sum of weights over stored (ordered) adjacency entries."""
        return float(self.weights.sum())

    def neighbors(self, v: int) -> np.ndarray:
        return self.indices[self.indptr[v] : self.indptr[v + 1]]

    def neighbor_weights(self, v: int) -> np.ndarray:
        return self.weights[self.indptr[v] : self.indptr[v + 1]]

    def index_of(self, external_id: int) -> int:
        i = int(np.searchsorted(self.vertex_ids, external_id))
        if i >= self.n or self.vertex_ids[i] != external_id:
            raise KeyError(f"unknown vertex id {external_id}")
        return i

    def edges(self):
        """Yield ``(u, v, w)`` in internal ids; undirected edges once with ``u < v``."""
        src = np.repeat(np.arange(self.n), self.degrees)
        mask = slice(None) if self.directed else src < self.indices
        for u, v, w in zip(src[mask].tolist(), self.indices[mask].tolist(), self.weights[mask].tolist()):
            yield u, v, w

    def edge_arrays(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Like :meth:`edges` but as three aligned arrays."""
        src = np.repeat(np.arange(self.n), self.degrees)
        if self.directed:
            return src, self.indices.copy(), self.weights.copy()
        mask = src < self.indices
        return src[mask], self.indices[mask], self.weights[mask]

    def to_scipy(self) -> sp.csr_matrix:
        return sp.csr_matrix((self.weights, self.indices, self.indptr), shape=(self.n, self.n))

    def unweighted(self) -> Graph:
        """Same topology with every weight set to 1."""
        if not self.weighted:
            return self
        return Graph(self.indptr, self.indices, np.ones(len(self.indices)), self.directed, False, self.vertex_ids)

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return (
            self.directed == other.directed
            and self.weighted == other.weighted
            and np.array_equal(self.vertex_ids, other.vertex_ids)
            and np.array_equal(self.indptr, other.indptr)
            and np.array_equal(self.indices, other.indices)
            and np.allclose(self.weights, other.weights, rtol=1e-12, atol=0)
        )

    __hash__ = None

    def __repr__(self):
        kind = "directed" if self.directed else "undirected"
        w = ", weighted" if self.weighted else ""
        return f"Graph(n={self.n}, m={self.m}, {kind}{w})"


def _from_coo(n, src, dst, w, directed, weighted, vertex_ids) -> Graph:
    order = np.lexsort((dst, src))
    src, dst, w = src[order], dst[order], w[order]
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(np.bincount(src, minlength=n), out=indptr[1:])
    return Graph(indptr, dst, w, directed, weighted, vertex_ids)


def build_graph(
    edges: Iterable[Sequence],
    directed: bool = False,
    weighted: bool = False,
    nodes: Iterable[int] | None = None,
    strict: bool = False,
) -> Graph:
    """Build a graph from an edge list of external ids.

    ``edges`` holds ``(u, v)`` pairs, or ``(u, v, w)`` triples when
    ``weighted``. Self-loops are dropped with a warning. Duplicate edges
    (for undirected graphs ``(u, v)`` and ``(v, u)`` are the same edge)
    raise in ``strict`` mode and are resolved last-wins otherwise.
    ``nodes`` adds vertices that may have no incident edge.
    """
    arity = 3 if weighted else 2
    rows = []
    for e in edges:
        if len(e) != arity:
            if weighted:
                raise ValueError(f"weighted graph needs (u, v, w) edges, got {tuple(e)!r}")
            raise ValueError(f"weight supplied for an unweighted graph: {tuple(e)!r}")
        rows.append(e)
    if rows:
        arr = np.asarray(rows, dtype=np.float64 if weighted else np.int64)
        if weighted and not np.array_equal(arr[:, :2], np.floor(arr[:, :2])):
            raise ValueError("vertex ids must be integers")
        src = arr[:, 0].astype(np.int64)
        dst = arr[:, 1].astype(np.int64)
        w = arr[:, 2].astype(np.float64) if weighted else np.ones(len(rows))
    else:
        src = dst = np.zeros(0, dtype=np.int64)
        w = np.zeros(0)
    return build_graph_arrays(src, dst, w if weighted else None, directed=directed, nodes=nodes, strict=strict)


def build_graph_arrays(
    src: np.ndarray,
    dst: np.ndarray,
    weights: np.ndarray | None = None,
    directed: bool = False,
    nodes: Iterable[int] | None = None,
    strict: bool = False,
) -> Graph:
    """Vectorized :func:`build_graph` over endpoint arrays."""
    src = np.asarray(src, dtype=np.int64)
    dst = np.asarray(dst, dtype=np.int64)
    weighted = weights is not None
    w = np.asarray(weights, dtype=np.float64) if weighted else np.ones(len(src))
    if len(src) != len(dst) or len(w) != len(src):
        raise ValueError("edge arrays must have equal length")
    if (src < 0).any() or (dst < 0).any():
        raise ValueError("vertex ids must be non-negative")
    if weighted and not (w > 0).all():
        raise ValueError("edge weights must be strictly positive")
    if weighted and not np.isfinite(w).all():
        raise ValueError("edge weights must be finite")

    extra = np.asarray(list(nodes) if nodes is not None else [], dtype=np.int64)
    if (extra < 0).any():
        raise ValueError("vertex ids must be non-negative")
    vertex_ids = np.unique(np.concatenate([src, dst, extra]))
    n = len(vertex_ids)
    s = np.searchsorted(vertex_ids, src)
    d = np.searchsorted(vertex_ids, dst)

    loops = s == d
    if loops.any():
        log.warning("dropping %d self-loop(s)", int(loops.sum()))
        keep = ~loops
        s, d, w = s[keep], d[keep], w[keep]

    if directed:
        key_a, key_b = s, d
    else:
        key_a, key_b = np.minimum(s, d), np.maximum(s, d)
    # keep the last occurrence of each key
    key = key_a * max(n, 1) + key_b
    rev_key = key[::-1]
    uniq, first_rev = np.unique(rev_key, return_index=True)
    if len(uniq) != len(key):
        if strict:
            raise ValueError(f"{len(key) - len(uniq)} duplicate edge(s) in strict mode")
        log.info("collapsing %d duplicate edge(s), last wins", len(key) - len(uniq))
    idx = len(key) - 1 - first_rev
    a, b, w = key_a[idx], key_b[idx], w[idx]

    if directed:
        return _from_coo(n, a, b, w, True, weighted, vertex_ids)
    return _from_coo(
        n, np.concatenate([a, b]), np.concatenate([b, a]), np.concatenate([w, w]), False, weighted, vertex_ids
    )


def to_undirected(g: Graph) -> Graph:
    """Drop edge direction. Opposite directed edges merge with summed weight."""
    if not g.directed:
        return g
    src = np.repeat(np.arange(g.n), g.degrees)
    a = np.minimum(src, g.indices)
    b = np.maximum(src, g.indices)
    n = g.n
    key = a * max(n, 1) + b
    uniq, inv = np.unique(key, return_inverse=True)
    w = np.bincount(inv, weights=g.weights, minlength=len(uniq))
    if not g.weighted:
        w = np.ones(len(uniq))
    ua, ub = uniq // max(n, 1), uniq % max(n, 1)
    return _from_coo(
        n, np.concatenate([ua, ub]), np.concatenate([ub, ua]), np.concatenate([w, w]), False, g.weighted, g.vertex_ids
    )


def induced_subgraph(g: Graph, vertices: Iterable[int]) -> Graph:
    """Subgraph on internal vertex ids ``vertices``.

    The result is densely renumbered; its ``vertex_ids`` are the external ids
    of the selected vertices.
    """
    sel = np.unique(np.fromiter(vertices, dtype=np.int64))
    if len(sel) and (sel[0] < 0 or sel[-1] >= g.n):
        raise KeyError("unknown vertex id in subset")
    mat = g.to_scipy()[sel][:, sel].tocsr()
    mat.sort_indices()
    return Graph(mat.indptr, mat.indices, mat.data, g.directed, g.weighted, g.vertex_ids[sel])


class Clustering:
    """Assignment of vertices ``0..n-1`` to one or more clusters.

    Cluster ids are dense ``0..k-1``. ``vertex_ids`` records the external id
    of each vertex so two clusterings read from files can be aligned.
    """

    __slots__ = ("_memberships", "_clusters", "_labels", "vertex_ids")

    def __init__(self, memberships: Sequence[Iterable[int]], vertex_ids=None):
        raw = [tuple(sorted(set(int(c) for c in ms))) for ms in memberships]
        for v, ms in enumerate(raw):
            if not ms:
                raise ValueError(f"vertex {v} belongs to no cluster")
        used = sorted({c for ms in raw for c in ms})
        remap = {c: i for i, c in enumerate(used)}
        mem = tuple(tuple(remap[c] for c in ms) for ms in raw)
        buckets: list[list[int]] = [[] for _ in used]
        for v, ms in enumerate(mem):
            for c in ms:
                buckets[c].append(v)
        self._memberships = mem
        self._clusters = tuple(_frozen(np.asarray(b, dtype=np.int64)) for b in buckets)
        self._labels = None
        if all(len(ms) == 1 for ms in mem):
            self._labels = _frozen(np.fromiter((ms[0] for ms in mem), dtype=np.int64, count=len(mem)))
        n = len(mem)
        self.vertex_ids = _frozen(np.arange(n, dtype=np.int64) if vertex_ids is None else np.asarray(vertex_ids, dtype=np.int64))
        if len(self.vertex_ids) != n:
            raise ValueError("vertex_ids length does not match membership count")

    @classmethod
    def from_labels(cls, labels, vertex_ids=None) -> Clustering:
        """Crisp clustering from one label per vertex (labels are renumbered)."""
        labels = np.asarray(labels)
        _, inv = np.unique(labels, return_inverse=True)
        inv = inv.astype(np.int64).ravel()
        self = object.__new__(cls)
        self._labels = _frozen(inv)
        self._memberships = None
        order = np.argsort(inv, kind="stable")
        bounds = np.cumsum(np.bincount(inv))[:-1] if len(inv) else []
        self._clusters = tuple(_frozen(c) for c in np.split(order, bounds)) if len(inv) else ()
        n = len(inv)
        self.vertex_ids = _frozen(np.arange(n, dtype=np.int64) if vertex_ids is None else np.asarray(vertex_ids, dtype=np.int64))
        if len(self.vertex_ids) != n:
            raise ValueError("vertex_ids length does not match label count")
        return self

    @classmethod
    def from_clusters(cls, clusters: Iterable[Iterable[int]], n: int, vertex_ids=None) -> Clustering:
        mem: list[list[int]] = [[] for _ in range(n)]
        for cid, members in enumerate(clusters):
            for v in members:
                mem[int(v)].append(cid)
        return cls(mem, vertex_ids)

    @property
    def n(self) -> int:
        return len(self.vertex_ids)

    @property
    def k(self) -> int:
        return len(self._clusters)

    @property
    def overlapped(self) -> bool:
        return self._labels is None

    @property
    def memberships(self) -> tuple[tuple[int, ...], ...]:
        if self._memberships is None:
            self._memberships = tuple((int(c),) for c in self._labels)
        return self._memberships

    @property
    def clusters(self) -> tuple[np.ndarray, ...]:
        return self._clusters

    @property
    def labels(self) -> np.ndarray:
        if self._labels is None:
            raise ValueError("overlapping clustering has no single label per vertex; crispify first")
        return self._labels

    def same_partition(self, other: Clustering) -> bool:
        """True if both describe the same vertex sets (ids ignored)."""
        if self.n != other.n or self.k != other.k:
            return False
        a = sorted(tuple(c.tolist()) for c in self.clusters)
        b = sorted(tuple(c.tolist()) for c in other.clusters)
        return a == b

    def __eq__(self, other):
        if not isinstance(other, Clustering):
            return NotImplemented
        return np.array_equal(self.vertex_ids, other.vertex_ids) and self.memberships == other.memberships

    __hash__ = None

    def __repr__(self):
        kind = "overlapping" if self.overlapped else "crisp"
        return f"Clustering(n={self.n}, k={self.k}, {kind})"


def crispify(c: Clustering, seed: int) -> Clustering:
    """Keep one label per overlapped vertex, chosen uniformly with a seeded RNG."""
    if not c.overlapped:
        return c
    rng = np.random.default_rng(seed)
    labels = np.empty(c.n, dtype=np.int64)
    for v, ms in enumerate(c.memberships):
        if not ms:
            raise ValueError(f"vertex {v} belongs to no cluster")
        labels[v] = ms[0] if len(ms) == 1 else ms[rng.integers(len(ms))]
    return Clustering.from_labels(labels, c.vertex_ids)
