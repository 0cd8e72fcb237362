"""Greedy clique expansion (overlapping communities)."""

from __future__ import annotations

from collections.abc import Iterable

from ..graph import Clustering, Graph

MAX_CLIQUES = 100_000
DUPLICATE_JACCARD = 0.75


def gce_fitness(g: Graph, s: Iterable[int], alpha: float = 1.0) -> float:
    """``k_in / (k_in + k_out)**alpha`` with ``k_in`` twice the internal edge count."""
    s = set(int(v) for v in s)
    if not s:
        raise ValueError("empty vertex set")
    k_in = k_out = 0
    for v in s:
        for u in g.neighbors(v).tolist():
            if u in s:
                k_in += 1
            else:
                k_out += 1
    return _fitness(k_in, k_out, alpha)


def _fitness(k_in, k_out, alpha):
    tot = k_in + k_out
    return k_in / tot**alpha if tot else 0.0


def maximal_cliques(g: Graph, min_size: int = 4, limit: int = MAX_CLIQUES) -> list[frozenset]:
    """Maximal cliques of at least ``min_size`` vertices (Bron-Kerbosch with pivoting)."""
    adj = [set(g.neighbors(v).tolist()) for v in range(g.n)]
    out: list[frozenset] = []
    # degeneracy-free outer loop over vertices keeps recursion shallow on sparse graphs
    stack = [(set(), set(range(g.n)), set())]
    while stack and len(out) < limit:
        r, p, x = stack.pop()
        if not p and not x:
            if len(r) >= min_size:
                out.append(frozenset(r))
            continue
        if len(r) + len(p) < min_size:
            continue
        pivot = max(p | x, key=lambda u: len(adj[u] & p))
        for v in list(p - adj[pivot]):
            stack.append((r | {v}, p & adj[v], x & adj[v]))
            p = p - {v}
            x = x | {v}
    return out


def _expand(g: Graph, adj, seed: frozenset, alpha: float) -> frozenset:
    s = set(seed)
    k_in = k_out = 0
    inner: dict[int, int] = {}
    for v in s:
        for u in adj[v]:
            if u in s:
                k_in += 1
            else:
                k_out += 1
                inner[u] = inner.get(u, 0) + 1
    fit = _fitness(k_in, k_out, alpha)
    while inner:
        best, best_fit, best_t = None, fit, 0
        for x, t in inner.items():
            d = len(adj[x])
            f = _fitness(k_in + 2 * t, k_out - t + (d - t), alpha)
            if f > best_fit + 1e-12 or (best is not None and abs(f - best_fit) <= 1e-12 and x < best):
                best, best_fit, best_t = x, f, t
        if best is None:
            break
        d = len(adj[best])
        k_in += 2 * best_t
        k_out += d - 2 * best_t
        fit = best_fit
        s.add(best)
        del inner[best]
        for u in adj[best]:
            if u not in s:
                inner[u] = inner.get(u, 0) + 1
    return frozenset(s)


def _jaccard(a: frozenset, b: frozenset) -> float:
    return len(a & b) / len(a | b)


def gce_expand(
    g: Graph,
    seed_cliques: Iterable[Iterable[int]] | None = None,
    alpha: float = 1.0,
    min_clique: int = 4,
    max_cliques: int = MAX_CLIQUES,
) -> Clustering:
    """Expand seeds greedily by fitness and keep the non-duplicate results.

    Seeds default to maximal cliques of at least ``min_clique`` vertices and
    are expanded largest first. A community whose Jaccard similarity with an
    accepted one reaches 0.75 is discarded. Vertices left uncovered become
    singleton clusters so the result covers the graph.
    """
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    if g.directed:
        raise ValueError("gce needs an undirected graph")
    if seed_cliques is None:
        seeds = maximal_cliques(g, min_clique, max_cliques)
    else:
        seeds = [frozenset(int(v) for v in s) for s in seed_cliques]
        if any(not s for s in seeds):
            raise ValueError("empty seed set")
    seeds.sort(key=lambda s: (-len(s), sorted(s)))
    adj = [set(g.neighbors(v).tolist()) for v in range(g.n)]
    accepted: list[frozenset] = []
    for s in seeds:
        comm = _expand(g, adj, s, alpha)
        if all(_jaccard(comm, a) < DUPLICATE_JACCARD for a in accepted):
            accepted.append(comm)
    memberships: list[list[int]] = [[] for _ in range(g.n)]
    for cid, comm in enumerate(accepted):
        for v in comm:
            memberships[v].append(cid)
    nxt = len(accepted)
    for v in range(g.n):
        if not memberships[v]:
            memberships[v].append(nxt)
            nxt += 1
    return Clustering(memberships, g.vertex_ids)
