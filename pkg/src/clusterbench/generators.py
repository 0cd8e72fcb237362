"""Seeded benchmark graphs with planted ground truth.

``RAND(n, m)``
    uniform random graph, one all-vertex truth cluster.
``SIMPLE(nc, cz, k_i, k_o)``
    ``nc`` clusters of ``cz`` vertices, each a random ``k_i``-regular graph,
    with exactly ``k_o`` random edges between every pair of clusters.
``LFR`` / ``WLFR``
    power-law degrees and community sizes with mixing ``mu``; the weighted
    variant spreads vertex strength ``deg**beta`` so that a fraction
    ``mu_t`` lands on external edges.

Every generator draws from ``numpy.random.default_rng(seed)`` only, so an
instance is a pure function of its :class:`GeneratorSpec`.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .graph import Clustering, Graph, build_graph_arrays

REGULAR_REPAIR_PASSES = 100
LFR_SAMPLING_RETRIES = 100


class InfeasibleSpec(ValueError):
    """Generator parameters that cannot be realized."""


@dataclass(frozen=True)
class GeneratorSpec:
    kind: str
    params: dict = field(default_factory=dict)
    seed: int = 0

    def __post_init__(self):
        kind = self.kind.upper()
        if kind not in _GENERATORS:
            raise ValueError(f"unknown generator kind {self.kind!r}")
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "params", dict(self.params))

    @property
    def gamma(self) -> float | None:
        """``k_o / k_i`` for SIMPLE specs, else None."""
        if self.kind != "SIMPLE":
            return None
        return self.params["k_o"] / self.params["k_i"]

    @property
    def key(self) -> str:
        """Canonical text form, used to order records."""
        return f"{self.kind}{json.dumps(self.params, sort_keys=True)}"

    def with_seed(self, seed: int) -> GeneratorSpec:
        return GeneratorSpec(self.kind, self.params, seed)

    def to_dict(self) -> dict:
        return {"kind": self.kind, "params": dict(self.params), "seed": self.seed}

    @classmethod
    def from_dict(cls, d: dict) -> GeneratorSpec:
        return cls(d["kind"], d.get("params", {}), d.get("seed", 0))

    def label(self) -> str:
        inner = ",".join(f"{v:g}" if isinstance(v, float) else str(v) for v in self.params.values())
        return f"{self.kind}({inner})"


@dataclass(frozen=True)
class BenchmarkInstance:
    graph: Graph
    truth: Clustering
    spec: GeneratorSpec

    def spec_json(self) -> dict:
        d = self.spec.to_dict()
        d["realized"] = {"n": self.graph.n, "m": self.graph.m}
        return d


def generate(spec: GeneratorSpec) -> BenchmarkInstance:
    return _GENERATORS[spec.kind](**spec.params, seed=spec.seed)


def _instance(n, src, dst, labels, spec, weights=None) -> BenchmarkInstance:
    g = build_graph_arrays(src, dst, weights, nodes=range(n), strict=True)
    return BenchmarkInstance(g, Clustering.from_labels(labels), spec)


# RAND


def gen_random(n: int, m: int, seed: int = 0) -> BenchmarkInstance:
    max_m = n * (n - 1) // 2
    if n < 0 or m < 0:
        raise InfeasibleSpec("n and m must be non-negative")
    if m > max_m:
        raise InfeasibleSpec(f"RAND({n}, {m}): at most {max_m} edges possible")
    rng = np.random.default_rng(seed)
    spec = GeneratorSpec("RAND", {"n": n, "m": m}, seed)
    if m > max_m // 2:
        # dense: sample pair indices directly
        idx = np.sort(rng.choice(max_m, size=m, replace=False))
        u, v = _unrank_pairs(idx, n)
    else:
        keys = np.zeros(0, dtype=np.int64)
        while len(keys) < m:
            need = m - len(keys)
            a = rng.integers(0, n, size=need + need // 8 + 16)
            b = rng.integers(0, n, size=len(a))
            ok = a != b
            lo, hi = np.minimum(a[ok], b[ok]), np.maximum(a[ok], b[ok])
            cand = lo * n + hi
            # keep first occurrences in draw order so the prefix stays uniform
            merged = np.concatenate([keys, cand])
            _, first = np.unique(merged, return_index=True)
            keys = merged[np.sort(first)][:m]
        u, v = keys // n, keys % n
    return _instance(n, u, v, np.zeros(n, dtype=np.int64), spec)


def _unrank_pairs(idx: np.ndarray, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Map ranks in ``[0, n(n-1)/2)`` to pairs ``u < v`` in row-major order."""
    # row u starts at offset u*n - u*(u+1)/2
    u = np.floor((2 * n - 1 - np.sqrt((2 * n - 1) ** 2 - 8 * idx.astype(np.float64))) / 2).astype(np.int64)
    start = u * n - u * (u + 1) // 2
    # correct float rounding at row boundaries
    over = idx < start
    u[over] -= 1
    start = u * n - u * (u + 1) // 2
    nxt = (u + 1) * n - (u + 1) * (u + 2) // 2
    under = idx >= nxt
    u[under] += 1
    start = u * n - u * (u + 1) // 2
    v = idx - start + u + 1
    return u, v


# regular subgraphs


def random_regular(n: int, d: int, rng: np.random.Generator, passes: int = REGULAR_REPAIR_PASSES) -> np.ndarray:
    """Edges ``(E, 2)`` of a random ``d``-regular simple graph on ``n`` vertices.

    Dense requests are served through the complement so the pairing step
    always works with degree at most ``(n-1)/2``.
    """
    if d < 0 or d >= max(n, 1) and not (n == 0 and d == 0):
        raise InfeasibleSpec(f"no {d}-regular graph on {n} vertices")
    if (n * d) % 2:
        raise InfeasibleSpec(f"n*d must be even for a {d}-regular graph (n={n})")
    if 2 * d > n - 1:
        comp = _regular_pairing(n, n - 1 - d, rng, passes)
        have = set(map(tuple, comp.tolist()))
        iu, iv = np.triu_indices(n, 1)
        keep = np.fromiter(((a, b) not in have for a, b in zip(iu.tolist(), iv.tolist())), dtype=bool, count=len(iu))
        return np.stack([iu[keep], iv[keep]], axis=1)
    return _regular_pairing(n, d, rng, passes)


def _regular_pairing(n, d, rng, passes) -> np.ndarray:
    if d == 0:
        return np.zeros((0, 2), dtype=np.int64)
    stubs = np.repeat(np.arange(n), d)
    for _ in range(passes):
        rng.shuffle(stubs)
        pairs = stubs.reshape(-1, 2)
        edges = _repair_pairs(pairs, rng, lambda a, b: True)
        if edges is not None:
            return edges
    raise InfeasibleSpec(f"could not realize a {d}-regular graph on {n} vertices after {passes} passes")


def _repair_pairs(pairs: np.ndarray, rng, allowed, budget_factor: int = 50) -> np.ndarray | None:
    """Fix self-loops and multi-edges in a stub pairing by degree-preserving swaps.

    Returns sorted ``(u, v)`` rows, or None if the swap budget ran out.
    ``allowed(a, b)`` forbids further pairs (e.g. same-community ones).
    """
    lo = np.minimum(pairs[:, 0], pairs[:, 1])
    hi = np.maximum(pairs[:, 0], pairs[:, 1])
    edges = list(zip(lo.tolist(), hi.tolist()))
    seen: dict[tuple[int, int], int] = {}
    bad: list[int] = []
    for i, e in enumerate(edges):
        a, b = e
        if a == b or e in seen or not allowed(a, b):
            bad.append(i)
        else:
            seen[e] = i
    if not bad:
        return np.asarray(edges, dtype=np.int64).reshape(-1, 2)
    budget = budget_factor * len(bad) + 1000
    E = len(edges)
    while bad and budget > 0:
        budget -= 1
        i = bad[-1]
        j = int(rng.integers(E))
        if j == i:
            continue
        a, b = edges[i]
        c, d = edges[j]
        j_good = edges[j] in seen and seen[edges[j]] == j
        for x, y, z, t in ((a, c, b, d), (a, d, b, c)) if rng.random() < 0.5 else ((a, d, b, c), (a, c, b, d)):
            e1 = (min(x, y), max(x, y))
            e2 = (min(z, t), max(z, t))
            if x == y or z == t or e1 == e2 or e1 in seen or e2 in seen:
                continue
            if not (allowed(*e1) and allowed(*e2)):
                continue
            if j_good:
                del seen[edges[j]]
            bad.pop()
            edges[i], edges[j] = e1, e2
            seen[e1] = i
            seen[e2] = j
            if not j_good:
                bad.remove(j)
            break
    if bad:
        return None
    return np.asarray(edges, dtype=np.int64).reshape(-1, 2)


# SIMPLE


def check_simple(nc: int, cz: int, k_i: int, k_o: int) -> None:
    """Raise :class:`InfeasibleSpec` unless SIMPLE(nc, cz, k_i, k_o) can be built."""
    if min(nc, cz) < 1 or k_i < 0 or k_o < 0:
        raise InfeasibleSpec("SIMPLE counts must be positive")
    if k_i >= cz:
        raise InfeasibleSpec(f"internal degree k_i={k_i} must be below cluster size cz={cz}")
    if (k_i * cz) % 2:
        raise InfeasibleSpec(f"k_i*cz = {k_i * cz} must be even")
    if k_o > cz * cz:
        raise InfeasibleSpec(f"k_o={k_o} exceeds the {cz * cz} possible pairs between two clusters")


def gen_simple(nc: int, cz: int, k_i: int, k_o: int, seed: int = 0) -> BenchmarkInstance:
    check_simple(nc, cz, k_i, k_o)
    rng = np.random.default_rng(seed)
    spec = GeneratorSpec("SIMPLE", {"nc": nc, "cz": cz, "k_i": k_i, "k_o": k_o}, seed)
    n = nc * cz
    parts = []
    for c in range(nc):
        parts.append(random_regular(cz, k_i, rng) + c * cz)
    if k_o and nc > 1:
        ci, cj = np.triu_indices(nc, 1)
        # one draw without replacement from the cz*cz cross pairs per cluster pair
        picks = np.argsort(rng.random((len(ci), cz * cz)), axis=1)[:, :k_o] if cz * cz <= 4096 else np.stack(
            [rng.choice(cz * cz, size=k_o, replace=False) for _ in range(len(ci))]
        )
        u = (ci[:, None] * cz + picks // cz).ravel()
        v = (cj[:, None] * cz + picks % cz).ravel()
        parts.append(np.stack([u, v], axis=1))
    edges = np.concatenate(parts) if parts else np.zeros((0, 2), dtype=np.int64)
    labels = np.repeat(np.arange(nc), cz)
    return _instance(n, edges[:, 0], edges[:, 1], labels, spec)


# LFR


def _power_law_weights(lo: int, hi: int, exponent: float) -> tuple[np.ndarray, np.ndarray]:
    vals = np.arange(lo, hi + 1)
    p = vals.astype(np.float64) ** (-exponent)
    return vals, p / p.sum()


def _solve_min_degree(k: float, max_k: int, tau1: float) -> int:
    """Smallest degree so the truncated power law on ``[kmin, max_k]`` has mean closest to ``k``."""
    best, best_err = 1, math.inf
    for lo in range(1, max_k + 1):
        vals, p = _power_law_weights(lo, max_k, tau1)
        err = abs(float(vals @ p) - k)
        if err < best_err:
            best, best_err = lo, err
        elif float(vals @ p) > k:
            break
    return best


def _degree_sequence(N, k, max_k, tau1, rng) -> np.ndarray:
    kmin = _solve_min_degree(k, max_k, tau1)
    vals, p = _power_law_weights(kmin, max_k, tau1)
    deg = rng.choice(vals, size=N, p=p)
    # pin the maximum so max_k is realized
    deg[np.argmax(deg)] = max_k
    if deg.sum() % 2:
        i = int(np.argmin(deg))
        deg[i] += 1 if deg[i] < max_k else -1
    return deg.astype(np.int64)


def _community_sizes(N, minc, maxc, tau2, rng) -> np.ndarray:
    vals, p = _power_law_weights(minc, maxc, tau2)
    sizes: list[int] = []
    while sum(sizes) < N:
        sizes.append(int(rng.choice(vals, p=p)))
    excess = sum(sizes) - N
    # trim the overshoot from the last community, else spread it over others
    if sizes[-1] - excess >= minc:
        sizes[-1] -= excess
    else:
        rest = N - sum(sizes[:-1])
        sizes.pop()
        for _ in range(rest):
            open_ = [i for i, s in enumerate(sizes) if s < maxc]
            if not open_:
                return np.zeros(0, dtype=np.int64)
            sizes[open_[int(rng.integers(len(open_)))]] += 1
    return np.asarray(sizes, dtype=np.int64)


def _assign_communities(internal, sizes, rng) -> np.ndarray | None:
    """Each vertex goes to a community strictly larger than its internal degree."""
    N = len(internal)
    order = np.lexsort((rng.random(N), -internal))
    free = sizes.copy()
    comm = np.empty(N, dtype=np.int64)
    for v in order.tolist():
        ok = np.nonzero((sizes > internal[v]) & (free > 0))[0]
        if len(ok) == 0:
            return None
        c = int(rng.choice(ok, p=free[ok] / free[ok].sum()))
        comm[v] = c
        free[c] -= 1
    return comm


def _lfr_structure(N, k, max_k, mu, tau1, tau2, minc, maxc, rng):
    if not 0 <= mu <= 1:
        raise InfeasibleSpec(f"mu={mu} outside [0, 1]")
    if not 0 < k <= max_k < N:
        raise InfeasibleSpec(f"need 0 < k <= max_k < N (k={k}, max_k={max_k}, N={N})")
    minc = int(minc if minc is not None else max(k, N / 50))
    maxc = int(min(maxc if maxc is not None else 2 * max_k, N))
    if minc > maxc:
        raise InfeasibleSpec(f"minc={minc} exceeds maxc={maxc}")
    reason = "community sizes"
    for _ in range(LFR_SAMPLING_RETRIES):
        deg = _degree_sequence(N, k, max_k, tau1, rng)
        internal = np.rint((1 - mu) * deg).astype(np.int64)
        sizes = _community_sizes(N, minc, maxc, tau2, rng)
        if len(sizes) == 0:
            reason = "community sizes summing to N within [minc, maxc]"
            continue
        if mu > 0 and len(sizes) < 2:
            reason = "at least two communities for mu > 0"
            continue
        if internal.max() >= sizes.max():
            reason = f"a community larger than the maximum internal degree {internal.max()}"
            continue
        comm = _assign_communities(internal, sizes, rng)
        if comm is None:
            reason = "enough room in communities large enough for high internal degrees"
            continue
        # each community needs an even internal stub count
        for c in range(len(sizes)):
            members = np.nonzero(comm == c)[0]
            if internal[members].sum() % 2:
                ext = members[(deg[members] - internal[members] > 0) & (internal[members] < sizes[c] - 1)]
                if len(ext):
                    internal[ext[int(rng.integers(len(ext)))]] += 1
                else:
                    # no external stub to convert: drop one stub so the mixing stays exact
                    v = members[np.argmax(internal[members])]
                    internal[v] -= 1
                    deg[v] -= 1
        external = deg - internal
        if not _balance_external(internal, external, comm, sizes, rng):
            reason = "communities whose external stubs can be wired to each other"
            continue
        return deg, internal, external, comm, sizes
    raise InfeasibleSpec(f"LFR parameters infeasible after {LFR_SAMPLING_RETRIES} draws: could not find {reason}")


def _balance_external(internal, external, comm, sizes, rng, tol: float = 0.05) -> bool:
    """Shift stubs between internal and external so no community holds more
    external stubs than all the others together (the excess could not be wired).

    Gaps above ``tol`` of all external stubs are refused (returns False) since
    fixing them would distort the mixing; the caller redraws. Moves happen in
    even batches per community to keep internal stub sums even. Arrays are
    modified in place.
    """
    n_comm = len(sizes)
    if n_comm < 2:
        return True
    for _ in range(8):
        ext_c = np.bincount(comm, weights=external, minlength=n_comm).astype(np.int64)
        big = int(np.argmax(ext_c))
        gap = int(ext_c[big] - (ext_c.sum() - ext_c[big]))
        if gap <= 0:
            return True
        if gap > tol * ext_c.sum():
            return False
        # half the gap turns internal on the dominant side, half turns external elsewhere
        x = 2 * (gap // 4)
        y = gap - x
        members = np.nonzero(comm == big)[0]
        moved = 0
        for v in rng.permutation(np.repeat(members, external[members])).tolist():
            if moved == x:
                break
            if external[v] > 0 and internal[v] < sizes[big] - 1:
                internal[v] += 1
                external[v] -= 1
                moved += 1
        if moved % 2:
            internal[v] -= 1
            external[v] += 1
        moved = 0
        for c in rng.permutation(n_comm).tolist():
            if c == big or moved >= y:
                continue
            members = np.nonzero(comm == c)[0]
            stubs = rng.permutation(np.repeat(members, internal[members])).tolist()
            for i in range(0, len(stubs) - 1, 2):
                if moved >= y:
                    break
                for v in stubs[i : i + 2]:
                    internal[v] -= 1
                    external[v] += 1
                moved += 2
    return False


def _wire(owner: np.ndarray, rng, comm: np.ndarray | None = None, rounds: int = 60) -> np.ndarray:
    """Configuration-model pairing of the stubs in ``owner``.

    Pairs are drawn in rounds: valid pairs are kept, the stubs of invalid ones
    (self-loops, duplicates, and same-community pairs when ``comm`` is given)
    are reshuffled into the next round. A final swap pass repairs what is left;
    stubs that still cannot be placed are dropped.
    """
    base = int(owner.max()) + 1 if len(owner) else 1
    kept = np.zeros(0, dtype=np.int64)
    left = owner.copy()
    stall = 0
    for _ in range(rounds):
        if len(left) < 2:
            break
        rng.shuffle(left)
        pairs = left[: len(left) // 2 * 2].reshape(-1, 2)
        lo, hi = pairs.min(axis=1), pairs.max(axis=1)
        key = lo * base + hi
        ok = lo != hi
        if comm is not None:
            ok &= comm[lo] != comm[hi]
        ok &= ~np.isin(key, kept)
        _, first = np.unique(key, return_index=True)
        firsts = np.zeros(len(key), dtype=bool)
        firsts[first] = True
        ok &= firsts
        kept = np.concatenate([kept, key[ok]])
        rest = pairs[~ok].ravel()
        if len(left) % 2:
            rest = np.append(rest, left[-1])
        stall = stall + 1 if len(rest) >= len(left) * 0.98 else 0
        left = rest
        if stall >= 3:
            break
    edges = [(int(k // base), int(k % base)) for k in kept.tolist()]
    if len(left) >= 2:
        edges = _swap_residual(edges, left, rng, comm)
    return np.asarray(edges, dtype=np.int64).reshape(-1, 2)


def _swap_residual(edges, left, rng, comm):
    """Place leftover stub pairs by swapping with each other or with placed edges."""
    present = set(edges)
    comm_l = comm.tolist() if comm is not None else None

    def ok(x, y):
        return x != y and (min(x, y), max(x, y)) not in present and (comm_l is None or comm_l[x] != comm_l[y])

    def norm(x, y):
        return (x, y) if x < y else (y, x)

    rng.shuffle(left)
    pending = [tuple(p) for p in left[: len(left) // 2 * 2].reshape(-1, 2).tolist()]
    budget = 200 * len(pending) + 1000
    while pending and budget > 0:
        budget -= 1
        a, b = pending[-1]
        if ok(a, b):
            pending.pop()
            present.add(norm(a, b))
            edges.append(norm(a, b))
            continue
        from_pending = len(pending) > 1 and (not edges or rng.random() < 0.5)
        if from_pending:
            j = int(rng.integers(len(pending) - 1))
            c, d = pending[j]
        elif edges:
            j = int(rng.integers(len(edges)))
            c, d = edges[j]
            present.discard(edges[j])
        else:
            break
        for x, y, z, t in ((a, c, b, d), (a, d, b, c)):
            if ok(x, y) and ok(z, t) and norm(x, y) != norm(z, t):
                e1, e2 = norm(x, y), norm(z, t)
                present.update((e1, e2))
                pending.pop()
                if from_pending:
                    pending.pop(j)
                    edges.extend((e1, e2))
                else:
                    edges[j] = e1
                    edges.append(e2)
                break
        else:
            if not from_pending:
                present.add(edges[j])
    return edges


def _lfr_edges(deg, internal, external, comm, sizes, rng) -> np.ndarray:
    parts = []
    for c in range(len(sizes)):
        members = np.nonzero(comm == c)[0]
        owner = np.repeat(members, internal[members])
        parts.append(_wire(owner, rng))
    owner = np.repeat(np.arange(len(deg)), external)
    parts.append(_wire(owner, rng, comm))
    return np.concatenate(parts) if parts else np.zeros((0, 2), dtype=np.int64)


def gen_lfr(
    N: int,
    k: float,
    max_k: int,
    mu: float,
    tau1: float = 2.0,
    tau2: float = 1.0,
    minc: int | None = None,
    maxc: int | None = None,
    seed: int = 0,
) -> BenchmarkInstance:
    """Unweighted LFR-style graph. ``minc`` defaults to ``max(k, N/50)``, ``maxc`` to ``2*max_k``."""
    rng = np.random.default_rng(seed)
    params = dict(N=N, k=k, max_k=max_k, mu=mu, tau1=tau1, tau2=tau2, minc=minc, maxc=maxc)
    spec = GeneratorSpec("LFR", {a: b for a, b in params.items() if b is not None}, seed)
    deg, internal, external, comm, sizes = _lfr_structure(N, k, max_k, mu, tau1, tau2, minc, maxc, rng)
    edges = _lfr_edges(deg, internal, external, comm, sizes, rng)
    return _instance(N, edges[:, 0], edges[:, 1], comm, spec)


def gen_wlfr(
    N: int,
    k: float,
    max_k: int,
    mu: float,
    mu_t: float,
    beta: float = 1.5,
    tau1: float = 2.0,
    tau2: float = 1.0,
    minc: int | None = None,
    maxc: int | None = None,
    seed: int = 0,
) -> BenchmarkInstance:
    """Weighted LFR-style graph.

    Vertex ``v`` gets strength ``deg(v)**beta``, split ``(1-mu_t)`` internal
    and ``mu_t`` external. An edge's weight is the mean of its endpoints'
    per-edge share of the matching strength part, so the realized external
    weight fraction tracks ``mu_t``.
    """
    if not 0 <= mu_t <= 1:
        raise InfeasibleSpec(f"mu_t={mu_t} outside [0, 1]")
    rng = np.random.default_rng(seed)
    params = dict(N=N, k=k, max_k=max_k, mu=mu, mu_t=mu_t, beta=beta, tau1=tau1, tau2=tau2, minc=minc, maxc=maxc)
    spec = GeneratorSpec("WLFR", {a: b for a, b in params.items() if b is not None}, seed)
    deg, internal, external, comm, sizes = _lfr_structure(N, k, max_k, mu, tau1, tau2, minc, maxc, rng)
    edges = _lfr_edges(deg, internal, external, comm, sizes, rng)
    u, v = edges[:, 0], edges[:, 1]
    inside = comm[u] == comm[v]
    # use realized degrees so strengths add up after repair losses
    k_in = np.bincount(np.concatenate([u[inside], v[inside]]), minlength=N)
    k_out = np.bincount(np.concatenate([u[~inside], v[~inside]]), minlength=N)
    strength = deg.astype(np.float64) ** beta
    share_in = np.divide((1 - mu_t) * strength, k_in, out=np.zeros(N), where=k_in > 0)
    share_out = np.divide(mu_t * strength, k_out, out=np.zeros(N), where=k_out > 0)
    w = np.where(inside, (share_in[u] + share_in[v]) / 2, (share_out[u] + share_out[v]) / 2)
    # mu_t in {0, 1} would zero one side; weights must stay positive
    w = np.maximum(w, 1e-9 * max(float(strength.max()), 1.0))
    return _instance(N, u, v, comm, spec, weights=w)


_GENERATORS = {"RAND": gen_random, "SIMPLE": gen_simple, "LFR": gen_lfr, "WLFR": gen_wlfr}


def realized_mixing(inst: BenchmarkInstance) -> float:
    """Mean over vertices of the fraction of neighbors outside the vertex's truth cluster."""
    g, labels = inst.graph, inst.truth.labels
    src = np.repeat(np.arange(g.n), g.degrees)
    ext = np.bincount(src, weights=(labels[src] != labels[g.indices]).astype(float), minlength=g.n)
    deg = g.degrees
    frac = np.divide(ext, deg, out=np.zeros(g.n), where=deg > 0)
    return float(frac[deg > 0].mean())


def realized_weight_mixing(inst: BenchmarkInstance) -> float:
    """Share of total edge weight on edges between different truth clusters."""
    g, labels = inst.graph, inst.truth.labels
    src = np.repeat(np.arange(g.n), g.degrees)
    cross = labels[src] != labels[g.indices]
    return float(g.weights[cross].sum() / g.weights.sum())
