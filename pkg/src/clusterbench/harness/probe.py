"""Guess directed/weighted support of an algorithm by running it on a probe graph.

The probe graph and its undirected (or unweighted) projection are clustered
with the same seeds; the algorithm is taken to use the extra information if
any trial disagrees. This is a heuristic: an algorithm may use weights and
still agree on a given graph.
"""

from __future__ import annotations

import enum
import logging

from ..algorithms import AlgorithmHandle
from ..graph import Graph, build_graph, to_undirected

log = logging.getLogger(__name__)


class ProbeResult(enum.Enum):
    SUPPORTED = "supported"
    UNSUPPORTED = "unsupported"
    INCONCLUSIVE = "inconclusive"

    def __bool__(self):
        return self is ProbeResult.SUPPORTED


def bridged_cliques(size: int = 6, bridge_weight: float = 100.0) -> Graph:
    """Two ``size``-cliques joined by one edge of weight ``bridge_weight``."""
    edges = []
    for off in (0, size):
        edges += [(off + i, off + j, 1.0) for i in range(size) for j in range(i + 1, size)]
    edges.append((0, size, float(bridge_weight)))
    return build_graph(edges, weighted=True)


def directed_probe(size: int = 6) -> Graph:
    """Two directed cycles joined in one direction only, plus a hub fed by one side.

    Flow-based methods see the one-way connections differently from the
    undirected projection.
    """
    edges = []
    for off in (0, size):
        edges += [(off + i, off + (i + 1) % size) for i in range(size)]
        edges += [(off + i, off + (i + 2) % size) for i in range(size)]
    edges += [(i, size + i) for i in range(size // 2)]
    return build_graph(edges, directed=True)


def _probe_graphs(kind: str) -> tuple[Graph, Graph]:
    if kind == "weighted":
        full = bridged_cliques()
        return full, full.unweighted()
    if kind == "directed":
        full = directed_probe()
        return full, to_undirected(full)
    raise ValueError(f"unknown probe kind {kind!r}")


def probe_trials(alg: AlgorithmHandle, kind: str, trials: int = 5, seed: int = 0) -> list[bool]:
    """Per-trial divergence flags: True where the probe graph and its projection
    produced different partitions under the same seed. Exceptions propagate."""
    full, plain = _probe_graphs(kind)
    return [not alg.run(full, seed + t).same_partition(alg.run(plain, seed + t)) for t in range(trials)]


def probe_support(alg: AlgorithmHandle, kind: str, trials: int = 5, seed: int = 0) -> ProbeResult:
    """Run ``alg`` on a probe graph and its projection for ``trials`` seeds.

    ``kind`` is ``"weighted"`` or ``"directed"``. Returns SUPPORTED if any
    trial's two clusterings differ, UNSUPPORTED if all agree and
    INCONCLUSIVE if the algorithm raised.
    """
    _probe_graphs(kind)  # validate kind before running anything
    try:
        flags = probe_trials(alg, kind, trials, seed)
    except Exception as exc:  # noqa: BLE001 - any failure makes the probe inconclusive
        log.warning("probe of %s (%s) failed: %s", alg.name, kind, exc)
        return ProbeResult.INCONCLUSIVE
    return ProbeResult.SUPPORTED if any(flags) else ProbeResult.UNSUPPORTED
