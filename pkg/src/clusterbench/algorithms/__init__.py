"""Reference clustering algorithms behind a uniform handle."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from ..graph import Clustering, Graph, build_graph, to_undirected
from .cnm import greedy_cnm
from .gce import gce_expand, gce_fitness, maximal_cliques
from .louvain import louvain
from .lpa import lpa
from .mapeq import map_equation_codelength, visit_rates


@dataclass(frozen=True)
class Capabilities:
    weighted: bool = False
    directed: bool = False
    overlapping: bool = False


@dataclass(frozen=True)
class AlgorithmHandle:
    """A named algorithm plus what kinds of input it honors.

    :meth:`run` adapts the graph first: direction is dropped for
    algorithms without directed support and weights are dropped for
    weight-blind ones, the way an external tool would ignore them.
    """

    name: str
    capabilities: Capabilities
    fn: Callable[[Graph, int], Clustering]

    def run(self, g: Graph, seed: int = 0) -> Clustering:
        if g.directed and not self.capabilities.directed:
            g = to_undirected(g)
        if g.weighted and not self.capabilities.weighted:
            g = g.unweighted()
        return self.fn(g, seed)


ALGORITHMS: dict[str, AlgorithmHandle] = {
    "lpa": AlgorithmHandle("lpa", Capabilities(weighted=True), lambda g, s: lpa(g, seed=s)),
    "lpa-unweighted": AlgorithmHandle(
        "lpa-unweighted", Capabilities(), lambda g, s: lpa(g, seed=s, use_weights=False)
    ),
    "louvain": AlgorithmHandle("louvain", Capabilities(weighted=True), lambda g, s: louvain(g, seed=s)),
    "cnm": AlgorithmHandle("cnm", Capabilities(), lambda g, s: greedy_cnm(g)),
    "gce": AlgorithmHandle("gce", Capabilities(overlapping=True), lambda g, s: gce_expand(g)),
}


def warm_up() -> None:
    """Compile the numba kernels once so forked workers inherit them."""
    g = build_graph([(0, 1), (1, 2), (2, 0), (2, 3)])
    lpa(g)
    louvain(g)


def get_algorithm(name: str) -> AlgorithmHandle:
    try:
        return ALGORITHMS[name]
    except KeyError:
        raise KeyError(f"unknown algorithm {name!r}; choose from {', '.join(ALGORITHMS)}") from None


def register(handle: AlgorithmHandle) -> None:
    ALGORITHMS[handle.name] = handle


__all__ = [
    "ALGORITHMS",
    "AlgorithmHandle",
    "Capabilities",
    "gce_expand",
    "gce_fitness",
    "get_algorithm",
    "greedy_cnm",
    "louvain",
    "lpa",
    "map_equation_codelength",
    "maximal_cliques",
    "register",
    "visit_rates",
    "warm_up",
]
