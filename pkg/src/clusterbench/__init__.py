"""Community detection benchmarking: graphs, generators, measures, algorithms and harness."""

from .graph import Clustering, Graph, build_graph, crispify, induced_subgraph, to_undirected
from .generators import GeneratorSpec, InfeasibleSpec, generate

__version__ = "0.1.0"

__all__ = [
    "Clustering",
    "GeneratorSpec",
    "Graph",
    "InfeasibleSpec",
    "build_graph",
    "crispify",
    "generate",
    "induced_subgraph",
    "to_undirected",
]
