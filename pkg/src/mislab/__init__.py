"""mislab: independent-set structure analysis and register embedding tools."""

from .families import DesignSpec, generate
from .graph import Graph, geometric_adjacency, udg_check
from .mis import certify_core, enumerate_optima, rigidity_report, solve
from .register import EmbedConfig, Register, pulse_spec, sa_embed
from .shots import ShotSet, analyze
from .textgraph import build_knn_graph, load_vectors

__all__ = [
    "DesignSpec",
    "EmbedConfig",
    "Graph",
    "Register",
    "ShotSet",
    "analyze",
    "build_knn_graph",
    "certify_core",
    "enumerate_optima",
    "generate",
    "geometric_adjacency",
    "load_vectors",
    "pulse_spec",
    "rigidity_report",
    "sa_embed",
    "solve",
    "udg_check",
]
__version__ = "0.1.0"
