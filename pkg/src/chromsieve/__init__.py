"""Exact edge coloring and list edge coloring by algebraic sieving over GF(2^64)."""

from .graph import ColoringInstance, Graph, ParseError, edge_instance, format_instance, parse_instance, read_instance
from .solver import SolveConfig, Verdict, edge_coloring, edge_coloring_regular, list_edge_coloring, solve

__all__ = [
    "ColoringInstance", "Graph", "ParseError", "SolveConfig", "Verdict", "edge_coloring",
    "edge_coloring_regular", "edge_instance", "format_instance", "list_edge_coloring",
    "parse_instance", "read_instance", "solve",
]
__version__ = "0.1.0"
