"""Row-finite N-graphs with a trivial tail, their ideal lattices and Kumjian-Pask algebras."""

from .builders import build_omega, build_product, build_single_vertex, example
from .graph import GraphError, NGraph, Path, path_text
from .graphio import parse_graph_text, read_graph, render_graph
from .kp import KPAlgebra, KPElement, equals, mul, normal_form
from .multidegree import GradedDegree, MultiIndex
from .rings import QQ, ZZ, IntegersMod, ring_from_name

__all__ = [
    "GradedDegree", "GraphError", "IntegersMod", "KPAlgebra", "KPElement", "MultiIndex", "NGraph", "Path",
    "QQ", "ZZ", "build_omega", "build_product", "build_single_vertex", "equals", "example", "mul",
    "normal_form", "parse_graph_text", "path_text", "read_graph", "render_graph", "ring_from_name",
]
