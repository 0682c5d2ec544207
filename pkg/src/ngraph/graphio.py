"""Plain-text graph files.

::

    # comments run to end of line
    VERTICES u v
    COLORS 1
    EDGES
    x 1 u u          # id color source range
    g 1 v u
    SQUARES
    e f -> f e       # f g -> g' f'  with color(f) < color(g)
    TAIL true
"""

from __future__ import annotations

import re
from typing import Dict, List, Tuple

from .graph import Edge, GraphError, NGraph

IDENT = re.compile(r"^[A-Za-z0-9_']+$")
_KEYWORDS = ("VERTICES", "COLORS", "EDGES", "SQUARES", "TAIL")


class GraphSyntaxError(GraphError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


class ValidationFailure(GraphError):
    def __init__(self, report):
        super().__init__("graph failed validation: " + "; ".join(report.failures()))
        self.report = report


def _ident(token: str, lineno: int) -> str:
    if not IDENT.match(token):
        raise GraphSyntaxError(lineno, f"bad identifier {token!r}")
    return token


def parse_graph_text(text: str, validate: bool = True) -> NGraph:
    vertices: List[str] = []
    edges: List[Edge] = []
    squares: Dict[Tuple[str, str], Tuple[str, str]] = {}
    square_lines: Dict[Tuple[str, str], int] = {}
    edge_lines: Dict[str, int] = {}
    colors = None
    tail = None
    seen = set()
    section = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        head = tokens[0]
        if head in _KEYWORDS:
            if head in seen:
                raise GraphSyntaxError(lineno, f"section {head} given twice")
            seen.add(head)
            section = head
            if head == "VERTICES":
                vertices.extend(_ident(t, lineno) for t in tokens[1:])
            elif head == "COLORS":
                if len(tokens) != 2 or not tokens[1].isdigit():
                    raise GraphSyntaxError(lineno, "COLORS takes one nonnegative integer")
                colors = int(tokens[1])
            elif head == "TAIL":
                if len(tokens) != 2 or tokens[1] not in ("true", "false"):
                    raise GraphSyntaxError(lineno, "TAIL takes true or false")
                tail = tokens[1] == "true"
            elif len(tokens) != 1:
                raise GraphSyntaxError(lineno, f"{head} stands alone on its line")
            continue
        if section == "VERTICES":
            vertices.extend(_ident(t, lineno) for t in tokens)
        elif section == "EDGES":
            if len(tokens) != 4 or not tokens[1].isdigit():
                raise GraphSyntaxError(lineno, "edge lines read: id color source range")
            edges.append(Edge(_ident(tokens[0], lineno), int(tokens[1]),
                              _ident(tokens[2], lineno), _ident(tokens[3], lineno)))
            edge_lines.setdefault(tokens[0], lineno)
        elif section == "SQUARES":
            if len(tokens) != 5 or tokens[2] != "->":
                raise GraphSyntaxError(lineno, "square lines read: f g -> g' f'")
            key = (_ident(tokens[0], lineno), _ident(tokens[1], lineno))
            if key in squares:
                raise GraphSyntaxError(lineno, f"second square for ({key[0]},{key[1]})")
            squares[key] = (_ident(tokens[3], lineno), _ident(tokens[4], lineno))
            square_lines[key] = lineno
        else:
            raise GraphSyntaxError(lineno, f"unexpected {head!r} outside a section")
    if colors is None:
        raise GraphSyntaxError(0, "missing COLORS")
    known = {e.id for e in edges}
    for key, (g2, f2) in squares.items():
        for name in key + (g2, f2):
            if name not in known:
                raise GraphSyntaxError(square_lines[key], f"square mentions unknown edge {name!r}")
    known_vertices = set(vertices)
    for e in edges:
        for v in (e.source, e.range):
            if v not in known_vertices:
                raise GraphSyntaxError(edge_lines[e.id], f"edge {e.id} mentions undeclared vertex {v!r}")
    g = NGraph(vertices, edges, colors, squares, bool(tail))
    if validate:
        report = g.validate()
        if not report.passed:
            raise ValidationFailure(report)
    return g


def render_graph(g: NGraph) -> str:
    lines = ["VERTICES " + " ".join(g.vertices) if g.vertices else "VERTICES", f"COLORS {g.K}", "EDGES"]
    for e in g.edges:
        lines.append(f"{e.id} {e.color} {e.source} {e.range}")
    lines.append("SQUARES")
    for (f, g_), (g2, f2) in sorted(g.squares.items()):
        lines.append(f"{f} {g_} -> {g2} {f2}")
    lines.append(f"TAIL {'true' if g.tail else 'false'}")
    return "\n".join(lines) + "\n"


def read_graph(path: str, validate: bool = True) -> NGraph:
    with open(path, encoding="utf-8") as fh:
        return parse_graph_text(fh.read(), validate=validate)
