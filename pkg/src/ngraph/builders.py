"""Constructors for the standard families of N-graphs used in tests and the CLI."""

from __future__ import annotations

import string
from itertools import combinations, product
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .graph import Edge, GraphError, NGraph
from .multidegree import MultiIndex, below


class InvalidSquares(GraphError):
    def __init__(self, report):
        super().__init__("; ".join(report.failures()))
        self.report = report


def _letters():
    for ch in string.ascii_lowercase:
        yield ch
    n = 0
    while True:
        for ch in string.ascii_lowercase:
            yield f"{ch}{n}"
        n += 1


def build_single_vertex(
    loop_counts: Sequence[int],
    squares: Optional[Mapping[Tuple[str, str], Tuple[str, str]]] = None,
    names: Optional[Sequence[Sequence[str]]] = None,
    vertex: str = "v",
) -> NGraph:
    """One vertex with ``loop_counts[c-1]`` loops of color ``c`` and a trivial tail.

    Without ``squares`` every pair of loops of different colors commutes,
    ``x y = y x``; loop names default to ``a, b, c, ...``.
    """
    if names is None:
        gen = _letters()
        names = [[next(gen) for _ in range(k)] for k in loop_counts]
    if [len(n) for n in names] != list(loop_counts):
        raise ValueError("names do not match loop_counts")
    edges = [Edge(e, c, vertex, vertex) for c, block in enumerate(names, start=1) for e in block]
    if squares is None:
        squares = {}
        for i, j in combinations(range(len(names)), 2):
            for f in names[i]:
                for g in names[j]:
                    squares[(f, g)] = (g, f)
    g = NGraph([vertex], edges, len(loop_counts), squares, tail=True)
    report = g.validate()
    if not report.passed:
        raise InvalidSquares(report)
    return g


def build_product(graphs: Sequence[NGraph]) -> NGraph:
    """Cartesian product of 1-colored graphs; color ``i`` comes from factor ``i``."""
    for g in graphs:
        if g.K != 1:
            raise ValueError("build_product takes graphs with exactly one color")
    counts: Dict[str, int] = {}
    for g in graphs:
        for e in g.edges:
            counts[e.id] = counts.get(e.id, 0) + 1

    def vname(coords: Sequence[str]) -> str:
        return "_".join(coords)

    def ename(i: int, e: str, coords: Sequence[str]) -> str:
        base = e if counts[e] == 1 else f"{e}{i + 1}"
        others = [c for k, c in enumerate(coords) if k != i]
        if any(len(g.vertices) > 1 for k, g in enumerate(graphs) if k != i):
            base += "_" + vname(others)
        return base

    vertices = [vname(t) for t in product(*(g.vertices for g in graphs))]
    edges: List[Edge] = []
    lookup: Dict[Tuple[int, str, Tuple[str, ...]], str] = {}
    for coords in product(*(g.vertices for g in graphs)):
        for i, g in enumerate(graphs):
            for eid in g.edges_into(coords[i], 1):
                e = g.edge[eid]
                src = list(coords)
                src[i] = e.source
                name = ename(i, eid, coords)
                lookup[(i, eid, coords)] = name
                edges.append(Edge(name, i + 1, vname(src), vname(coords)))
    by_id = {e.id: e for e in edges}
    squares = {}
    for coords in product(*(g.vertices for g in graphs)):
        for i, j in combinations(range(len(graphs)), 2):
            for fid in graphs[i].edges_into(coords[i], 1):
                mid = list(coords)
                mid[i] = graphs[i].edge[fid].source
                for gid in graphs[j].edges_into(mid[j], 1):
                    f = lookup[(i, fid, coords)]
                    g_ = lookup[(j, gid, tuple(mid))]
                    # g' moves first along factor j from coords, f' then along factor i
                    g2 = lookup[(j, gid, coords)]
                    after = list(coords)
                    after[j] = graphs[j].edge[gid].source
                    f2 = lookup[(i, fid, tuple(after))]
                    assert by_id[f].source == by_id[g_].range
                    squares[(f, g_)] = (g2, f2)
    return NGraph(vertices, edges, len(graphs), squares, tail=all(g.tail for g in graphs))


def omega_vertex(m: MultiIndex, colors: int) -> str:
    return "m" + "_".join(str(m[c]) for c in range(1, colors + 1))


def omega_edge(color: int, rng: str) -> str:
    return f"c{color}{rng}"


def build_omega(cap: MultiIndex) -> NGraph:
    """Finite piece ``{m : m <= cap}`` of the grid category; boundary vertices are sources."""
    if not cap:
        raise ValueError("cap must be nonzero")
    k = cap.max_color()
    points = below(cap)
    vertices = [omega_vertex(m, k) for m in points]
    edges = []
    for m in points:
        for c in range(1, k + 1):
            up = m + MultiIndex.unit(c)
            if up <= cap:
                edges.append(Edge(omega_edge(c, omega_vertex(m, k)), c, omega_vertex(up, k), omega_vertex(m, k)))
    squares = {}
    for m in points:
        for i, j in combinations(range(1, k + 1), 2):
            ei, ej = MultiIndex.unit(i), MultiIndex.unit(j)
            if not (m + ei + ej) <= cap:
                continue
            f = omega_edge(i, omega_vertex(m, k))
            g = omega_edge(j, omega_vertex(m + ei, k))
            g2 = omega_edge(j, omega_vertex(m, k))
            f2 = omega_edge(i, omega_vertex(m + ej, k))
            squares[(f, g)] = (g2, f2)
    return NGraph(vertices, edges, k, squares, tail=False)


def example(name: str) -> NGraph:
    """Named example graphs ``E1`` .. ``E5`` and ``E4p`` (see README)."""
    key = name.upper().replace("'", "P")
    if key == "E1":
        return build_single_vertex([1], names=[["f"]])
    if key == "E2":
        return build_single_vertex([2], names=[["a", "b"]])
    if key == "E3":
        return build_single_vertex([1, 1], names=[["e"], ["f"]], squares={("e", "f"): ("f", "e")})
    if key == "E4":
        return NGraph(
            ["u", "v"],
            [Edge("x", 1, "u", "u"), Edge("y", 1, "v", "v"), Edge("g", 1, "v", "u")],
            1, tail=True,
        )
    if key == "E4P":
        return NGraph(["v", "w"], [Edge("g", 1, "w", "v"), Edge("y", 1, "w", "w")], 1, tail=True)
    if key == "E5":
        return NGraph(
            ["u", "v"],
            [Edge("a", 1, "u", "u"), Edge("b", 1, "u", "u"), Edge("c", 1, "v", "v"), Edge("d", 1, "v", "v")],
            1, tail=True,
        )
    if key == "E0":
        return build_single_vertex([])
    raise KeyError(f"no example graph named {name!r}")


EXAMPLES = ("E0", "E1", "E2", "E3", "E4", "E4p", "E5")
