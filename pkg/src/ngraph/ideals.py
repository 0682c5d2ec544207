"""Vertex-set side of the graded ideal theory.

Saturated hereditary vertex sets ``H`` index the gauge-invariant (basic
graded) ideals ``I(H)``; every ideal operation here is carried out on the
vertex sets.  Hereditary means closed under ``r(lam) in H => s(lam) in H``.
"""

from __future__ import annotations

from collections import deque
from typing import FrozenSet, Iterable, List

from .graph import GraphError, NGraph

VertexSet = FrozenSet[str]


class NotSaturatedHereditary(GraphError):
    pass


def vset(members: Iterable[str]) -> VertexSet:
    return frozenset(members)


def render_set(h: Iterable[str]) -> str:
    return "{" + ",".join(sorted(h)) + "}"


def set_order(h: VertexSet):
    return (len(h), sorted(h))


def is_hereditary(h: Iterable[str], g: NGraph) -> bool:
    h = frozenset(h)
    # single edges suffice: every path factors into edges
    return all(e.source in h for e in g.edges if e.range in h)


def forced(v: str, h: VertexSet, g: NGraph) -> bool:
    """Whether some explicit color ``c`` has ``s(v Lam^{e_c}) <= h``."""
    for c in range(1, g.K + 1):
        into = g.edges_into(v, c)
        if into and all(g.edge[e].source in h for e in into):
            return True
    return False


def is_saturated(h: Iterable[str], g: NGraph) -> bool:
    h = frozenset(h)
    return not any(forced(v, h, g) for v in g.vertices if v not in h)


def hereditary_closure(h: Iterable[str], g: NGraph) -> VertexSet:
    seen = set(h)
    todo = deque(seen)
    while todo:
        v = todo.popleft()
        for c in range(1, g.K + 1):
            for e in g.edges_into(v, c):
                s = g.edge[e].source
                if s not in seen:
                    seen.add(s)
                    todo.append(s)
    return frozenset(seen)


def closure(h: Iterable[str], g: NGraph) -> VertexSet:
    """Smallest saturated hereditary set containing ``h``."""
    current = hereditary_closure(h, g)
    while True:
        grown = [v for v in g.vertices if v not in current and forced(v, current, g)]
        if not grown:
            return current
        current = hereditary_closure(current | set(grown), g)


def enumerate_lattice(g: NGraph) -> List[VertexSet]:
    """Every saturated hereditary subset, ordered by size then members.

    Each element is the closure of a union of principal closures, so the
    lattice is generated from ``closure({v})`` by joins.
    """
    principal = {closure([v], g) for v in g.vertices}
    found = {closure([], g)}
    frontier = list(found)
    while frontier:
        nxt = []
        for h in frontier:
            for p in principal:
                j = closure(h | p, g)
                if j not in found:
                    found.add(j)
                    nxt.append(j)
        frontier = nxt
    return sorted(found, key=set_order)


def lattice_join(a: VertexSet, b: VertexSet, g: NGraph) -> VertexSet:
    return closure(a | b, g)


def lattice_meet(a: VertexSet, b: VertexSet) -> VertexSet:
    return a & b


def require_closed(h: Iterable[str], g: NGraph) -> VertexSet:
    h = frozenset(h)
    unknown = [v for v in h if not g.has_vertex(v)]
    if unknown:
        raise NotSaturatedHereditary(f"unknown vertices {render_set(unknown)}")
    if not (is_hereditary(h, g) and is_saturated(h, g)):
        raise NotSaturatedHereditary(f"{render_set(h)} is not saturated and hereditary")
    return h


def quotient(g: NGraph, h: Iterable[str]) -> NGraph:
    """The graph ``Lambda \\ H`` on the vertices outside ``h``."""
    h = require_closed(h, g)
    return g.restrict([v for v in g.vertices if v not in h])


def reach_T(w: str, g: NGraph) -> VertexSet:
    """``T(w)``: sources of paths with range ``w`` (``w`` included)."""
    return hereditary_closure([w], g)


def hbar(h: Iterable[str], g: NGraph) -> VertexSet:
    """Ranges of paths whose source lies in ``h``."""
    seen = set(h)
    todo = deque(seen)
    out_of = {}
    for e in g.edges:
        out_of.setdefault(e.source, []).append(e.range)
    while todo:
        v = todo.popleft()
        for r in out_of.get(v, ()):
            if r not in seen:
                seen.add(r)
                todo.append(r)
    return frozenset(seen)


def perp(h: Iterable[str], g: NGraph) -> VertexSet:
    """Vertex set of the annihilator ideal ``I(H)^perp``."""
    h = require_closed(h, g)
    return frozenset(g.vertices) - hbar(h, g)


def double_perp(h: Iterable[str], g: NGraph) -> VertexSet:
    h = require_closed(h, g)
    above = hbar(h, g)
    return frozenset(w for w in g.vertices if reach_T(w, g) <= above)


def is_regular(h: Iterable[str], g: NGraph) -> bool:
    h = require_closed(h, g)
    return double_perp(h, g) == h
