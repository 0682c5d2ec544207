"""Row-finite N-graphs presented by a colored skeleton and commuting squares.

An ``NGraph`` is the finite data

* vertices and colored edges (an edge of color ``c`` has degree ``e_c``),
* for every pair of colors ``i < j`` a bijection ``(f, g) -> (g', f')`` with
  ``f g = g' f'`` (``f``, ``f'`` of color ``i``; ``g``, ``g'`` of color ``j``),
* a ``tail`` flag: when set, every color above ``K`` carries exactly one loop
  at each vertex and commutes trivially with everything else.

Paths are kept in canonical form: explicit edges sorted by ascending color
(composition order inside a color block), then the tail counts, which always
sit at the source.  Composition reads left to right: ``lam mu`` needs
``s(lam) == r(mu)``.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .multidegree import ZERO, MultiIndex, below, leq, project, sub


class GraphError(Exception):
    pass


class NonComposable(GraphError):
    pass


class OutOfRange(GraphError):
    pass


class UnsupportedColor(GraphError):
    pass


class MissingSquare(GraphError):
    pass


class UnknownPath(GraphError):
    pass


@dataclass(frozen=True, order=True)
class Edge:
    id: str
    color: int
    source: str
    range: str


@dataclass(frozen=True)
class Path:
    range: str
    source: str
    edges: Tuple[str, ...]
    tail: MultiIndex
    degree: MultiIndex

    @property
    def is_vertex(self) -> bool:
        return not self.degree

    def sort_key(self):
        return (self.degree.sort_key(), self.range, self.edges, self.source)

    def __str__(self) -> str:
        return path_text(self)


def path_text(p: Path) -> str:
    """``a.b`` for explicit edges, the vertex id for a vertex, ``^3:1`` for tails."""
    head = ".".join(p.edges) if p.edges else p.range
    if p.tail:
        head += "^" + ",".join(f"{c}:{v}" for c, v in p.tail.items())
    return head


@dataclass
class Check:
    name: str
    problems: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.problems


@dataclass
class ValidationReport:
    checks: List[Check]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def check(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def failures(self) -> List[str]:
        return [f"{c.name}: {p}" for c in self.checks for p in c.problems]

    def lines(self) -> List[str]:
        out = []
        for c in self.checks:
            out.append(f"{c.name}: {'ok' if c.passed else 'FAIL'}")
            out.extend(f"  {p}" for p in c.problems)
        return out


class NGraph:
    """Finite presentation of a row-finite N-graph (see module docstring)."""

    def __init__(
        self,
        vertices: Iterable[str],
        edges: Iterable,
        colors: int,
        squares: Optional[Mapping[Tuple[str, str], Tuple[str, str]]] = None,
        tail: bool = False,
    ):
        self.vertices: Tuple[str, ...] = tuple(sorted(set(vertices)))
        edge_list = [e if isinstance(e, Edge) else Edge(*e) for e in edges]
        self.edges: Tuple[Edge, ...] = tuple(sorted(edge_list, key=lambda e: e.id))
        self.K = int(colors)
        self.squares: Dict[Tuple[str, str], Tuple[str, str]] = dict(squares or {})
        self.tail = bool(tail)

        self.edge: Dict[str, Edge] = {}
        self._duplicate_edges = []
        for e in self.edges:
            if e.id in self.edge:
                self._duplicate_edges.append(e.id)
            self.edge[e.id] = e
        self._vertex_set = frozenset(self.vertices)
        into = defaultdict(list)
        for e in self.edges:
            into[(e.range, e.color)].append(e.id)
        self._into = {k: tuple(v) for k, v in into.items()}
        self._unsquare: Dict[Tuple[str, str], Tuple[str, str]] = {}
        for (f, g), (g2, f2) in self.squares.items():
            self._unsquare[(g2, f2)] = (f, g)
        self._canon_cache: Dict[Tuple[str, ...], Tuple[str, ...]] = {}

    # -- identity -------------------------------------------------------

    def _key(self):
        return (self.vertices, self.edges, self.K, tuple(sorted(self.squares.items())), self.tail)

    def __eq__(self, other) -> bool:
        if not isinstance(other, NGraph):
            return NotImplemented
        return self is other or self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __repr__(self) -> str:
        return (
            f"NGraph(vertices={len(self.vertices)}, edges={len(self.edges)}, "
            f"K={self.K}, squares={len(self.squares)}, tail={self.tail})"
        )

    # -- basic queries --------------------------------------------------

    def has_vertex(self, v: str) -> bool:
        return v in self._vertex_set

    def color(self, edge_id: str) -> int:
        return self.edge[edge_id].color

    def edges_into(self, v: str, color: int) -> Tuple[str, ...]:
        """Edge ids of the given color with range ``v``, sorted."""
        return self._into.get((v, color), ())

    def explicit(self, n: MultiIndex) -> MultiIndex:
        return project(n, self.K)

    def tail_part(self, n: MultiIndex) -> MultiIndex:
        return MultiIndex({c: v for c, v in n.items() if c > self.K})

    def _check_colors(self, n: MultiIndex) -> None:
        if n.max_color() > self.K and not self.tail:
            raise UnsupportedColor(f"degree {n} uses a color above K={self.K} and the graph has no tail")

    def has_sources(self) -> bool:
        return any(not self.edges_into(v, c) for v in self.vertices for c in range(1, self.K + 1))

    # -- paths ----------------------------------------------------------

    def vertex(self, v: str) -> Path:
        if v not in self._vertex_set:
            raise UnknownPath(f"unknown vertex {v!r}")
        return Path(v, v, (), ZERO, ZERO)

    def _word_degree(self, word: Sequence[str]) -> MultiIndex:
        counts: Dict[int, int] = {}
        for e in word:
            c = self.edge[e].color
            counts[c] = counts.get(c, 0) + 1
        return MultiIndex(counts)

    def _make(self, rng: str, word: Tuple[str, ...], tail: MultiIndex) -> Path:
        src = self.edge[word[-1]].source if word else rng
        return Path(rng, src, word, tail, self._word_degree(word) + tail)

    def path(self, edge_ids: Sequence[str] = (), tail: MultiIndex = ZERO, vertex: Optional[str] = None) -> Path:
        """Path through ``edge_ids`` (composition order, any color order) followed by tail loops."""
        word = tuple(edge_ids)
        for e in word:
            if e not in self.edge:
                raise UnknownPath(f"unknown edge {e!r}")
        if tail:
            if tail.support()[0] <= self.K:
                raise UnsupportedColor(f"tail {tail} must only use colors above K={self.K}")
            self._check_colors(tail)
        for a, b in zip(word, word[1:]):
            if self.edge[a].source != self.edge[b].range:
                raise NonComposable(f"edges {a} and {b} do not compose")
        if not word:
            if vertex is None:
                raise UnknownPath("a path without edges needs a vertex")
            return Path(self.vertex(vertex).range, vertex, (), tail, tail)
        rng = self.edge[word[0]].range
        if vertex is not None and vertex != rng:
            raise NonComposable(f"vertex {vertex} is not the range of {word[0]}")
        return self._make(rng, self.canonical_word(word), tail)

    def canonical_word(self, word: Sequence[str]) -> Tuple[str, ...]:
        word = tuple(word)
        cached = self._canon_cache.get(word)
        if cached is None:
            target = sorted(self.edge[e].color for e in word)
            cached = self.reorder(word, target)
            self._canon_cache[word] = cached
        return cached

    def swap(self, x: str, y: str) -> Tuple[str, str]:
        """Exchange the colors of the composable pair ``x y`` via its square."""
        cx, cy = self.edge[x].color, self.edge[y].color
        table = self.squares if cx < cy else self._unsquare
        try:
            return table[(x, y)]
        except KeyError:
            raise MissingSquare(f"missing square for ({x},{y})") from None

    def reorder(self, word: Sequence[str], target_colors: Sequence[int]) -> Tuple[str, ...]:
        """Rewrite ``word`` by square moves until its color sequence is ``target_colors``.

        The k-th occurrence of each color goes to the k-th slot of that color,
        so equal colors never cross and every move is a genuine square.
        """
        word = list(word)
        slots: Dict[int, List[int]] = defaultdict(list)
        for pos, c in enumerate(target_colors):
            slots[c].append(pos)
        seen: Dict[int, int] = defaultdict(int)
        rank = []
        for e in word:
            c = self.edge[e].color
            try:
                rank.append(slots[c][seen[c]])
            except IndexError:
                raise ValueError("target color sequence does not match the word") from None
            seen[c] += 1
        if len(rank) != len(target_colors):
            raise ValueError("target color sequence does not match the word")
        changed = True
        while changed:
            changed = False
            for i in range(len(word) - 1):
                if rank[i] > rank[i + 1]:
                    word[i], word[i + 1] = self.swap(word[i], word[i + 1])
                    rank[i], rank[i + 1] = rank[i + 1], rank[i]
                    changed = True
        return tuple(word)

    def compose(self, lam: Path, mu: Path) -> Path:
        if lam.source != mu.range:
            raise NonComposable(f"s({path_text(lam)}) = {lam.source} but r({path_text(mu)}) = {mu.range}")
        if not lam.edges and not lam.tail:
            return mu
        if not mu.edges and not mu.tail:
            return lam
        word = self.canonical_word(lam.edges + mu.edges) if lam.edges and mu.edges else lam.edges + mu.edges
        tail = lam.tail + mu.tail
        return Path(lam.range, mu.source, word, tail, lam.degree + mu.degree)

    def factor(self, lam: Path, m: MultiIndex) -> Tuple[Path, Path]:
        """The unique ``(head, rest)`` with ``lam = head rest`` and ``d(head) = m``."""
        return self.segment(lam, ZERO, m), self.segment(lam, m, lam.degree)

    def segment(self, lam: Path, m: MultiIndex, n: MultiIndex) -> Path:
        """The middle piece ``lam(m, n)`` of the factorization of ``lam``."""
        if not (leq(m, n) and leq(n, lam.degree)):
            raise OutOfRange(f"need {m} <= {n} <= {lam.degree}")
        me, ne, de = self.explicit(m), self.explicit(n), self.explicit(lam.degree)
        lead = sorted(c for c, v in me.items() for _ in range(v))
        mid = sorted(c for c, v in (ne - me).items() for _ in range(v))
        rest = sorted(c for c, v in (de - ne).items() for _ in range(v))
        word = self.reorder(lam.edges, lead + mid + rest)
        start = len(lead)
        piece = word[start:start + len(mid)]
        if start < len(word):
            rng = self.edge[word[start]].range
        else:
            rng = lam.source
        tail = self.tail_part(n) - self.tail_part(m)
        if piece:
            return self._make(rng, self.canonical_word(piece), tail)
        return Path(rng, rng, (), tail, tail)

    def paths_from(self, v: str, n: MultiIndex) -> List[Path]:
        """Every path with range ``v`` and degree ``n``, in a fixed order."""
        self._check_colors(n)
        if v not in self._vertex_set:
            raise UnknownPath(f"unknown vertex {v!r}")
        colors = []
        for c, k in self.explicit(n).items():
            colors.extend([c] * k)
        tail = self.tail_part(n)
        out: List[Path] = []

        def walk(at: str, depth: int, word: List[str]) -> None:
            if depth == len(colors):
                out.append(Path(v, at, tuple(word), tail, n))
                return
            for e in self.edges_into(at, colors[depth]):
                word.append(e)
                walk(self.edge[e].source, depth + 1, word)
                word.pop()

        walk(v, 0, [])
        return out

    def paths_upto(self, cap: MultiIndex, vertices: Optional[Iterable[str]] = None) -> List[Path]:
        """All paths of degree ``<= cap``, ordered by degree, range, then edges."""
        vs = self.vertices if vertices is None else tuple(vertices)
        out: List[Path] = []
        for m in below(cap):
            for v in vs:
                out.extend(self.paths_from(v, m))
        return out

    def degree_of_word(self, word: Sequence[str]) -> MultiIndex:
        return self._word_degree(word)

    # -- derived graphs -------------------------------------------------

    def truncate(self, k: int) -> "NGraph":
        """The k-graph of paths using only colors ``<= k`` (tail loops materialized)."""
        keep = min(k, self.K)
        edges = [e for e in self.edges if e.color <= keep]
        squares = {
            fg: gf for fg, gf in self.squares.items()
            if self.edge[fg[0]].color <= keep and self.edge[fg[1]].color <= keep
        }
        if k > self.K and self.tail:
            loops = {}
            for c in range(self.K + 1, k + 1):
                for v in self.vertices:
                    loops[(c, v)] = tail_loop_id(c, v)
                    edges.append(Edge(loops[(c, v)], c, v, v))
            for e in list(edges):
                if e.color > self.K:
                    continue
                for c in range(self.K + 1, k + 1):
                    squares[(e.id, loops[(c, e.source)])] = (loops[(c, e.range)], e.id)
            for c1, c2 in combinations(range(self.K + 1, k + 1), 2):
                for v in self.vertices:
                    squares[(loops[(c1, v)], loops[(c2, v)])] = (loops[(c2, v)], loops[(c1, v)])
            keep = k
        return NGraph(self.vertices, edges, keep, squares, tail=False)

    def restrict(self, vertices: Iterable[str], tail: Optional[bool] = None) -> "NGraph":
        """Full subgraph on ``vertices``: edges and squares with every endpoint kept."""
        keep = set(vertices)
        edges = [e for e in self.edges if e.source in keep and e.range in keep]
        ids = {e.id for e in edges}
        squares = {
            fg: gf for fg, gf in self.squares.items()
            if fg[0] in ids and fg[1] in ids and gf[0] in ids and gf[1] in ids
        }
        return NGraph(keep, edges, self.K, squares, self.tail if tail is None else tail)

    # -- validation -----------------------------------------------------

    def validate(self) -> ValidationReport:
        integrity = Check("integrity")
        for e in self._duplicate_edges:
            integrity.problems.append(f"duplicate edge id {e}")
        for v in self.vertices:
            if v in self.edge:
                integrity.problems.append(f"identifier {v} names both a vertex and an edge")
        for e in self.edges:
            if e.source not in self._vertex_set or e.range not in self._vertex_set:
                integrity.problems.append(f"edge {e.id} has an undeclared endpoint")
            if not 1 <= e.color <= self.K:
                integrity.problems.append(f"edge {e.id} has color {e.color} outside 1..{self.K}")
        for (f, g), (g2, f2) in sorted(self.squares.items()):
            for x in (f, g, g2, f2):
                if x not in self.edge:
                    integrity.problems.append(f"square ({f},{g}) -> ({g2},{f2}) names unknown edge {x}")

        sources = Check("no-sources")
        for v in self.vertices:
            for c in range(1, self.K + 1):
                if not self.edges_into(v, c):
                    sources.problems.append(f"vertex {v} receives no edge of color {c}")

        bij = Check("square-bijectivity")
        ends = Check("square-endpoints")
        hexagon = Check("hexagon")
        checks = [integrity, sources, bij, ends, hexagon]
        if not integrity.passed:
            return ValidationReport(checks)

        for i, j in combinations(range(1, self.K + 1), 2):
            domain = self._composable(i, j)
            codomain = set(self._composable(j, i))
            images = {}
            for f, g in domain:
                if (f, g) not in self.squares:
                    bij.problems.append(f"missing square for ({f},{g})")
                    continue
                g2, f2 = self.squares[(f, g)]
                if self.edge[g2].color != j or self.edge[f2].color != i:
                    ends.problems.append(f"square ({f},{g}) -> ({g2},{f2}) has the wrong colors")
                    continue
                if self.edge[g2].source != self.edge[f2].range:
                    ends.problems.append(f"square ({f},{g}) -> ({g2},{f2}) is not composable")
                    continue
                if self.edge[g2].range != self.edge[f].range or self.edge[f2].source != self.edge[g].source:
                    ends.problems.append(f"square ({f},{g}) -> ({g2},{f2}) changes the endpoints")
                if (g2, f2) in images:
                    a, b = images[(g2, f2)]
                    bij.problems.append(f"squares ({a},{b}) and ({f},{g}) share the image ({g2},{f2})")
                images[(g2, f2)] = (f, g)
            for g2, f2 in sorted(codomain - set(images)):
                bij.problems.append(f"pair ({g2},{f2}) is not the image of any square")
        for (f, g) in sorted(self.squares):
            cf, cg = self.edge[f].color, self.edge[g].color
            if not cf < cg or self.edge[f].source != self.edge[g].range:
                bij.problems.append(f"square key ({f},{g}) is not a composable pair of increasing colors")

        if bij.passed and ends.passed:
            for i, j, l in combinations(range(1, self.K + 1), 3):
                for word in self._composable_words((l, j, i)):
                    one = self._sort_by(word, [(0, 1), (1, 2), (0, 1)])
                    two = self._sort_by(word, [(1, 2), (0, 1), (1, 2)])
                    if one != two:
                        hexagon.problems.append(
                            f"{'.'.join(word)} sorts to {'.'.join(one)} and to {'.'.join(two)}"
                        )
        return ValidationReport(checks)

    def _composable(self, first: int, second: int) -> List[Tuple[str, str]]:
        return [tuple(w) for w in self._composable_words((first, second))]

    def _composable_words(self, colors: Sequence[int]) -> List[Tuple[str, ...]]:
        out: List[Tuple[str, ...]] = []

        def grow(word: List[str]) -> None:
            if len(word) == len(colors):
                out.append(tuple(word))
                return
            c = colors[len(word)]
            if not word:
                options = [e.id for e in self.edges if e.color == c]
            else:
                options = self.edges_into(self.edge[word[-1]].source, c)
            for e in options:
                word.append(e)
                grow(word)
                word.pop()

        grow([])
        return out

    def _sort_by(self, word: Sequence[str], moves: Sequence[Tuple[int, int]]) -> Tuple[str, ...]:
        w = list(word)
        for a, b in moves:
            w[a], w[b] = self.swap(w[a], w[b])
        return tuple(w)


def tail_loop_id(color: int, vertex: str) -> str:
    return f"t{color}_{vertex}"
