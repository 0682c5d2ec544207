"""The Kumjian-Pask algebra of an N-graph over an exact commutative ring.

Every element is stored as a finite sum ``sum r * s_alpha s_beta^*`` keyed by
``(alpha, beta)`` with ``s(alpha) == s(beta)``.  Vertex projections are the
pairs ``(v, v)``; ``s_lam`` is ``(lam, s(lam))`` and ``s_lam^*`` is
``(s(lam), lam)``.

Products expand ``s_beta^* s_gamma`` as the sum of ``s_a s_b^*`` over
``beta a = gamma b`` with ``d(beta a) = d(beta) v d(gamma)``.  Equality is
decided by inflating every graded component to one common bidegree with the
vertex relation ``p_v = sum_{lam in v Lam^n} s_lam s_lam^*`` and comparing
coefficients.
"""

from __future__ import annotations

import re
from typing import Dict, Iterable, List, Optional, Tuple

from .graph import GraphError, NGraph, Path, UnknownPath, path_text
from .multidegree import GradedDegree, MultiIndex, join_all, parse as parse_degree
from .rings import QQ, Ring

Key = Tuple[Path, Path]


class GraphMismatch(ValueError):
    pass


class SourcesPresent(GraphError):
    pass


class ElementSyntaxError(ValueError):
    pass


class KPAlgebra:
    """``KP_R(Lambda)`` for a fixed graph and ring; hands out elements."""

    def __init__(self, graph: NGraph, ring: Ring = QQ):
        self.graph = graph
        self.ring = ring
        self._ghost: Dict[Key, List[Key]] = {}

    def __eq__(self, other) -> bool:
        if not isinstance(other, KPAlgebra):
            return NotImplemented
        return self is other or (self.ring == other.ring and self.graph == other.graph)

    def __hash__(self) -> int:
        return hash((self.graph, self.ring))

    def __repr__(self) -> str:
        return f"KPAlgebra({self.graph!r}, {self.ring!r})"

    def element(self, terms: Dict[Key, object]) -> "KPElement":
        return KPElement(self, terms)

    def zero(self) -> "KPElement":
        return KPElement(self, {})

    def p(self, v: str) -> "KPElement":
        vert = self.graph.vertex(v)
        return KPElement(self, {(vert, vert): self.ring.one()})

    def s(self, lam: Path) -> "KPElement":
        return KPElement(self, {(lam, self.graph.vertex(lam.source)): self.ring.one()})

    def sstar(self, lam: Path) -> "KPElement":
        return KPElement(self, {(self.graph.vertex(lam.source), lam): self.ring.one()})

    def monomial(self, alpha: Path, beta: Path, coeff=None) -> "KPElement":
        return KPElement(self, {(alpha, beta): self.ring.one() if coeff is None else coeff})

    def generator(self, kind: str, target) -> "KPElement":
        """``kind`` is ``p`` (vertex id), ``s`` or ``S*`` (a Path)."""
        if kind == "p":
            return self.p(target)
        if kind == "s":
            return self.s(target)
        if kind == "S*":
            return self.sstar(target)
        raise ValueError(f"unknown generator kind {kind!r}")

    def ghost_pairs(self, lam: Path, mu: Path) -> List[Key]:
        """All ``(a, b)`` with ``lam a == mu b`` and ``d(lam a) = d(lam) v d(mu)``."""
        key = (lam, mu)
        hit = self._ghost.get(key)
        if hit is not None:
            return hit
        g = self.graph
        pairs: List[Key] = []
        if lam.range == mu.range:
            q = lam.degree | mu.degree
            for a in g.paths_from(lam.source, q - lam.degree):
                whole = g.compose(lam, a)
                head, b = g.factor(whole, mu.degree)
                if head == mu:
                    pairs.append((a, b))
        self._ghost[key] = pairs
        return pairs

    def parse(self, text: str) -> "KPElement":
        return parse_element(self, text)


class KPElement:
    """Immutable finite sum of monomials ``s_alpha s_beta^*``."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: KPAlgebra, terms: Dict[Key, object]):
        ring = algebra.ring
        clean: Dict[Key, object] = {}
        for (alpha, beta), r in terms.items():
            if alpha.source != beta.source:
                raise ValueError(f"s({path_text(alpha)}) != s({path_text(beta)})")
            r = ring.coerce(r)
            if not ring.is_zero(r):
                clean[(alpha, beta)] = r
        self.algebra = algebra
        self.terms = clean

    @property
    def graph(self) -> NGraph:
        return self.algebra.graph

    @property
    def ring(self) -> Ring:
        return self.algebra.ring

    def is_zero(self) -> bool:
        """True when no term is stored; use :func:`equals` for equality in the algebra."""
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def _same(self, other: "KPElement") -> None:
        if not isinstance(other, KPElement):
            raise TypeError(f"expected a KPElement, got {type(other).__name__}")
        if other.algebra != self.algebra:
            raise GraphMismatch("elements live in different algebras")

    def __add__(self, other: "KPElement") -> "KPElement":
        return add(self, other)

    def __sub__(self, other: "KPElement") -> "KPElement":
        return add(self, smul(self.ring.neg(self.ring.one()), other))

    def __neg__(self) -> "KPElement":
        return smul(self.ring.neg(self.ring.one()), self)

    def __mul__(self, other):
        if isinstance(other, KPElement):
            return mul(self, other)
        return smul(other, self)

    def __rmul__(self, other):
        return smul(other, self)

    def __eq__(self, other) -> bool:
        # structural; algebraic equality is equals()
        if not isinstance(other, KPElement):
            return NotImplemented
        return self.algebra == other.algebra and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def star(self) -> "KPElement":
        return star(self)

    def sorted_terms(self) -> List[Tuple[Key, object]]:
        return sorted(self.terms.items(), key=lambda kv: _term_order(kv[0]))

    def __str__(self) -> str:
        return render_element(self)

    def __repr__(self) -> str:
        return f"KPElement({render_element(self)!r})"


def component(key: Key) -> GradedDegree:
    alpha, beta = key
    return GradedDegree.difference(alpha.degree, beta.degree)


def _term_order(key: Key):
    return (component(key).sort_key(), key[0].sort_key(), key[1].sort_key())


def add(x: KPElement, y: KPElement) -> KPElement:
    x._same(y)
    ring = x.ring
    out = dict(x.terms)
    for k, r in y.terms.items():
        out[k] = ring.add(out[k], r) if k in out else r
    return KPElement(x.algebra, out)


def smul(r, x: KPElement) -> KPElement:
    ring = x.ring
    r = ring.coerce(r)
    return KPElement(x.algebra, {k: ring.mul(r, c) for k, c in x.terms.items()})


def star(x: KPElement) -> KPElement:
    return KPElement(x.algebra, {(b, a): r for (a, b), r in x.terms.items()})


def ghost_product(lam: Path, mu: Path, algebra: KPAlgebra) -> KPElement:
    """``s_lam^* s_mu`` expanded into monomials."""
    one = algebra.ring.one()
    return KPElement(algebra, {pair: one for pair in algebra.ghost_pairs(lam, mu)})


def mul(x: KPElement, y: KPElement) -> KPElement:
    x._same(y)
    alg, ring, g = x.algebra, x.ring, x.graph
    out: Dict[Key, object] = {}
    for (alpha, beta), r in x.terms.items():
        for (gamma, delta), t in y.terms.items():
            pairs = alg.ghost_pairs(beta, gamma)
            if not pairs:
                continue
            rt = ring.mul(r, t)
            for a, b in pairs:
                key = (g.compose(alpha, a), g.compose(delta, b))
                out[key] = ring.add(out[key], rt) if key in out else rt
    return KPElement(alg, out)


def degree_support(x: KPElement) -> List[GradedDegree]:
    return sorted({component(k) for k in x.terms}, key=GradedDegree.sort_key)


def graded_component(x: KPElement, c: GradedDegree) -> KPElement:
    return KPElement(x.algebra, {k: r for k, r in x.terms.items() if component(k) == c})


def normal_form(x: KPElement) -> KPElement:
    """Inflate each graded component to a single bidegree and collect.

    In component ``c`` every term ``s_a s_b^*`` becomes
    ``sum_{g in s(a) Lam^(q - d(b))} s_{ag} s_{bg}^*`` where ``q`` joins the
    ghost degrees of the component.  The result is empty iff ``x == 0``.
    """
    g = x.graph
    if g.has_sources():
        raise SourcesPresent("normal forms need a graph without sources")
    ring = x.ring
    ceilings: Dict[GradedDegree, MultiIndex] = {}
    for k in x.terms:
        c = component(k)
        ceilings[c] = ceilings[c] | k[1].degree if c in ceilings else k[1].degree
    out: Dict[Key, object] = {}
    for (alpha, beta), r in x.terms.items():
        need = ceilings[component((alpha, beta))] - beta.degree
        for gamma in g.paths_from(alpha.source, need):
            key = (g.compose(alpha, gamma), g.compose(beta, gamma))
            out[key] = ring.add(out[key], r) if key in out else r
    return KPElement(x.algebra, out)


def ghost_ceiling(x: KPElement) -> MultiIndex:
    """Join of every ghost degree ``d(beta)`` occurring in ``x``."""
    return join_all(k[1].degree for k in x.terms)


def equals(x: KPElement, y: KPElement) -> bool:
    return normal_form(x - y).is_zero()


def include(x: KPElement, target: KPAlgebra) -> KPElement:
    """Carry ``x`` into an algebra whose graph contains the same edges (e.g. a truncation's parent)."""
    g = target.graph

    def carry(p: Path) -> Path:
        return g.path(p.edges, p.tail, vertex=p.range)

    return KPElement(target, {(carry(a), carry(b)): r for (a, b), r in x.terms.items()})


# -- text syntax ---------------------------------------------------------

_TOKEN = re.compile(r"S\*|[+\-*]|[^\s+*\-]+")
_COEFF = re.compile(r"^\d+(/\d+)?$")


def parse_path(g: NGraph, token: str) -> Path:
    """Read ``a.b``, ``ab`` (single-letter edges), a vertex id, each with optional ``^c:n,...``."""
    explicit, _, tail_text = token.partition("^")
    tail = parse_degree(tail_text) if tail_text else MultiIndex()
    if g.has_vertex(explicit):
        return g.path((), tail, vertex=explicit)
    edges: List[str] = []
    for piece in explicit.split("."):
        if piece in g.edge:
            edges.append(piece)
        elif piece and all(ch in g.edge for ch in piece):
            edges.extend(piece)
        else:
            raise UnknownPath(f"cannot read {piece!r} as a path in {token!r}")
    return g.path(edges, tail)


def parse_element(algebra: KPAlgebra, text: str) -> KPElement:
    """Parse e.g. ``p v - 2 * s a.b S* b + 1/2 S* a``.

    A term is an optional coefficient followed by factors ``p VERTEX``,
    ``s PATH`` or ``S* PATH`` multiplied left to right.
    """
    tokens = _TOKEN.findall(text)
    if not tokens:
        raise ElementSyntaxError("empty element")
    ring = algebra.ring
    total = algebra.zero()
    i = 0
    sign = 1
    expecting_term = True
    while i < len(tokens):
        tok = tokens[i]
        if tok in "+-" and expecting_term:
            if tok == "-":
                sign = -sign
            i += 1
            continue
        if not expecting_term:
            if tok not in "+-":
                raise ElementSyntaxError(f"expected + or - before {tok!r}")
            expecting_term = True
            continue
        coeff = ring.one()
        factors: Optional[KPElement] = None
        saw_coeff = False
        if _COEFF.match(tok):
            coeff = ring.parse(tok)
            saw_coeff = True
            i += 1
            if i < len(tokens) and tokens[i] == "*":
                i += 1
        while i < len(tokens) and tokens[i] in ("p", "s", "S*"):
            kind = tokens[i]
            if i + 1 >= len(tokens) or tokens[i + 1] in ("+", "-", "*", "S*"):
                raise ElementSyntaxError(f"{kind} needs a path")
            path = parse_path(algebra.graph, tokens[i + 1])
            if kind == "p":
                if not path.is_vertex or path.tail:
                    raise ElementSyntaxError(f"p takes a vertex, got {tokens[i + 1]!r}")
                factor = algebra.p(path.range)
            else:
                factor = algebra.generator(kind, path)
            factors = factor if factors is None else mul(factors, factor)
            i += 2
        if factors is None:
            if saw_coeff and ring.is_zero(coeff):
                factors = algebra.zero()
            else:
                bad = tokens[i] if i < len(tokens) else "end of input"
                raise ElementSyntaxError(f"expected p, s or S* at {bad!r}")
        if sign < 0:
            coeff = ring.neg(coeff)
        total = add(total, smul(coeff, factors))
        sign = 1
        expecting_term = False
    if expecting_term:
        raise ElementSyntaxError("element ends with an operator")
    return total


def render_term(key: Key) -> str:
    alpha, beta = key
    if alpha.is_vertex and beta.is_vertex:
        return f"p {alpha.range}"
    if beta.is_vertex:
        return f"s {path_text(alpha)}"
    if alpha.is_vertex:
        return f"S* {path_text(beta)}"
    return f"s {path_text(alpha)} S* {path_text(beta)}"


def render_element(x: KPElement) -> str:
    if not x.terms:
        return "0"
    ring = x.ring
    parts: List[str] = []
    for key, r in x.sorted_terms():
        text = ring.render(r)
        negative = text.startswith("-")
        if negative:
            text = text[1:]
        body = render_term(key) if text == "1" else f"{text} * {render_term(key)}"
        if not parts:
            parts.append(("-" if negative else "") + body)
        else:
            parts.append(("- " if negative else "+ ") + body)
    return " ".join(parts)


def all_monomials(algebra: KPAlgebra, p: MultiIndex, q: MultiIndex) -> Iterable[KPElement]:
    """Every ``s_a s_b^*`` with ``d(a) = p``, ``d(b) = q``, ``s(a) = s(b)``."""
    g = algebra.graph
    by_source: Dict[str, List[Path]] = {}
    for v in g.vertices:
        for b in g.paths_from(v, q):
            by_source.setdefault(b.source, []).append(b)
    for v in g.vertices:
        for a in g.paths_from(v, p):
            for b in by_source.get(a.source, []):
                yield algebra.monomial(a, b)
