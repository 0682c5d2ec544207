"""Finite-window path representation, used as an independent oracle.

The window basis is every finite path ``mu`` with ``d(mu) <= cap``.  A
monomial ``s_a s_b^*`` sends ``e_mu`` to ``e_{a mu'}`` when ``mu = b mu'``
and kills it otherwise.  Results whose degree exceeds the cap are not
represented: the entry is dropped and the ``(column, term)`` pair is recorded
as overflow, so no relation is ever claimed on data the window cannot see.

On finite paths the vertex relation ``p_v = sum_{lam in v Lam^n} s_lam
s_lam^*`` only holds on columns of degree ``>= n``; checks against it are
restricted accordingly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple

from .builders import build_omega, omega_vertex
from .graph import NGraph, Path, path_text
from .kp import KPAlgebra, KPElement, ghost_ceiling, mul, star
from .multidegree import MultiIndex, below, join_all, leq
from .rings import QQ, IntegersMod, NonDomainRing, Ring


class Window:
    """The basis ``{mu : d(mu) <= cap}`` of one graph, with factorization caches."""

    def __init__(self, graph: NGraph, cap: MultiIndex):
        graph._check_colors(cap)
        self.graph = graph
        self.cap = cap
        self.basis: List[Path] = graph.paths_upto(cap)
        self.index: Dict[Path, int] = {p: i for i, p in enumerate(self.basis)}
        self._by_range: Dict[str, List[int]] = {}
        for i, p in enumerate(self.basis):
            self._by_range.setdefault(p.range, []).append(i)
        self._split: Dict[Tuple[int, MultiIndex], Tuple[Path, Path]] = {}

    def __len__(self) -> int:
        return len(self.basis)

    def split(self, i: int, m: MultiIndex) -> Tuple[Path, Path]:
        key = (i, m)
        hit = self._split.get(key)
        if hit is None:
            hit = self.graph.factor(self.basis[i], m)
            self._split[key] = hit
        return hit

    def columns_from(self, v: str) -> List[int]:
        return self._by_range.get(v, [])


def window_basis(g: NGraph, cap: MultiIndex) -> List[Path]:
    return Window(g, cap).basis


@dataclass
class ActionMatrix:
    window: Window
    ring: Ring
    cols: Dict[int, Dict[int, object]] = field(default_factory=dict)
    overflow: Set[Tuple[int, tuple]] = field(default_factory=set)
    touched: Dict[int, Set[int]] = field(default_factory=dict)

    def entry(self, row: int, col: int):
        return self.cols.get(col, {}).get(row, self.ring.zero())

    def entries(self) -> Dict[Tuple[int, int], object]:
        return {(r, c): v for c, col in self.cols.items() for r, v in col.items()}

    def overflow_columns(self) -> Set[int]:
        return {c for c, _ in self.overflow}

    def is_zero(self, columns: Optional[Iterable[int]] = None) -> bool:
        if columns is None:
            return not self.cols
        return all(not self.cols.get(c) for c in columns)

    def column(self, c: int) -> Dict[int, object]:
        return self.cols.get(c, {})

    def transpose_entries(self) -> Dict[Tuple[int, int], object]:
        return {(c, r): v for (r, c), v in self.entries().items()}

    def triplets(self) -> str:
        """Sparse export: basis header, then ``row column value`` lines."""
        lines = ["basis " + " ".join(path_text(p) for p in self.window.basis)]
        for (r, c), v in sorted(self.entries().items(), key=lambda kv: (kv[0][1], kv[0][0])):
            lines.append(f"{r} {c} {self.ring.render(v)}")
        if self.overflow:
            lines.append("overflow " + " ".join(str(c) for c in sorted(self.overflow_columns())))
        return "\n".join(lines)


def _put(col: Dict[int, object], row: int, value, ring: Ring) -> None:
    if row in col:
        total = ring.add(col[row], value)
        if ring.is_zero(total):
            del col[row]
        else:
            col[row] = total
    elif not ring.is_zero(value):
        col[row] = value


def matrix_of(x: KPElement, w: Window) -> ActionMatrix:
    if x.graph != w.graph:
        from .kp import GraphMismatch

        raise GraphMismatch("element and window belong to different graphs")
    g, ring = w.graph, x.ring
    out = ActionMatrix(w, ring)
    for (alpha, beta), r in x.terms.items():
        for i in w.columns_from(beta.range):
            mu = w.basis[i]
            if not leq(beta.degree, mu.degree):
                continue
            head, rest = w.split(i, beta.degree)
            if head != beta:
                continue
            target = g.compose(alpha, rest)
            j = w.index.get(target)
            if j is None:
                out.overflow.add((i, (alpha, beta)))
                continue
            out.touched.setdefault(i, set()).add(j)
            _put(out.cols.setdefault(i, {}), j, r, ring)
    out.cols = {c: col for c, col in out.cols.items() if col}
    return out


def matmul(a: ActionMatrix, b: ActionMatrix) -> ActionMatrix:
    ring = a.ring
    out = ActionMatrix(a.window, ring)
    for c, col in b.cols.items():
        acc: Dict[int, object] = {}
        for k, bv in col.items():
            for r, av in a.column(k).items():
                _put(acc, r, ring.mul(av, bv), ring)
        if acc:
            out.cols[c] = acc
    return out


def safe_product_columns(a: ActionMatrix, b: ActionMatrix) -> Set[int]:
    """Columns where ``b`` stays in the window and ``a`` does too on everything ``b`` touches."""
    bad_a, bad_b = a.overflow_columns(), b.overflow_columns()
    safe = set()
    for c in range(len(a.window)):
        if c in bad_b:
            continue
        if any(k in bad_a for k in b.touched.get(c, ())):
            continue
        safe.add(c)
    return safe


def agree_on(a: ActionMatrix, b: ActionMatrix, columns: Iterable[int]) -> bool:
    return all(a.column(c) == b.column(c) for c in columns)


def deep_columns(w: Window, depth: MultiIndex) -> List[int]:
    return [i for i, p in enumerate(w.basis) if leq(depth, p.degree)]


def vanishes(x: KPElement, w: Window) -> Tuple[bool, int]:
    """Does ``x`` act as zero on the columns where its action is trustworthy?

    Trustworthy columns have degree at least the join of the ghost degrees of
    ``x`` (so inflating by the vertex relation changes nothing there) and no
    overflow.  Returns ``(zero, number_of_columns_checked)``.
    """
    m = matrix_of(x, w)
    bad = m.overflow_columns()
    cols = [c for c in deep_columns(w, ghost_ceiling(x)) if c not in bad]
    return m.is_zero(cols), len(cols)


# -- exact rank --------------------------------------------------------------

def _field_ops(ring: Ring):
    if isinstance(ring, IntegersMod):
        if not ring.is_domain:
            raise NonDomainRing(f"rank over {ring.name} is not defined; use rat")
        return ring.coerce, ring
    if not ring.is_domain:
        raise NonDomainRing(f"rank over {ring.name} is not defined; use rat")
    return Fraction, QQ


def rank(vectors: Sequence[Dict[object, object]], ring: Ring = QQ) -> int:
    """Rank of sparse vectors by Gaussian elimination over the fraction field."""
    lift, field_ = _field_ops(ring)
    pivots: Dict[object, Dict[object, object]] = {}
    count = 0
    for vec in vectors:
        v = {k: lift(x) for k, x in vec.items() if not field_.is_zero(lift(x))}
        while v:
            lead = min(v, key=repr)
            if lead not in pivots:
                inv = field_.inverse(v[lead])
                pivots[lead] = {k: field_.mul(x, inv) for k, x in v.items()}
                count += 1
                break
            p = pivots[lead]
            factor = v[lead]
            for k, x in p.items():
                nv = field_.sub(v.get(k, field_.zero()), field_.mul(factor, x))
                if field_.is_zero(nv):
                    v.pop(k, None)
                else:
                    v[k] = nv
    return count


def independent(xs: Sequence[KPElement], w: Window) -> bool:
    """Are the actions of ``xs`` linearly independent?

    Only columns of degree at least the joint ghost ceiling and free of
    overflow are compared, as in :func:`vanishes`.
    """
    if not xs:
        return True
    ring = xs[0].ring
    _field_ops(ring)
    mats = [matrix_of(x, w) for x in xs]
    depth = join_all(ghost_ceiling(x) for x in xs)
    bad = set().union(*(m.overflow_columns() for m in mats))
    keep = set(deep_columns(w, depth)) - bad
    vectors = [{k: v for k, v in m.entries().items() if k[1] in keep} for m in mats]
    return rank(vectors, ring) == len(xs)


# -- relation checks ---------------------------------------------------------

@dataclass
class RelationResult:
    name: str
    instances: int = 0
    dimension: int = 0
    failures: List[str] = field(default_factory=list)
    skipped: Optional[str] = None

    @property
    def passed(self) -> bool:
        return not self.failures

    def line(self) -> str:
        if self.skipped:
            return f"{self.name}: skipped ({self.skipped})"
        state = "ok" if self.passed else "FAIL"
        return f"{self.name}: {state} ({self.instances} instances, {self.dimension} columns checked)"


@dataclass
class RelationReport:
    results: List[RelationResult]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def result(self, name: str) -> RelationResult:
        for r in self.results:
            if r.name == name:
                return r
        raise KeyError(name)

    def lines(self) -> List[str]:
        out = []
        for r in self.results:
            out.append(r.line())
            out.extend(f"  {f}" for f in r.failures[:10])
        return out


def check_ck(g: NGraph, cap: MultiIndex, ring: Ring = QQ) -> RelationReport:
    """Check the Cuntz-Krieger relations as exact matrix identities on the window."""
    w = Window(g, cap)
    alg = KPAlgebra(g, ring)
    n_cols = len(w)
    paths = w.basis
    s = {p: matrix_of(alg.s(p), w) for p in paths}
    sstar = {p: matrix_of(alg.sstar(p), w) for p in paths}
    proj = {v: matrix_of(alg.p(v), w) for v in g.vertices}

    nonzero = RelationResult("generators-nonzero")
    for p in paths:
        nonzero.instances += 1
        if s[p].is_zero():
            nonzero.failures.append(f"S_{path_text(p)} acts as zero")
    nonzero.dimension = n_cols

    ck1 = RelationResult("CK1")
    for v in g.vertices:
        for u in g.vertices:
            ck1.instances += 1
            lhs = matmul(proj[v], proj[u])
            rhs = proj[v] if u == v else ActionMatrix(w, ring)
            if lhs.cols != rhs.cols:
                ck1.failures.append(f"p_{v} p_{u}")
    ck1.dimension = n_cols

    ck2 = RelationResult("CK2")
    for lam in paths:
        for mu in paths:
            lhs = matmul(s[lam], s[mu])
            cols = safe_product_columns(s[lam], s[mu])
            if lam.source == mu.range:
                if not leq(lam.degree + mu.degree, cap):
                    continue
                whole = g.compose(lam, mu)
                rhs = s[whole]
                cols -= rhs.overflow_columns()
            else:
                rhs = ActionMatrix(w, ring)
            ck2.instances += 1
            ck2.dimension += len(cols)
            if not agree_on(lhs, rhs, cols):
                ck2.failures.append(f"s_{path_text(lam)} s_{path_text(mu)}")

    ck3 = RelationResult("CK3")
    for lam in paths:
        ck3.instances += 1
        cols = safe_product_columns(sstar[lam], s[lam])
        ck3.dimension += len(cols)
        if not agree_on(matmul(sstar[lam], s[lam]), proj[lam.source], cols):
            ck3.failures.append(f"s_{path_text(lam)}^* s_{path_text(lam)}")

    ck4 = RelationResult("CK4")
    if g.has_sources():
        ck4.skipped = "graph has sources"
    else:
        for v in g.vertices:
            for n in below(cap):
                if not n:
                    continue
                total: Dict[int, Dict[int, object]] = {}
                for lam in g.paths_from(v, n):
                    prod = matmul(s[lam], sstar[lam])
                    for c, col in prod.cols.items():
                        for r, val in col.items():
                            _put(total.setdefault(c, {}), r, val, ring)
                cols = deep_columns(w, n)
                ck4.instances += 1
                ck4.dimension += len(cols)
                if any(total.get(c, {}) != proj[v].column(c) for c in cols):
                    ck4.failures.append(f"p_{v} at degree {n}")
    return RelationReport([nonzero, ck1, ck2, ck3, ck4])


def generators_commute(g: NGraph, cap: MultiIndex, ring: Ring = QQ) -> RelationResult:
    """Pairwise commutation of all ``s_lam`` and ``s_lam^*`` on the non-overflow subspace.

    A pair involving ``s_mu^*`` is compared only on columns of degree
    ``>= d(mu)``, where the vertex relation is visible on finite paths.
    """
    w = Window(g, cap)
    alg = KPAlgebra(g, ring)
    mats = []
    for p in w.basis:
        if p.is_vertex:
            continue
        mats.append((f"s_{path_text(p)}", matrix_of(alg.s(p), w), MultiIndex()))
        mats.append((f"s_{path_text(p)}^*", matrix_of(alg.sstar(p), w), p.degree))
    result = RelationResult("commutation")
    for (na, a, da), (nb, b, db) in product(mats, repeat=2):
        cols = safe_product_columns(a, b) & safe_product_columns(b, a)
        cols &= set(deep_columns(w, da | db))
        result.instances += 1
        result.dimension += len(cols)
        if not agree_on(matmul(a, b), matmul(b, a), cols):
            result.failures.append(f"{na} {nb}")
    return result


def omega_matrix_units(cap: MultiIndex, ring: Ring = QQ) -> RelationReport:
    """Matrix-unit behaviour of ``s_(m,n)`` in the finite grid category.

    Full-length paths ``(p, cap)`` stand in for the points ``p``; on those
    columns ``s_(m,n)`` must be exactly the unit ``e_{m,n}``.
    """
    g = build_omega(cap)
    k = cap.max_color()
    alg = KPAlgebra(g, ring)
    w = Window(g, cap)
    points = below(cap)

    def morphism(m: MultiIndex, n: MultiIndex) -> Path:
        found = g.paths_from(omega_vertex(m, k), n - m)
        assert len(found) == 1, "grid paths are unique"
        return found[0]

    full = {p: w.index[morphism(p, cap)] for p in points}
    units = RelationResult("rank-one")
    compose = RelationResult("composition")
    idem = RelationResult("idempotent")
    zero = RelationResult("non-composable")
    units.dimension = compose.dimension = len(full)
    for m in points:
        for n in points:
            if not leq(m, n):
                continue
            mat = matrix_of(alg.s(morphism(m, n)), w)
            units.instances += 1
            got = {(r, c): v for (r, c), v in mat.entries().items() if c in full.values()}
            if got != {(full[m], full[n]): ring.one()}:
                units.failures.append(f"s_({m},{n})")
            if m == n:
                idem.instances += 1
                pm = alg.s(morphism(m, m))
                if pm != alg.p(omega_vertex(m, k)) or mul(pm, pm) != pm:
                    idem.failures.append(f"s_({m},{m})")
            for p in points:
                if not leq(n, p):
                    continue
                compose.instances += 1
                lhs = mul(alg.s(morphism(m, n)), alg.s(morphism(n, p)))
                rhs = alg.s(morphism(m, p))
                if lhs != rhs:
                    compose.failures.append(f"s_({m},{n}) s_({n},{p})")
                    continue
                a = matrix_of(alg.s(morphism(m, n)), w)
                b = matrix_of(alg.s(morphism(n, p)), w)
                cols = set(full.values()) & safe_product_columns(a, b)
                if not agree_on(matmul(a, b), matrix_of(rhs, w), cols):
                    compose.failures.append(f"matrix of s_({m},{n}) s_({n},{p})")
            for p in points:
                for q in points:
                    if leq(p, q) and p != n:
                        zero.instances += 1
                        if mul(alg.s(morphism(m, n)), alg.s(morphism(p, q))):
                            zero.failures.append(f"s_({m},{n}) s_({p},{q})")
    return RelationReport([units, compose, idem, zero])


def adjoint_is_transpose(x: KPElement, w: Window) -> bool:
    return matrix_of(star(x), w).entries() == matrix_of(x, w).transpose_entries()
