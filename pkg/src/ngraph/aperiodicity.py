"""Bounded search for aperiodicity witnesses.

A pair ``m != n`` is witnessed at ``v`` by a path ``lam`` in ``v Lam`` with
``d(lam) >= m v n`` whose two shifted segments
``lam(m, m + d(lam) - (m v n))`` and ``lam(n, n + d(lam) - (m v n))`` differ.
The search is bounded, so a failed search is reported as unknown and never
as periodic.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, List, Optional, Tuple

from .graph import GraphError, NGraph, Path
from .multidegree import MultiIndex, below, between, leq

WITNESSED = "AperiodicWitnessed"
UNKNOWN = "UnknownWithinBound"


class BadPair(GraphError):
    pass


@dataclass
class AperiodicityVerdict:
    status: str
    witnesses: Dict[Tuple[str, MultiIndex, MultiIndex], Path] = field(default_factory=dict)
    unresolved: List[Tuple[str, MultiIndex, MultiIndex]] = field(default_factory=list)

    @property
    def witnessed(self) -> bool:
        return self.status == WITNESSED


def shifted_segments(lam: Path, m: MultiIndex, n: MultiIndex, g: NGraph) -> Tuple[Path, Path]:
    k = lam.degree - (m | n)
    return g.segment(lam, m, m + k), g.segment(lam, n, n + k)


def check_pair(v: str, m: MultiIndex, n: MultiIndex, bound: MultiIndex, g: NGraph) -> Optional[Path]:
    """First witness for ``(m, n)`` at ``v`` with degree ``<= bound``, else ``None``."""
    if m == n:
        raise BadPair(f"the pair needs two different degrees, got {m} twice")
    top = m | n
    if not leq(top, bound):
        raise ValueError(f"{m} v {n} is not below the bound {bound}")
    for d in between(top, bound):
        for lam in g.paths_from(v, d):
            a, b = shifted_segments(lam, m, n, g)
            if a != b:
                return lam
    return None


def degree_pairs(pair_cap: MultiIndex) -> List[Tuple[MultiIndex, MultiIndex]]:
    return list(combinations(below(pair_cap), 2))


def is_aperiodic(g: NGraph, pair_cap: MultiIndex, bound: MultiIndex) -> AperiodicityVerdict:
    if not leq(pair_cap, bound):
        raise ValueError(f"pair cap {pair_cap} must lie below the bound {bound}")
    verdict = AperiodicityVerdict(WITNESSED)
    for v in g.vertices:
        for m, n in degree_pairs(pair_cap):
            lam = check_pair(v, m, n, bound, g)
            if lam is None:
                verdict.unresolved.append((v, m, n))
            else:
                verdict.witnesses[(v, m, n)] = lam
    if verdict.unresolved:
        verdict.status = UNKNOWN
    return verdict


def separating_path(v: str, l: MultiIndex, bound: MultiIndex, g: NGraph) -> Optional[Path]:
    """A ``lam`` in ``v Lam`` with ``l <= d(lam) <= bound`` such that distinct
    ``a, b`` in ``Lam v`` of degree ``<= l`` give distinct ``(a lam)(0, d(lam))``.
    """
    if not leq(l, bound):
        raise ValueError(f"{l} is not below the bound {bound}")
    arriving = [a for a in g.paths_upto(l) if a.source == v]
    for d in between(l, bound):
        for lam in g.paths_from(v, d):
            heads = set()
            for a in arriving:
                heads.add(g.segment(g.compose(a, lam), MultiIndex(), lam.degree))
            if len(heads) == len(arriving):
                return lam
    return None
