"""Finitely supported multi-indices over the colors 1, 2, 3, ...

``MultiIndex`` holds natural-number counts (path degrees), ``GradedDegree``
holds integer counts (the grading of the algebra by d(alpha) - d(beta)).
Both store only nonzero entries, so ``==`` is mathematical equality.
"""

from __future__ import annotations

import re
from typing import Iterable, Mapping, Optional, Tuple, Union

_ENTRY = re.compile(r"^\s*(\d+)\s*:\s*(-?\d+)\s*$")


class _Sparse:
    __slots__ = ("_items", "_hash")
    _signed = False

    def __init__(self, entries: Union[Mapping[int, int], Iterable[Tuple[int, int]], None] = None):
        if entries is None:
            pairs: Iterable[Tuple[int, int]] = ()
        elif isinstance(entries, Mapping):
            pairs = entries.items()
        else:
            pairs = entries
        acc: dict = {}
        for color, count in pairs:
            color = int(color)
            count = int(count)
            if color < 1:
                raise ValueError(f"color index must be positive, got {color}")
            if count < 0 and not self._signed:
                raise ValueError(f"negative count {count} at color {color}")
            acc[color] = acc.get(color, 0) + count
        self._items = tuple(sorted((c, v) for c, v in acc.items() if v != 0))
        self._hash = hash((type(self).__name__, self._items))

    # mapping-ish access
    def __getitem__(self, color: int) -> int:
        for c, v in self._items:
            if c == color:
                return v
        return 0

    def get(self, color: int, default: int = 0) -> int:
        value = self[color]
        return value if value else default

    def items(self) -> Tuple[Tuple[int, int], ...]:
        return self._items

    def support(self) -> Tuple[int, ...]:
        return tuple(c for c, _ in self._items)

    def max_color(self) -> int:
        return self._items[-1][0] if self._items else 0

    def as_dict(self) -> dict:
        return dict(self._items)

    def is_zero(self) -> bool:
        return not self._items

    def __bool__(self) -> bool:
        return bool(self._items)

    def __iter__(self):
        return iter(self._items)

    def __len__(self) -> int:
        return len(self._items)

    def __eq__(self, other) -> bool:
        if type(other) is not type(self):
            return NotImplemented
        return self._items == other._items

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"{type(self).__name__}({dict(self._items)!r})"

    def __str__(self) -> str:
        return render(self)


class MultiIndex(_Sparse):
    """Element of the monoid of finitely supported N-valued sequences."""

    __slots__ = ()

    @classmethod
    def unit(cls, color: int, count: int = 1) -> "MultiIndex":
        return cls({color: count})

    def total(self) -> int:
        return sum(v for _, v in self._items)

    def sort_key(self):
        # shortest first, then lexicographic on the (color, count) list
        return (self.total(), self._items)

    def __add__(self, other: "MultiIndex") -> "MultiIndex":
        return add(self, other)

    def __sub__(self, other: "MultiIndex") -> "MultiIndex":
        result = sub(self, other)
        if result is None:
            raise ValueError(f"{other} is not <= {self}")
        return result

    def __le__(self, other: "MultiIndex") -> bool:
        return leq(self, other)

    def __ge__(self, other: "MultiIndex") -> bool:
        return leq(other, self)

    def __lt__(self, other: "MultiIndex") -> bool:
        return leq(self, other) and self != other

    def __gt__(self, other: "MultiIndex") -> bool:
        return leq(other, self) and self != other

    def __or__(self, other: "MultiIndex") -> "MultiIndex":
        return join(self, other)

    def __and__(self, other: "MultiIndex") -> "MultiIndex":
        return meet(self, other)


class GradedDegree(_Sparse):
    """Integer-valued finitely supported degree, e.g. d(alpha) - d(beta)."""

    __slots__ = ()
    _signed = True

    @classmethod
    def difference(cls, m: MultiIndex, n: MultiIndex) -> "GradedDegree":
        acc = m.as_dict()
        for c, v in n.items():
            acc[c] = acc.get(c, 0) - v
        return cls(acc)

    def __add__(self, other: "GradedDegree") -> "GradedDegree":
        acc = self.as_dict()
        for c, v in other.items():
            acc[c] = acc.get(c, 0) + v
        return GradedDegree(acc)

    def __neg__(self) -> "GradedDegree":
        return GradedDegree({c: -v for c, v in self._items})

    def positive_part(self) -> MultiIndex:
        return MultiIndex({c: v for c, v in self._items if v > 0})

    def negative_part(self) -> MultiIndex:
        return MultiIndex({c: -v for c, v in self._items if v < 0})

    def sort_key(self):
        return (sum(abs(v) for _, v in self._items), self._items)


ZERO = MultiIndex()


def add(m: MultiIndex, n: MultiIndex) -> MultiIndex:
    acc = m.as_dict()
    for c, v in n.items():
        acc[c] = acc.get(c, 0) + v
    return MultiIndex(acc)


def sub(m: MultiIndex, n: MultiIndex) -> Optional[MultiIndex]:
    """Entrywise ``m - n``, or ``None`` when ``n <= m`` fails."""
    acc = m.as_dict()
    for c, v in n.items():
        left = acc.get(c, 0) - v
        if left < 0:
            return None
        acc[c] = left
    return MultiIndex(acc)


def leq(m: MultiIndex, n: MultiIndex) -> bool:
    return all(v <= n[c] for c, v in m.items())


def join(m: MultiIndex, n: MultiIndex) -> MultiIndex:
    acc = m.as_dict()
    for c, v in n.items():
        acc[c] = max(acc.get(c, 0), v)
    return MultiIndex(acc)


def meet(m: MultiIndex, n: MultiIndex) -> MultiIndex:
    return MultiIndex({c: min(v, n[c]) for c, v in m.items()})


def project(m: MultiIndex, k: int) -> MultiIndex:
    """Drop every entry at a color greater than ``k``."""
    return MultiIndex({c: v for c, v in m.items() if c <= k})


def join_all(indices: Iterable[MultiIndex]) -> MultiIndex:
    out = ZERO
    for m in indices:
        out = join(out, m)
    return out


def below(cap: MultiIndex):
    """All multi-indices ``m <= cap``, shortest first."""
    colors = cap.support()
    found = [MultiIndex(zip(colors, counts)) for counts in _boxes([cap[c] for c in colors])]
    found.sort(key=MultiIndex.sort_key)
    return found


def _boxes(limits):
    if not limits:
        yield ()
        return
    for head in range(limits[0] + 1):
        for rest in _boxes(limits[1:]):
            yield (head,) + rest


def between(low: MultiIndex, high: MultiIndex):
    """All ``m`` with ``low <= m <= high``, shortest first."""
    span = sub(high, low)
    if span is None:
        return []
    return [add(low, m) for m in below(span)]


def render(m: _Sparse) -> str:
    return "{" + ", ".join(f"{c}:{v}" for c, v in m.items()) + "}"


def parse(text: str, signed: bool = False) -> _Sparse:
    """Parse ``{c1:v1, c2:v2}``; braces are optional, zero entries dropped."""
    body = text.strip()
    if body.startswith("{") and body.endswith("}"):
        body = body[1:-1]
    entries = []
    if body.strip():
        for chunk in body.split(","):
            match = _ENTRY.match(chunk)
            if not match:
                raise ValueError(f"bad multi-index entry {chunk.strip()!r} in {text!r}")
            entries.append((int(match.group(1)), int(match.group(2))))
    colors = [c for c, _ in entries]
    if len(set(colors)) != len(colors):
        raise ValueError(f"repeated color in {text!r}")
    return GradedDegree(entries) if signed else MultiIndex(entries)
