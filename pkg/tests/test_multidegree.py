import pytest
from hypothesis import given, strategies as st

from ngraph.multidegree import (
    GradedDegree, MultiIndex, ZERO, add, below, between, join, leq, meet, parse, project, render, sub,
)

M = MultiIndex


def indices(max_color=4, max_count=5):
    return st.dictionaries(st.integers(1, max_color), st.integers(0, max_count), max_size=max_color).map(M)


def test_examples():
    a, b = M({1: 2}), M({2: 1})
    assert add(a, b) == M({1: 2, 2: 1})
    assert join(M({1: 2, 2: 1}), M({1: 1, 2: 3})) == M({1: 2, 2: 3})
    assert meet(M({1: 2, 2: 1}), M({1: 1, 2: 3})) == M({1: 1, 2: 1})
    assert sub(M({1: 2}), M({1: 3})) is None
    assert sub(M({1: 3, 2: 1}), M({1: 1})) == M({1: 2, 2: 1})
    assert project(M({1: 1, 2: 2, 3: 3}), 2) == M({1: 1, 2: 2})
    assert not leq(a, b) and not leq(b, a)


def test_zero_entries_dropped():
    assert M({1: 0, 2: 0}) == ZERO
    assert M({1: 1, 3: 0}) == M({1: 1})
    assert hash(M({1: 1, 3: 0})) == hash(M({1: 1}))


def test_subtraction_undefined_raises():
    with pytest.raises(ValueError):
        M({1: 1}) - M({2: 1})
    with pytest.raises(ValueError):
        M({1: -1})


def test_render_parse():
    assert render(M({2: 1, 1: 3})) == "{1:3, 2:1}"
    assert parse("{1:3, 2:1}") == M({1: 3, 2: 1})
    assert parse("1:3,2:0") == M({1: 3})
    assert parse("{}") == ZERO
    assert parse("{1:-2}", signed=True) == GradedDegree({1: -2})
    for bad in ["{1:x}", "{1:1, 1:2}", "{a}"]:
        with pytest.raises(ValueError):
            parse(bad)


def test_below_and_between():
    cap = M({1: 2, 2: 1})
    got = below(cap)
    assert len(got) == 6 and got[0] == ZERO and got[-1] == cap
    assert all(leq(m, cap) for m in got)
    assert between(M({1: 1}), cap) == [M({1: 1}), M({1: 2}), M({1: 1, 2: 1}), M({1: 2, 2: 1})]
    assert between(M({1: 3}), cap) == []


def test_graded_degree():
    c = GradedDegree.difference(M({1: 2}), M({1: 1, 2: 3}))
    assert c == GradedDegree({1: 1, 2: -3})
    assert c.positive_part() == M({1: 1})
    assert c.negative_part() == M({2: 3})
    assert -c + c == GradedDegree()


@given(indices(), indices(), indices())
def test_lattice_laws(a, b, c):
    assert join(a, b) == join(b, a)
    assert meet(a, b) == meet(b, a)
    assert join(a, join(b, c)) == join(join(a, b), c)
    assert meet(a, join(a, b)) == a
    assert join(a, meet(a, b)) == a
    assert leq(a, join(a, b)) and leq(meet(a, b), a)
    assert add(a, b) == add(join(a, b), meet(a, b))


@given(indices(), indices())
def test_add_sub_inverse(a, b):
    assert sub(add(a, b), b) == a
    d = sub(a, b)
    assert (d is not None) == leq(b, a)
    if d is not None:
        assert add(d, b) == a


@given(indices(), indices())
def test_leq_is_pointwise(a, b):
    colors = set(a.support()) | set(b.support())
    assert leq(a, b) == all(a[c] <= b[c] for c in colors)


@given(indices())
def test_render_round_trip(a):
    assert parse(render(a)) == a


@given(indices(3, 3))
def test_below_counts(cap):
    expected = 1
    for _, v in cap.items():
        expected *= v + 1
    got = below(cap)
    assert len(got) == len(set(got)) == expected
    assert [m.total() for m in got] == sorted(m.total() for m in got)
