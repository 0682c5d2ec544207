import random

import pytest
from hypothesis import given, settings, strategies as st

from kp_helpers import brute_ghost_pairs, random_combination, relation_instances
from ngraph.builders import build_omega, example
from ngraph.graph import GraphError
from ngraph.kp import (
    ElementSyntaxError, GraphMismatch, KPAlgebra, SourcesPresent, degree_support, equals, ghost_ceiling,
    ghost_product, graded_component, include, mul, normal_form, parse_path, render_element, smul, star,
)
from ngraph.multidegree import GradedDegree, MultiIndex as M
from ngraph.rings import QQ, ZZ, IntegersMod

Z4 = IntegersMod(4)


@pytest.fixture
def e2():
    return KPAlgebra(example("E2"), ZZ)


def P(alg, text):
    return parse_path(alg.graph, text)


def test_generators(e2):
    g = e2.graph
    v, a, b = g.vertex("v"), P(e2, "a"), P(e2, "b")
    assert e2.p("v").terms == {(v, v): 1}
    assert e2.s(a).terms == {(a, v): 1}
    assert e2.sstar(b).terms == {(v, b): 1}
    assert e2.generator("S*", b) == e2.sstar(b)
    with pytest.raises(ValueError):
        e2.generator("q", b)


def test_add_and_smul(e2):
    x = e2.parse("s a + 2 * S* b")
    assert x + e2.zero() == x
    assert smul(0, x).is_zero()
    assert (x - x).is_zero()
    z = KPAlgebra(example("E2"), Z4)
    y = z.parse("s a S* b")
    assert smul(2, smul(2, y)).is_zero()
    assert not smul(2, y).is_zero()
    with pytest.raises(GraphMismatch):
        x + KPAlgebra(example("E1"), ZZ).p("v")
    with pytest.raises(GraphMismatch):
        x + KPAlgebra(example("E2"), QQ).p("v")


def test_star(e2):
    assert star(e2.p("v")) == e2.p("v")
    assert star(e2.parse("s a")) == e2.parse("S* a")
    assert star(e2.parse("s a S* b")) == e2.parse("s b S* a")


def test_ghost_product_examples(e2):
    a, b = P(e2, "a"), P(e2, "b")
    assert ghost_product(a, a, e2) == e2.p("v")
    assert ghost_product(a, b, e2).is_zero()
    e3 = KPAlgebra(example("E3"), ZZ)
    assert ghost_product(P(e3, "e"), P(e3, "f"), e3) == e3.parse("s f S* e")


@pytest.mark.parametrize("name", ["E2", "E3", "E4", "E5"])
def test_ghost_pairs_match_brute_force(name):
    alg = KPAlgebra(example(name), ZZ)
    g = alg.graph
    paths = g.paths_upto(M({1: 2, 2: 1}))
    for lam in paths:
        for mu in paths:
            assert set(alg.ghost_pairs(lam, mu)) == brute_ghost_pairs(g, lam, mu)


def test_mul_examples(e2):
    assert mul(e2.p("v"), e2.parse("s a")) == e2.parse("s a")
    assert mul(e2.parse("S* a"), e2.parse("s a")) == e2.p("v")
    assert mul(e2.parse("s a S* a"), e2.parse("s a S* b")) == e2.parse("s a S* b")
    assert mul(e2.parse("S* a"), e2.parse("s b")).is_zero()


def test_normal_form_examples(e2):
    assert normal_form(e2.parse("p v - s a S* a - s b S* b")).is_zero()
    assert normal_form(e2.parse("s a")) == e2.parse("s a")
    e1 = KPAlgebra(example("E1"), ZZ)
    assert normal_form(e1.parse("p v - s f S* f")).is_zero()
    assert normal_form(e1.parse("p v - s v^2:1 S* v^2:1")).is_zero()
    assert normal_form(e2.parse("s a S* a")) == e2.parse("s a S* a")
    assert normal_form(e2.parse("p v + s a S* a")) == e2.parse("2 * s a S* a + s b S* b")


def test_normal_form_needs_no_sources():
    alg = KPAlgebra(build_omega(M({1: 1})), ZZ)
    with pytest.raises(SourcesPresent):
        normal_form(alg.p("m0"))


def test_equals(e2):
    assert equals(e2.p("v"), e2.parse("s a S* a + s b S* b"))
    assert not equals(e2.parse("s a"), e2.parse("s b"))
    x = e2.parse("s a S* b - 3 * S* a.b")
    assert equals(x, x)


def test_grading(e2):
    x = e2.parse("s a S* b")
    assert graded_component(x, GradedDegree()) == x
    assert graded_component(e2.parse("s a"), GradedDegree({1: -1})).is_zero()
    assert degree_support(e2.parse("p v + s a")) == [GradedDegree(), GradedDegree({1: 1})]
    assert ghost_ceiling(e2.parse("S* a.b + s a S* b")) == M({1: 2})


def test_ring_z4_relations():
    alg = KPAlgebra(example("E1"), Z4)
    assert equals(alg.parse("4 * s f"), alg.zero())
    assert equals(alg.parse("2 * p v"), alg.parse("2 * s f S* f"))


@pytest.mark.parametrize("name", ["E1", "E2", "E3", "E4", "E5"])
@pytest.mark.parametrize("ring", [ZZ, QQ, Z4], ids=["int", "rat", "mod4"])
def test_relations_vanish(name, ring):
    alg = KPAlgebra(example(name), ring)
    for label, rel in relation_instances(alg, M({1: 1, 2: 1})):
        assert normal_form(rel).is_zero(), label


def test_non_relations_survive():
    alg = KPAlgebra(example("E2"), ZZ)
    for text in ["p v - s a S* a", "S* a s a - S* b s b + p v", "s a s b - s b s a", "s a S* a - s b S* b"]:
        assert not normal_form(alg.parse(text)).is_zero(), text


def test_inclusion_into_truncation_parent():
    g = example("E3")
    small = KPAlgebra(g.truncate(1), ZZ)
    big = KPAlgebra(g, ZZ)
    x = small.parse("s e S* e.e + 2 * p v")
    y = small.parse("S* e - s e.e")
    assert include(mul(x, y), big) == mul(include(x, big), include(y, big))
    assert equals(include(small.parse("p v - s e S* e"), big), big.zero())


def test_parse_errors(e2):
    for bad in ["", "s", "p a", "2 * ", "s a s", "s q", "s a + + ", "s a p v q", "S*"]:
        with pytest.raises((ElementSyntaxError, GraphError)):
            e2.parse(bad)
    with pytest.raises(ElementSyntaxError):
        e2.parse("s a S*")
    with pytest.raises(ElementSyntaxError):
        e2.parse("s a s b 3")


def test_parse_and_render(e2):
    x = e2.parse("2 * s a.b S* b - p v + S* a")
    assert render_element(x) == "-p v + S* a + 2 * s a.b S* b"
    assert e2.parse(render_element(x)) == x
    assert e2.parse("s ab") == e2.parse("s a.b") == e2.parse("s a s b")
    assert e2.parse("0") == e2.zero()
    q = KPAlgebra(example("E2"), QQ)
    assert render_element(q.parse("1/2 * s a - 1/3 * s b")) == "1/2 * s a - 1/3 * s b"


ALG = {n: KPAlgebra(example(n), ZZ) for n in ["E2", "E3", "E4"]}


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(sorted(ALG)), st.integers(0, 10 ** 6))
def test_algebra_laws(name, seed):
    alg = ALG[name]
    rnd = random.Random(seed)
    x, y, z = (random_combination(alg, rnd) for _ in range(3))
    assert star(star(x)) == x
    assert star(mul(x, y)) == mul(star(y), star(x))
    assert mul(mul(x, y), z) == mul(x, mul(y, z))
    assert mul(x, y + z) == mul(x, y) + mul(x, z)
    assert equals(normal_form(x), x)
    assert normal_form(normal_form(x)) == normal_form(x)
    sums = {a + b for a in degree_support(x) for b in degree_support(y)}
    assert set(degree_support(mul(x, y))) <= sums
    assert degree_support(star(x)) == sorted((-c for c in degree_support(x)), key=GradedDegree.sort_key)
    total = alg.zero()
    for c in degree_support(x):
        total = total + graded_component(x, c)
    assert total == x
