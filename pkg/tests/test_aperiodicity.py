import pytest

from ngraph.aperiodicity import (
    UNKNOWN, WITNESSED, BadPair, check_pair, degree_pairs, is_aperiodic, separating_path,
)
from ngraph.builders import build_product, example
from ngraph.ideals import enumerate_lattice, is_regular, quotient
from ngraph.multidegree import MultiIndex as M, below, leq

Z = M()


def brute_piece(g, lam, m, n):
    """``lam(m, n)`` found by searching all factorizations ``head mid rest``."""
    for head in g.paths_from(lam.range, m):
        for mid in g.paths_from(head.source, n - m):
            for rest in g.paths_from(mid.source, lam.degree - n):
                if g.compose(g.compose(head, mid), rest) == lam:
                    return mid
    raise AssertionError("no factorization found")


def brute_witness(g, v, m, n, lam):
    k = lam.degree - (m | n)
    return leq(m | n, lam.degree) and lam.range == v and \
        brute_piece(g, lam, m, m + k) != brute_piece(g, lam, n, n + k)


def test_check_pair_examples():
    e2 = example("E2")
    lam = check_pair("v", Z, M({1: 1}), M({1: 3}), e2)
    assert lam is not None and brute_witness(e2, "v", Z, M({1: 1}), lam)
    assert check_pair("v", Z, M({1: 1}), M({1: 5}), example("E1")) is None
    assert check_pair("v", M({1: 1}), M({2: 1}), M({1: 2, 2: 2}), example("E3")) is None
    with pytest.raises(BadPair):
        check_pair("v", M({1: 1}), M({1: 1}), M({1: 2}), e2)
    with pytest.raises(ValueError):
        check_pair("v", Z, M({1: 3}), M({1: 2}), e2)


def test_exhaustive_unknown_agrees_with_oracle():
    # no witness exists below the bound according to brute force either
    g = example("E3")
    for lam in g.paths_upto(M({1: 2, 2: 2})):
        if leq(M({1: 1, 2: 1}), lam.degree):
            assert not brute_witness(g, "v", M({1: 1}), M({2: 1}), lam)


def test_is_aperiodic_examples():
    v = is_aperiodic(example("E2"), M({1: 1}), M({1: 4}))
    assert v.status == WITNESSED and v.witnessed and not v.unresolved
    v = is_aperiodic(example("E1"), M({1: 1}), M({1: 4}))
    assert v.status == UNKNOWN and v.unresolved == [("v", Z, M({1: 1}))]
    q = quotient(example("E5"), {"v"})
    assert is_aperiodic(q, M({1: 1}), M({1: 4})).witnessed
    with pytest.raises(ValueError):
        is_aperiodic(example("E2"), M({1: 2}), M({1: 1}))


def test_degree_pairs():
    pairs = degree_pairs(M({1: 1, 2: 1}))
    assert len(pairs) == 6 and all(m != n for m, n in pairs)


@pytest.mark.parametrize("name", ["E2", "E3", "E4", "E5"])
def test_witnesses_are_sound(name):
    g = example(name)
    verdict = is_aperiodic(g, M({1: 1, 2: 1}), M({1: 3, 2: 2}))
    for (v, m, n), lam in verdict.witnesses.items():
        assert brute_witness(g, v, m, n, lam)
    assert len(verdict.witnesses) + len(verdict.unresolved) == len(g.vertices) * 6


@pytest.mark.parametrize("name", ["E2", "E4", "E5"])
def test_monotone_in_bound(name):
    g = example(name)
    small = is_aperiodic(g, M({1: 1}), M({1: 2}))
    large = is_aperiodic(g, M({1: 1}), M({1: 4}))
    assert set(small.witnesses) <= set(large.witnesses)
    assert all(small.witnesses[k] == large.witnesses[k] for k in small.witnesses)


def test_pairs_in_tail_directions_stay_unknown():
    # the trivial tail makes every graph periodic in the tail colors
    verdict = is_aperiodic(example("E2"), M({1: 1, 2: 1}), M({1: 3, 2: 2}))
    assert ("v", Z, M({2: 1})) in verdict.unresolved
    assert ("v", Z, M({1: 1})) in verdict.witnesses


@pytest.mark.parametrize("g", [example("E2"), example("E5"), build_product([example("E2"), example("E2")])],
                         ids=["E2", "E5", "E2xE2"])
def test_regular_quotients_stay_aperiodic(g):
    cap, bound = M({1: 1}), M({1: 4})
    if not is_aperiodic(g, cap, bound).witnessed:
        pytest.skip("not witnessed")
    for h in enumerate_lattice(g):
        if is_regular(h, g) and len(h) < len(g.vertices):
            assert is_aperiodic(quotient(g, h), cap, bound).witnessed


def brute_separates(g, v, l, lam):
    arriving = [a for a in g.paths_upto(l) if a.source == v]
    heads = [brute_piece(g, g.compose(a, lam), Z, lam.degree) for a in arriving]
    return len(set(heads)) == len(heads)


def test_separating_path():
    g = example("E2")
    lam = separating_path("v", M({1: 1}), M({1: 3}), g)
    assert lam is not None and leq(M({1: 1}), lam.degree) and brute_separates(g, "v", M({1: 1}), lam)
    e1 = example("E1")
    assert separating_path("v", M({1: 1}), M({1: 4}), e1) is None
    for lam in e1.paths_upto(M({1: 4})):
        if leq(M({1: 1}), lam.degree):
            assert not brute_separates(e1, "v", M({1: 1}), lam)
    # nothing but v itself arrives at v with degree <= 0: vacuous success
    assert separating_path("v", Z, M({1: 1}), e1).is_vertex
