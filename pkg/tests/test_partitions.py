from itertools import product

import pytest
from hypothesis import given, strategies as st

from lambdamn.partitions import (
    Partition,
    UnequalWeight,
    bar,
    conjugate,
    dominance_leq,
    enumerate_partitions,
    nilpotent_orbit_dim,
)

from oracles import commutant_dim, jordan, partitions as brute_partitions


def P(*parts):
    return Partition(parts)


def test_enumerate_examples():
    assert enumerate_partitions(3, 2) == [P(2, 1), P(1, 1, 1)]
    assert enumerate_partitions(5, 1) == [P(1, 1, 1, 1, 1)]
    assert enumerate_partitions(4, 3) == [P(3, 1), P(2, 2), P(2, 1, 1), P(1, 1, 1, 1)]
    assert enumerate_partitions(0, 3) == [P()]


@pytest.mark.parametrize("d,e", [(d, e) for d in range(9) for e in range(1, 7)])
def test_enumerate_matches_brute_force(d, e):
    got = enumerate_partitions(d, e)
    assert sorted(got) == sorted(brute_partitions(d, e))
    assert got == sorted(got, reverse=True)


def test_parse_exponent_sugar():
    assert Partition.parse("3,1^2") == P(3, 1, 1)
    assert str(P(3, 1, 1)) == "3,1,1"
    with pytest.raises(ValueError):
        Partition((1, 2))


def test_dominance_examples():
    chain = [P(1, 1, 1, 1), P(2, 1, 1), P(2, 2), P(3, 1), P(4)]
    assert all(dominance_leq(a, b) for a, b in zip(chain, chain[1:]))
    assert not dominance_leq(P(3, 1), P(2, 2))
    assert not dominance_leq(P(2, 2, 2), P(3, 1, 1, 1))
    assert not dominance_leq(P(3, 1, 1, 1), P(2, 2, 2))
    with pytest.raises(UnequalWeight):
        dominance_leq(P(2), P(1))


def test_dominance_is_partial_order():
    ps = enumerate_partitions(6, 6)
    for a, b in product(ps, repeat=2):
        if dominance_leq(a, b) and dominance_leq(b, a):
            assert a == b
        for c in ps:
            if dominance_leq(a, b) and dominance_leq(b, c):
                assert dominance_leq(a, c)
    assert all(dominance_leq(a, a) for a in ps)


def test_conjugate():
    assert conjugate(P(3, 1)) == P(2, 1, 1)
    assert conjugate(P(1, 1, 1, 1)) == P(4)
    assert all(conjugate(conjugate(p)) == p for p in enumerate_partitions(8, 5))


def test_bar():
    assert bar(P(5, 3, 2, 1)) == P(2, 2, 2, 1)
    assert bar(P(1, 1)) == P(1, 1)
    assert all(bar(bar(p)) == bar(p) for p in enumerate_partitions(6, 6))


def test_orbit_dim_examples():
    assert nilpotent_orbit_dim(P(1, 1, 1)) == 0
    assert nilpotent_orbit_dim(P(5)) == 20
    assert nilpotent_orbit_dim(P(2, 1), 3) == 4
    with pytest.raises(UnequalWeight):
        nilpotent_orbit_dim(P(2, 1), 4)


@pytest.mark.parametrize("d", range(1, 7))
def test_orbit_dim_matches_centralizer_oracle(d):
    for p in enumerate_partitions(d, d):
        assert nilpotent_orbit_dim(p) == d * d - commutant_dim(jordan(p))
        assert nilpotent_orbit_dim(p) + sum(c * c for c in conjugate(p)) == d * d


def test_orbit_dim_monotone_in_dominance():
    for d in range(1, 7):
        ps = enumerate_partitions(d, d)
        for a, b in product(ps, repeat=2):
            if dominance_leq(a, b):
                assert nilpotent_orbit_dim(a) <= nilpotent_orbit_dim(b)


@given(st.lists(st.integers(1, 6), max_size=7))
def test_bar_monotone_where_defined(parts):
    p = Partition(sorted(parts, reverse=True))
    for q in enumerate_partitions(p.weight, 6):
        if dominance_leq(q, p) and bar(q).weight == bar(p).weight:
            assert dominance_leq(bar(q), bar(p))
