import pytest
from hypothesis import given, strategies as st

from lambdamn.ktmod import TruncPoly, dual_labeled
from lambdamn.partitions import Partition, UnequalWeight, bar, enumerate_partitions
from lambdamn.strata import (
    NotCandidate,
    Stratum,
    candidate_filter,
    containment_hint,
    general_indecomposable,
    h_of,
    normal_form,
    staircase,
    stratum_dim,
    transpose_dual,
)

from oracles import brute_h, commutant_dim, jordan


def exponents(M):
    """Grid of entry valuations, ``None`` for zero entries."""
    return [[e.valuation for e in row] for row in M.entries]


def all_partitions(max_weight, max_part=None):
    return [p for d in range(1, max_weight + 1)
            for p in enumerate_partitions(d, max_part or d)]


def test_h_examples():
    assert h_of((1,), (1,)) == 1
    assert h_of((3, 1), (2,)) == 3 == brute_h((3, 1), (2,))
    assert h_of((5, 3), (4,)) == h_of((2, 2), (2,)) == brute_h((2, 2), (2,)) == 4


def test_h_bar_invariance_up_to_weight_8():
    ps = all_partitions(8)
    for p in ps:
        for q in ps:
            assert h_of(p, q) == h_of(bar(p), bar(q))


@pytest.mark.parametrize("p,q,want", [((1,), (1,), 1), ((2,), (2,), 6), ((3, 1), (2,), 15)])
def test_stratum_dim_examples(p, q, want):
    d1, d2 = sum(p), sum(q)
    orbits = d1 * d1 - commutant_dim(jordan(p)) + d2 * d2 - commutant_dim(jordan(q))
    assert stratum_dim(p, q) == want == orbits + brute_h(p, q)


def test_containment_examples():
    assert containment_hint((2, 2), (1, 1), (3, 1), (1, 1))
    assert containment_hint((3, 1), (2,), (3, 1), (2,))
    # (2,2) has more parts of size >= 2 than (3,1); against q=(2) the h values differ
    assert not containment_hint((2, 2), (2,), (3, 1), (2,))
    with pytest.raises(UnequalWeight):
        containment_hint((2,), (1,), (3,), (1,))


def test_candidate_filter_examples():
    p = Partition.parse("4,3^6,1^5")
    q = Partition.parse("4,3^5,2")
    assert not candidate_filter(5, 4, p, q)
    assert all(candidate_filter(4, 3, (u,), (z,)) for u in range(1, 5) for z in range(1, 4))
    for m, n in [(5, 5), (6, 4)]:
        for k in range(3, m):
            for l in range(3, n):
                assert candidate_filter(m, n, (m, k, 1), (n, l, 2))


def test_candidate_filter_rejects_two_middle_parts():
    # p = (4,3,1) for m = 5 has two parts strictly between 2 and m
    assert not candidate_filter(5, 4, (4, 3, 1), (4, 2))
    assert not Stratum(5, 4, (4, 3, 1), (4, 2)).to_json()["candidate"]
    assert candidate_filter(5, 4, (5, 3, 1), (4, 2))


def test_candidate_filter_rejects_repeated_parts():
    assert not candidate_filter(5, 5, (5, 5, 3, 1), (5, 3, 2))
    assert not candidate_filter(5, 5, (5, 3, 1), (5, 3, 2, 2))


def test_candidate_filter_transpose_invariant():
    ps = all_partitions(6, 5)
    for p in ps:
        for q in ps:
            assert candidate_filter(5, 4, p, q) == candidate_filter(4, 5, q, p)


def test_normal_form_shapes():
    for k, z in [(3, 2), (4, 3), (5, 5)]:
        assert exponents(normal_form(k, z, (k, 1), (z,))) == [[z - 2, z - 1]]
    assert exponents(normal_form(3, 3, (3,), (3,))) == [[1]]
    assert exponents(normal_form(3, 3, (1,), (3,))) == [[2]]
    assert exponents(normal_form(3, 3, (3,), (1,))) == [[0]]
    # 2x2: t,u = 3,1 and y,z = 3,2
    assert exponents(normal_form(3, 3, (3, 1), (3, 2))) == [[1, None], [0, 1]]
    # 3x3 staircase with T^* on treads and risers
    M = normal_form(5, 5, (5, 3, 1), (5, 4, 2))
    assert exponents(M) == [[3, None, None], [2, 2, None], [None, 0, 1]]
    with pytest.raises(NotCandidate):
        normal_form(5, 5, (2, 2), (2,))


def test_normal_form_transposed_orientation_is_dual():
    M = normal_form(3, 4, (3,), (4, 1))
    assert M == dual_labeled(staircase((4, 1), (3,)))
    assert tuple(M.row_labels) == (4, 1) and tuple(M.col_labels) == (3,)


def _has_zero_line(M):
    rows = any(not any(r) for r in M.entries)
    cols = any(not any(M.entries[i][j] for i in range(len(M.entries)))
               for j in range(len(M.col_labels)))
    return rows or cols


@given(st.lists(st.integers(1, 5), min_size=1, max_size=5),
       st.lists(st.integers(1, 5), min_size=1, max_size=5))
def test_staircase_zero_lines_iff_length_gap(p, q):
    p, q = Partition(sorted(p, reverse=True)), Partition(sorted(q, reverse=True))
    M = staircase(p, q)
    assert _has_zero_line(M) == (len(p) - len(q) not in (0, 1))


def test_transpose_dual_involution():
    for args in [(5, 4, (5, 3, 1), (4, 3, 2)), (4, 5, (3, 2), (4, 1)), (3, 3, (2,), (3,))]:
        g = general_indecomposable(*args)
        t = transpose_dual(g)
        assert (t.m, t.n, t.p, t.q) == (g.n, g.m, g.q, g.p)
        assert transpose_dual(t) == g


def test_one_by_two_dual_is_two_by_one():
    g = general_indecomposable(4, 3, (4, 1), (3,))
    t = transpose_dual(g)
    assert g.label == "1x2" and t.label == "2x1" and t.transposed
    assert t.normal_form == dual_labeled(g.normal_form)
    assert exponents(t.normal_form) == [[2], [0]]  # T^* in rows J4, J1 of column J3


def test_stratum_json():
    s = Stratum(3, 2, (3, 1), (2,))
    assert s.to_json() == {"m": 3, "n": 2, "p": [3, 1], "q": [2], "h": 3, "dim": 15,
                           "candidate": True}
    with pytest.raises(ValueError):
        Stratum(2, 2, (3,), (1,))


def test_labels_entries_match_tstar_rule():
    M = staircase((4, 2, 1), (3, 2))
    assert M[0, 1] == TruncPoly.monomial(M.field, 3, 1)
    assert M[1, 2] == TruncPoly.monomial(M.field, 2, 1)
