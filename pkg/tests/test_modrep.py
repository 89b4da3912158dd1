import random
from fractions import Fraction

import pytest

from lambdamn.exactla import QQ, Field, Matrix, rank
from lambdamn.ktmod import labeled_to_triple
from lambdamn.modrep import (
    RelationViolation,
    RepTriple,
    ShapeMismatch,
    check_relations,
    degeneration_necessary,
    endo_space,
    hom_space,
    is_isomorphic,
    local_family,
    local_is_isomorphic,
    local_tangent,
    orbit_dim,
    tangent_dim,
)
from lambdamn.strata import normal_form, staircase, stratum_dim

from oracles import dense_rank, matmul
from sampling import random_invertible, random_triple

Z1 = Matrix.zeros(QQ, 1, 1)
ONE = RepTriple(1, 1, Z1, Z1, Matrix.identity(QQ, 1))
TWO_ONES = ONE.direct_sum(ONE)


def E12(field=QQ):
    return Matrix(field, [[0, 1], [0, 0]])


def triple(m, n, p, q):
    return labeled_to_triple(normal_form(m, n, p, q), m, n)


def test_relations_examples():
    Z = Matrix.zeros(QQ, 2, 2)
    assert check_relations(RepTriple(1, 1, Z, Z, Matrix(QQ, [[3, 1], [0, 7]])))
    assert check_relations(RepTriple(2, 2, E12(), E12(), Matrix.identity(QQ, 2)))
    bad = RepTriple(2, 2, E12(), E12(), Matrix(QQ, [[1, 0], [0, 0]]))
    assert not check_relations(bad)
    # the failing relation is CA - BC = E12, by direct multiplication
    C, A = [[1, 0], [0, 0]], [[0, 1], [0, 0]]
    assert matmul(C, A) == [[0, 1], [0, 0]] and matmul(A, C) == [[0, 0], [0, 0]]
    with pytest.raises(RelationViolation):
        endo_space(bad)


def test_shape_mismatch():
    with pytest.raises(ShapeMismatch):
        RepTriple(1, 1, Z1, Matrix.zeros(QQ, 2, 2), Matrix.zeros(QQ, 1, 1))
    with pytest.raises(ShapeMismatch):
        is_isomorphic(ONE, TWO_ONES)


def test_endo_examples():
    E = endo_space(ONE)
    assert (E.dim, E.is_local) == (1, True)
    E2 = endo_space(TWO_ONES)
    assert (E2.dim, E2.is_local, E2.dim_top) == (4, False, 4)
    E3 = endo_space(triple(3, 3, (3, 1), (3, 2)))
    assert E3.is_local and E3.dim_top == 1


def _flatten(P, Q):
    return [x for M in (P, Q) for row in M.rows for x in row]


def test_endo_contains_identity():
    rng = random.Random(0)
    for p, q in [((3, 1), (2,)), ((2, 2), (3, 1)), ((1,), (4,))]:
        R = random_triple(p, q, 4, 4, QQ, rng)
        stacked = [_flatten(P, Q) for P, Q in hom_space(R, R)]
        ident = _flatten(Matrix.identity(QQ, R.A.nrows), Matrix.identity(QQ, R.B.nrows))
        assert stacked and dense_rank(stacked + [ident]) == dense_rank(stacked)


def test_orbit_dim_examples():
    assert orbit_dim(ONE) == 1
    assert orbit_dim(TWO_ONES) == 4
    assert orbit_dim(triple(3, 2, (3, 1), (2,))) == stratum_dim((3, 1), (2,)) == 15


def test_base_change_invariance_of_endo_and_orbit():
    rng = random.Random(1)
    for p, q in [((3, 1), (2,)), ((3, 1), (3, 2)), ((2, 1), (2, 1)), ((2, 2), (1, 1))]:
        R = random_triple(p, q, 3, 3, QQ, rng, conjugate=False)
        S = R.act(random_invertible(QQ, R.A.nrows, rng), random_invertible(QQ, R.B.nrows, rng))
        assert endo_space(S).dim == endo_space(R).dim
        assert endo_space(S).dim_top == endo_space(R).dim_top
        assert orbit_dim(S) == orbit_dim(R)


def test_isomorphism_examples():
    assert is_isomorphic(ONE, ONE)
    Z = Matrix.zeros(QQ, 2, 2)
    rank_one = RepTriple(1, 1, Z, Z, E12())
    assert rank(rank_one.C) != rank(TWO_ONES.C)
    assert not is_isomorphic(TWO_ONES, rank_one)


def test_isomorphism_under_base_change():
    rng = random.Random(2)
    for p, q in [((3, 1), (2,)), ((4, 1), (3, 2)), ((2, 1, 1), (2, 2))]:
        R = random_triple(p, q, 4, 3, QQ, rng)
        S = R.act(random_invertible(QQ, R.A.nrows, rng), random_invertible(QQ, R.B.nrows, rng))
        assert is_isomorphic(R, S) and is_isomorphic(S, R)
        S2 = S.act(random_invertible(QQ, R.A.nrows, rng), random_invertible(QQ, R.B.nrows, rng))
        assert is_isomorphic(S, S2)


def test_non_isomorphic_same_dimension():
    # (3,1)/(2) general point vs the decomposable direct sum with the same labels
    R = triple(3, 2, (3, 1), (2,))
    S = labeled_to_triple(staircase((3,), (2,)), 3, 2).direct_sum(
        RepTriple(1, 1, Z1, Matrix.zeros(QQ, 0, 0), Matrix.zeros(QQ, 0, 1)))
    assert R.dim_vector == S.dim_vector
    assert not is_isomorphic(R, S) and not is_isomorphic(S, R)


def test_tangent_examples():
    Z = RepTriple(2, 2, Z1, Z1, Z1)
    assert tangent_dim(Z) == 3
    rng = random.Random(3)
    for p, q in [((3, 1), (2,)), ((2, 1), (3,)), ((2, 2), (2, 1))]:
        R = random_triple(p, q, 3, 3, QQ, rng)
        assert tangent_dim(R) >= orbit_dim(R)


def _m_k(k):
    """M_{(k+1),(1)} and M_{(k,1),(1)} for Lambda(k+1, 2)."""
    return (labeled_to_triple(staircase((k + 1,), (1,)), k + 1, 2),
            labeled_to_triple(staircase((k, 1), (1,)), k + 1, 2))


@pytest.mark.parametrize("k", [3, 4])
def test_degeneration_example(k):
    M, N = _m_k(k)
    fwd = degeneration_necessary(M, N)
    assert fwd.passes and fwd.endo_dim_from == k + 1 and fwd.endo_dim_to == k + 2
    back = degeneration_necessary(N, M)
    assert not back.endo_condition and not back.passes


def test_degeneration_trivial():
    M, _ = _m_k(3)
    assert degeneration_necessary(M, M).passes


def test_local_family_n2():
    t = local_tangent(local_family(2, [5]))
    assert (t.endo_dim, t.orbit, t.tangent, t.quotient) == (2, 2, 3, 1)
    assert t.component_dim == 3 > t.max_orbit_dim == 2 and not t.dense_orbit


@pytest.mark.parametrize("n", range(2, 6))
def test_local_family_quotient(n):
    t = local_tangent(local_family(n))
    assert t.quotient == n - 1
    assert t.component_dim == n + 1


def test_local_family_points_distinct():
    a = local_family(3, [1, 2])
    b = local_family(3, [1, Fraction(5, 2)])
    assert local_is_isomorphic(a, a)
    assert not local_is_isomorphic(a, b)


def test_local_family_validation():
    with pytest.raises(ValueError):
        local_family(1)
    with pytest.raises(ValueError):
        local_family(3, [1])


def test_json_round_trip():
    R = triple(3, 3, (3, 1), (3, 2))
    assert RepTriple.from_json(R.to_json()) == R
    F = Field(7)
    S = RepTriple(1, 1, Matrix.zeros(F, 1, 1), Matrix.zeros(F, 1, 1), Matrix(F, [[3]]))
    assert RepTriple.from_json(S.to_json()) == S
