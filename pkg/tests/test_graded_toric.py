import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from coxring.graded import (
    DegreeVector,
    GradingMatrix,
    InhomogeneousError,
    RankMismatchError,
    adjoined_degree,
    degree_of,
    homogenizing_weights,
    is_homogeneous,
    parse_degree,
    positive_weights,
)
from coxring.polys import GF, QQ, PolyRing
from coxring.toric import (
    InvalidParamsError,
    Rank2Params,
    ambient_from_ample,
    irrelevant_from_ample,
    is_ample_rank2,
    is_fano,
    monomial_basis,
    rank2_smooth,
)

BL2 = GradingMatrix([[1, 1, 1, 1, 1, 0, 0], [-1, -1, -1, -1, 0, 1, 0], [-1, -1, -1, 0, -1, 0, 1]])
T7 = PolyRing("T1..T7", GF())


# -- degrees ---------------------------------------------------------------------------


def test_degree_of_columns():
    assert degree_of(T7("T4^2*T5*T6"), BL2) == (3, -1, -1)
    assert 2 * DegreeVector((1, -1, 0)) + DegreeVector((1, 0, -1)) + DegreeVector((0, 1, 0)) == (3, -1, -1)
    for j in range(7):
        assert degree_of(T7.gen(j), BL2) == BL2.column(j)
    R = PolyRing("T1,T2", QQ)
    assert degree_of(R("T1*T2"), GradingMatrix([[1, 0], [0, 1]])) == (1, 1)


def test_inhomogeneous_and_rank_errors():
    with pytest.raises(InhomogeneousError):
        degree_of(T7("T1 + T5"), BL2)
    assert is_homogeneous(T7("T1 + T2"), BL2)
    assert not is_homogeneous(T7("T1 + T5"), BL2)
    with pytest.raises(RankMismatchError):
        DegreeVector((1, 2)) + DegreeVector((1, 2, 3))


def test_adjoined_degree():
    assert adjoined_degree(DegreeVector((5, -3)), 1, DegreeVector((0, 0))) == (5, -3)
    # first unprojection variable: deg f - (d + 1) deg Ta, here with d = 2, Ta = T6
    deg_f, deg_t6 = DegreeVector((5, -3)), DegreeVector((0, 1))
    assert adjoined_degree(deg_f - 2 * deg_t6, 1, deg_t6) == deg_f - 3 * deg_t6


def test_parse_and_format():
    assert parse_degree("[3,-1,-1]") == (3, -1, -1)
    G = GradingMatrix.parse(BL2.to_text())
    assert G.rows == BL2.rows
    assert BL2.format().splitlines()[1].split() == ["-1", "-1", "-1", "-1", "0", "1", "0"]


def test_positive_weights():
    w = positive_weights(BL2)
    assert w is not None and all(x > 0 for x in w)
    # a positive weight is a linear functional of the degree
    assert len({sum(a * b for a, b in zip(w, col)) for col in [BL2.column(j) for j in range(3)]}) == 1
    assert positive_weights(GradingMatrix([[1, -1]])) is None
    assert homogenizing_weights([T7("T1-T2")]) is not None
    assert homogenizing_weights([PolyRing("x", QQ)("x^2 - x")]) is None


@settings(max_examples=100, deadline=None)
@given(st.lists(st.tuples(*[st.integers(0, 3)] * 7), min_size=1, max_size=5))
def test_degree_is_additive(monos):
    degs = [BL2.monomial_degree(m) for m in monos]
    total = tuple(sum(c) for c in zip(*monos))
    assert BL2.monomial_degree(total) == sum(degs[1:], degs[0])


# -- toric ambients -------------------------------------------------------------------


def test_rank2_shapes():
    assert rank2_smooth(Rank2Params(4, 3, (0, 0, 1))).grading.rows == [[1, 1, 0, 0, 0, -1], [0, 0, 1, 1, 1, 1]]
    assert rank2_smooth(Rank2Params(4, 1, (1,))).grading.rows == [[1, 1, 1, 1, 0, -1], [0, 0, 0, 0, 1, 1]]
    Z = rank2_smooth(Rank2Params(2, 1, (0,)))
    assert Z.grading.rows == [[1, 1, 0, 0], [0, 0, 1, 1]]
    assert sorted(Z.codim2_components()) == [("T1", "T2"), ("T3", "T4")]


def test_rank2_params_validation():
    with pytest.raises(InvalidParamsError):
        Rank2Params(4, 4, (0, 0, 0, 0))
    with pytest.raises(InvalidParamsError):
        Rank2Params(4, 2, (1, 0))
    with pytest.raises(InvalidParamsError):
        Rank2Params.parse("4")
    assert Rank2Params.parse("4,3,0,0,1") == Rank2Params(4, 3, (0, 0, 1))


def test_fano():
    assert is_fano(Rank2Params(4, 1, (3,)))
    assert not is_fano(Rank2Params(4, 3, (0, 0, 2)))
    assert is_fano(Rank2Params(5, 2, (0, 0)))


def test_codim2_components():
    Z = rank2_smooth(Rank2Params(4, 3, (0, 0, 1)))
    assert Z.codim2_components() == [("T1", "T2")]
    Zbl = ambient_from_ample(T7, BL2, [3, -1, -1])
    assert sorted(Zbl.codim2_components()) == [("T4", "T7"), ("T5", "T6"), ("T6", "T7")]
    assert sorted(str(m) for m in Zbl.markers()) == ["T4*T6", "T5*T7", "T6*T7"]


def test_irrelevant_from_ample_reproduces_rank2():
    p = Rank2Params(4, 1, (2,))
    Z = rank2_smooth(p)
    got = ambient_from_ample(Z.ring, Z.grading, [1, 1])
    assert sorted(map(str, got.irrelevant)) == sorted(map(str, Z.irrelevant))
    # index sets are the complements of maximal cones: one from each block
    assert all(len(J) == 2 for J in irrelevant_from_ample(Z.grading, [1, 1]))


def test_ample_rank2():
    assert is_ample_rank2([1, 1])
    assert not is_ample_rank2([1, 0])


def test_random_polynomial_linear_system():
    Z = rank2_smooth(Rank2Params(2, 1, (0,)))
    f = Z.random_general_polynomial([1, 0], 3)
    assert sorted(f.as_dict()) == [(0, 1, 0, 0), (1, 0, 0, 0)]
    assert f == Z.random_general_polynomial([1, 0], 3)
    assert f != Z.random_general_polynomial([1, 0], 4)


def test_bl2p4_support_shapes():
    Z = ambient_from_ample(T7, BL2, [3, -1, -1])
    f = Z.random_general_polynomial([3, -1, -1], 1)
    shapes = {m[3:] for m in f.as_dict()}
    expected = {
        (1, 2, 0, 1), (2, 1, 1, 0), (0, 2, 0, 2), (1, 1, 1, 1),
        (2, 0, 2, 0), (0, 1, 1, 2), (1, 0, 2, 1), (0, 0, 2, 2),
    }
    assert shapes == expected
    assert degree_of(f, Z.grading) == (3, -1, -1)


def test_monomial_basis_matches_enumeration():
    Z = rank2_smooth(Rank2Params(4, 1, (1,)))
    deg = DegreeVector((3, 1))
    got = set(map(tuple, monomial_basis(Z.grading, deg)))
    want = {
        e for e in itertools.product(range(5), repeat=6)
        if Z.grading.monomial_degree(e) == deg
    }
    assert got == want
