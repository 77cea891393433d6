import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from coxring.graded import DegreeVector, degree_of
from coxring.hyperpres import (
    CodimensionHypothesisError,
    ConditionsViolatedError,
    DimensionScopeError,
    MultiplicityZeroError,
    NonUniqueComponentError,
    NotAmpleError,
    NotFanoError,
    anticanonical_degree,
    anticanonical_presentation,
    corollaryC_case,
    presentation_by_adjunction,
    rank2_surface_presentation,
    scroll_type,
    split_multiplicity,
    theoremB_presentation,
)
from coxring.ideals import Ideal
from coxring.polys import GF, QQ, PolyRing, exact_divide
from coxring.toric import InvalidParamsError, Rank2Params, ambient_from_ample, rank2_smooth

BLPP4 = [[1, 1, 1, 1, 1, 0], [-1, -1, -1, -1, 0, 1]]


@pytest.fixture(scope="module")
def blpp4():
    R = PolyRing("T1..T6", GF())
    Z = ambient_from_ample(R, BLPP4, [2, -1])
    f = Z.random_general_polynomial([5, -3], 7)
    return Z, f, theoremB_presentation(Z, f)


# -- splitting -----------------------------------------------------------------------


def test_split_d1():
    R = PolyRing("T1..T4", QQ)
    s = split_multiplicity(R("T3*T1 - T4*T2"), R("T2"), R("T1"))
    assert s.d == 1
    assert s.parts == (R("T3"), R("T4"))
    assert s.pair == ("T2", "T1")


def test_split_single_term():
    R = PolyRing("x,y", QQ)
    s = split_multiplicity(R("x^2*y"), R("x"), R("y"))
    assert s.d == 3
    assert s.parts == (R.zero, R.zero, R.one, R.zero)
    assert s.degenerate_parts() == [0, 1, 3]


def test_split_errors():
    R = PolyRing("T1..T4", QQ)
    with pytest.raises(MultiplicityZeroError):
        split_multiplicity(R("T3 + T1"), R("T1"), R("T2"))
    with pytest.raises(MultiplicityZeroError):
        split_multiplicity(R.zero, R("T1"), R("T2"))


_R4 = PolyRing("a,b,c,d", GF(101))
mono = st.tuples(*[st.integers(0, 3)] * 4)


@settings(max_examples=200, deadline=None)
@given(st.lists(st.tuples(mono, st.integers(1, 100)), min_size=1, max_size=8))
def test_split_reconstructs(terms):
    f = _R4.from_terms([((e[0] + 1, e[1], e[2], e[3]), c) for e, c in terms])  # f in <a, b>
    s = split_multiplicity(f, _R4("a"), _R4("b"))
    assert s.reconstruct() == f
    for i, part in enumerate(s.parts[:-1]):
        assert all(e[0] == 0 for e in part.as_dict()), i


def test_split_blpp4_parts(blpp4):
    Z, f, P = blpp4
    s = P.split
    assert s.d == 2 and s.pair == ("T6", "T5")
    T5, T6 = Z.ring("T5"), Z.ring("T6")
    assert f == s.parts[0] * T5**2 - s.parts[1] * T5 * T6 + s.parts[2] * T6**2


# -- closed form ------------------------------------------------------------------------


def test_blpp4_relations(blpp4):
    Z, f, P = blpp4
    R = P.ring
    f0, f1, f2 = (R(str(p)) for p in P.split.parts)
    want = [f0 + R("T6*S1"), f1 + R("T5*S1") + R("T6*S2"), f2 + R("T5*S2")]
    assert list(P.relations) == want
    assert sorted(map(tuple, P.s_degrees())) == [(3, -4), (4, -5)]
    assert P.certificate.passed
    assert P.dimension() == R.nvars - 3
    assert P.marker_codim() >= 2
    assert P.is_saturated()


def test_relations_homogeneous_and_degrees_step(blpp4):
    Z, f, P = blpp4
    for r in P.relations:
        degree_of(r, P.grading)
    s1, s2 = P.s_degrees()
    assert s2 - s1 == Z.grading.column(4) - Z.grading.column(5)


def test_closed_form_d1_two_relations():
    p = Rank2Params(4, 3, (0, 0, 1))
    row, P = anticanonical_presentation(p, 3)
    assert row == "d1-table" and P.d == 1
    assert len(P.relations) == 2
    assert [tuple(x) for x in P.s_degrees()] == [(-1, 4)]


def test_fractions_satisfy_relations(blpp4):
    # the relations are linear in S; substitute S_j = N_j / Ta^j and clear Ta^d
    Z, f, P = blpp4
    base = Z.ring
    Ta, d = base("T6"), P.d
    assert len(P.fractions) == d
    lifted = []
    for j, (name, num, den) in enumerate(P.fractions, start=1):
        assert name == f"S{j}"
        assert den == Ta**j
        lifted.append(num * Ta ** (d - j))
    for r in P.relations:
        zero_s = r.compose(list(base.gens) + [base.zero] * d)
        full = r.compose(list(base.gens) + lifted)
        cleared = full - zero_s + zero_s * Ta**d
        assert exact_divide(cleared, f) is not None


def test_presentation_by_adjunction_matches_closed_form(blpp4):
    Z, f, P = blpp4
    Q = presentation_by_adjunction(P)
    assert Ideal(P.ring, P.relations).groebner() == Q.ideal.groebner()


def test_hypothesis_errors(blpp4):
    R7 = PolyRing("T1..T7", GF())
    grading = [[1, 1, 1, 1, 1, 0, 0], [-1, -1, -1, -1, 0, 1, 0], [-1, -1, -1, 0, -1, 0, 1]]
    Z7 = ambient_from_ample(R7, grading, [3, -1, -1])
    with pytest.raises(NonUniqueComponentError):
        theoremB_presentation(Z7, Z7.random_general_polynomial([3, -1, -1], 1))
    Z, f, P = blpp4
    T5, T6 = Z.ring("T5"), Z.ring("T6")
    rigged = f + P.split.parts[1] * T5 * T6
    with pytest.raises(CodimensionHypothesisError) as e:
        theoremB_presentation(Z, rigged)
    assert e.value.actual == 4 and e.value.required == 5


def test_scope_and_ampleness_errors():
    Z3 = rank2_smooth(Rank2Params(3, 2, (0, 1)))
    with pytest.raises(DimensionScopeError):
        theoremB_presentation(Z3, Z3.random_general_polynomial([1, 3], 1))
    Z = rank2_smooth(Rank2Params(4, 3, (0, 0, 0)))
    with pytest.raises(NotAmpleError):
        theoremB_presentation(Z, Z.random_general_polynomial([1, 0], 1))


# -- rank two tables ----------------------------------------------------------------


def test_rank2_case_selection():
    assert corollaryC_case(Rank2Params(4, 3, (0, 0, 1)), [2, 1]).kind == "case1"
    assert corollaryC_case(Rank2Params(4, 3, (0, 0, 1)), [2, 1]).d == 2
    c2 = corollaryC_case(Rank2Params(4, 1, (1,)), [2, 3])
    assert (c2.kind, c2.d) == ("case2", 3)
    assert not corollaryC_case(Rank2Params(4, 1, (1,)), [2, 4]).applies
    bad = corollaryC_case(Rank2Params(4, 3, (0, 0, 0)), [4, 1])
    assert not bad.applies and "a <= max" in bad.reason
    assert not corollaryC_case(Rank2Params(5, 2, (0, 1)), [1, 1]).applies


def test_anticanonical_rows():
    row, P = anticanonical_presentation(Rank2Params(5, 2, (0, 1)), 1)
    assert row == "hypersurface-CI" and len(P.relations) == 1
    row, P = anticanonical_presentation(Rank2Params(4, 1, (2,)), 1)
    assert row == "d2-table"
    assert sorted(map(tuple, P.s_degrees())) == [(4, -1), (6, -1)]
    assert anticanonical_degree(Rank2Params(4, 1, (2,))) == (2, 2)
    with pytest.raises(NotFanoError):
        anticanonical_presentation(Rank2Params(4, 3, (0, 0, 2)), 1)


def test_surface_rows():
    P = rank2_surface_presentation(Rank2Params(3, 2, (0, 1)), [1, 3], 1)
    assert [tuple(x) for x in P.s_degrees()] == [(-1, 3)]
    P = rank2_surface_presentation(Rank2Params(3, 1, (1,)), [2, 2], 1)
    assert sorted(map(tuple, P.s_degrees())) == [(3, -1), (4, -1)]
    with pytest.raises(ConditionsViolatedError, match="3-a_1"):
        rank2_surface_presentation(Rank2Params(3, 1, (0,)), [2, 2], 1)
    with pytest.raises(ConditionsViolatedError, match="b-3>=0"):
        rank2_surface_presentation(Rank2Params(3, 2, (0, 1)), [1, 2], 1)
    with pytest.raises(ConditionsViolatedError, match="a_1 = 0"):
        rank2_surface_presentation(Rank2Params(3, 2, (1, 1)), [1, 3], 1)


# -- scrolls ---------------------------------------------------------------------


def test_scroll_examples():
    assert scroll_type(5, 7) == (1, 3)
    assert scroll_type(4, 3) == (3, 0)
    assert scroll_type(4, 1) == (2, 1)
    with pytest.raises(InvalidParamsError):
        scroll_type(2, 1)


@settings(max_examples=100, deadline=None)
@given(st.integers(3, 12), st.integers(1, 40))
def test_scroll_periodic(n, d):
    assert scroll_type(n, d) == scroll_type(n, d + n - 1)
    zeros, ones = scroll_type(n, d)
    assert zeros + ones == n - 1
