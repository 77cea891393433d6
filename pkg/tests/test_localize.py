import pytest

from coxring.graded import GradingMatrix, degree_of
from coxring.hyperpres import split_multiplicity, theoremB_presentation
from coxring.ideals import Ideal, eliminate
from coxring.localize import (
    NCapExceededError,
    PreconditionError,
    PresentedRing,
    RoundBudgetExhausted,
    SingleMarkerError,
    adjoin_fraction,
    certify_run,
    codim_of_markers,
    cr2_certificate,
    expand_history,
    intersect_localizations,
    new_fraction_numerators,
    saturation_intersection,
    verify_presentation,
)
from coxring.polys import GF, PolyRing, exact_divide
from coxring.toric import ambient_from_ample


@pytest.fixture
def plane():
    return PresentedRing(PolyRing("x,y", GF()), [], GradingMatrix([[1, 0], [0, 1]]), ["x", "y"])


@pytest.fixture
def cone():
    R = PolyRing("x,y,u,v", GF())
    return PresentedRing(R, ["x*v-y*u"], GradingMatrix([[1, 0, 1, 0], [0, 1, 0, 1]]), ["x", "y"])


@pytest.fixture(scope="module")
def blpp4():
    R = PolyRing("T1..T6", GF())
    Z = ambient_from_ample(R, [[1, 1, 1, 1, 1, 0], [-1, -1, -1, -1, 0, 1]], [2, -1])
    return Z, Z.random_general_polynomial([5, -3], 7)


def test_codim_of_markers(plane, cone):
    assert codim_of_markers(plane) == 2
    assert codim_of_markers(cone) == 1
    line = PresentedRing(PolyRing("x", GF()), [], GradingMatrix([[1]]), ["x"])
    assert codim_of_markers(line) == 1


def test_saturation_intersection(plane, cone):
    assert saturation_intersection(plane, 0, 1).groebner() == [plane.ring("x")]
    I1 = saturation_intersection(cone, 0, 1)
    assert I1.contains(cone.ring("u"))
    assert not I1.contains(cone.ring("v"))


def test_new_fraction_numerators(plane, cone):
    assert new_fraction_numerators(plane, 0, 1) == []
    assert new_fraction_numerators(plane, 0, 3) == []
    (u,) = new_fraction_numerators(cone, 0, 1)
    assert u.monic() == cone.ring("u")


def test_new_numerator_blpp4_is_last_part(blpp4):
    # pivot T6: the first new numerator is the T6-free part, up to sign
    Z, f = blpp4
    R = PresentedRing.hypersurface(Z, f, markers=["T6", "T5"])
    split = split_multiplicity(f, Z.ring("T6"), Z.ring("T5"))
    B = new_fraction_numerators(R, "T6", 1)
    assert len(B) == 1
    assert (R.ideal + [Z.ring("T6")]).contains(split.parts[0] * Z.ring("T5^2"))
    assert Ideal(Z.ring, [Z.ring("T6"), split.parts[0]]).contains(B[0])


def test_adjoin_fraction_cone(cone):
    A = adjoin_fraction(cone, cone.ring("u"), 0, 1)
    assert A.ring.names == ("x", "y", "u", "v", "S1")
    assert A.ideal.contains(A.ring("S1*y-v"))
    assert A.ideal.contains(A.ring("S1*x-u"))
    assert degree_of(A.ring("S1"), A.grading) == (0, 0)
    # after eliminating u, v the ring is a polynomial ring in x, y, S1
    assert eliminate(A.ideal, ["u", "v"]).is_zero()


def test_adjoin_fraction_rejects_old_fraction(cone):
    with pytest.raises(PreconditionError):
        adjoin_fraction(cone, cone.ring("x"), 0, 1)


def test_loop_trivial(plane):
    Q, cert = intersect_localizations(plane)
    assert Q is plane
    assert cert.rounds == 0 and cert.passed


def test_loop_cone(cone):
    Q, cert = intersect_localizations(cone)
    assert cert.passed and cert.rounds == 1
    assert len(Q.history) == 1
    assert Q.dimension() == 3
    assert codim_of_markers(Q) == 2
    assert certify_run(cone, Q).passed
    (name, num, den), = expand_history(Q)
    assert (name, num, den) == ("S1", cone.ring("u"), cone.ring("x"))


def test_loop_guards(cone):
    with pytest.raises(SingleMarkerError, match="only one marker"):
        intersect_localizations(PresentedRing(cone.ring, cone.ideal, cone.grading, ["x"]))
    with pytest.raises(NCapExceededError):
        intersect_localizations(cone, n_cap=0)


def test_round_budget_carries_partial(blpp4):
    R7 = PolyRing("T1..T7", GF())
    grading = [[1, 1, 1, 1, 1, 0, 0], [-1, -1, -1, -1, 0, 1, 0], [-1, -1, -1, 0, -1, 0, 1]]
    Z = ambient_from_ample(R7, grading, [3, -1, -1])
    P = PresentedRing.hypersurface(Z, Z.random_general_polynomial([3, -1, -1], 1))
    with pytest.raises(RoundBudgetExhausted) as e:
        intersect_localizations(P, pivot="T6*T7", max_rounds=1)
    assert not e.value.certificate.passed
    assert e.value.partial.ring.names[-2:] == ("S1", "S2")


def test_cr2_cone(cone):
    naive = cr2_certificate(cone, [(cone.ring("u"), cone.ring("x"), 1)])
    assert not naive.passed
    assert any("codimension" in f for f in naive.failures)
    assert naive.codims["markers in R''"] == 1
    extra = cr2_certificate(cone, [(cone.ring("u"), cone.ring("x"), 1)], relations=["S1*y-v"])
    assert extra.passed
    bogus = cr2_certificate(cone, [(cone.ring("u"), cone.ring("x"), 1)], relations=["S1*y-u"])
    assert not bogus.passed
    assert any("does not vanish" in f for f in bogus.failures)


def test_cr2_closed_form_drop_fraction(blpp4):
    Z, f = blpp4
    P = theoremB_presentation(Z, f)
    base = PresentedRing.hypersurface(Z, f)
    full = cr2_certificate(base, P.fractions, relations=P.relations)
    assert full.passed
    dropped = cr2_certificate(base, P.fractions[:1])
    assert not dropped.passed
    assert any("codimension" in x for x in dropped.failures)


def test_degenerate_blpp4_prunes_to_one_variable(blpp4):
    Z, f = blpp4
    T5, T6 = Z.ring("T5"), Z.ring("T6")
    split = split_multiplicity(f, T6, T5)
    g = f + split.parts[1] * T6 * T5  # remove the middle part
    base = PresentedRing.hypersurface(Z, g, markers=["T6", "T5"])
    Q, cert = intersect_localizations(base, pivot="T6")
    assert cert.passed
    assert Q.adjoined == ("S1",)
    assert degree_of(Q.ring("S1"), Q.grading) == (3, -5)
    rels = Q.minimal_relations()
    assert len(rels) == 2
    f3, f5 = split.parts[0], split.parts[2]
    # S1 = c * (-f3 / T6^2) for a nonzero constant c; read c off the stored fraction
    (_, num, den), = expand_history(Q)
    ratio = exact_divide(num * T6**2, -f3 * den)
    assert ratio is not None and ratio.is_constant()
    k = Z.ring.field.inv(ratio.leading_coefficient())
    S1, E = Q.ring("S1"), Q.embed
    want = Ideal(Q.ring, [E(f3) + k * E(T6**2) * S1, E(f5) - k * E(T5**2) * S1])
    assert Q.ideal.groebner() == want.groebner()
    assert certify_run(base, Q).passed
    unpruned, _ = intersect_localizations(base, pivot="T6", prune=False)
    assert len(unpruned.adjoined) == 2


def test_verify_presentation(cone, plane):
    assert verify_presentation(plane).passed
    bad = verify_presentation(cone)
    assert not bad.passed
    assert any("codimension" in f for f in bad.failures)
    Q, _ = intersect_localizations(cone)
    assert verify_presentation(Q, cone).passed


def test_markers_dropped_on_elimination(cone):
    Q, _ = intersect_localizations(cone)
    E = Q.eliminate_variables(["u", "v"])
    assert E.ring.names == ("x", "y", "S1")
    assert E.ideal.is_zero()
