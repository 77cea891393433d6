"""Closed-form Cox ring of a quintic class in the blow-up of P^4 at a point."""

from coxring import (PolyRing, GF, ambient_from_ample, theoremB_presentation,
                     presentation_by_adjunction, split_multiplicity, PresentedRing,
                     intersect_localizations, Ideal, MonomialOrder)

R = PolyRing("T1..T6", GF(32003))
Z = ambient_from_ample(R, [[1, 1, 1, 1, 1, 0], [-1, -1, -1, -1, 0, 1]], [2, -1])
print(Z.codim2_components())  # one component <T5,T6>

f = Z.random_general_polynomial([5, -3], seed=7)
P = theoremB_presentation(Z, f)  # checks the hypotheses, then certifies
print("multiplicity", P.d, "new degrees", [str(s) for s in P.s_degrees()])
for r in P.relations:
    print(str(r)[-30:])  # the S-terms sit at the end of each relation
print(P.certificate.format())
print("dim", P.dimension(), "marker codim", P.marker_codim(), "saturated", P.is_saturated())

# adjoining the same fractions one by one gives the same ideal
Q = presentation_by_adjunction(P)
order = MonomialOrder.weight(Q.weights)
print(Ideal(P.ring, P.relations).groebner(order) == Q.ideal.groebner(order))

# kill the middle part: the hypothesis fails and the closed form refuses
s = split_multiplicity(f, R("T6"), R("T5"))
g = f + s.parts[1] * R("T5*T6")
try:
    theoremB_presentation(Z, g)
except Exception as e:
    print(type(e).__name__, e)

# localization still works, and pruning leaves a single new generator
D, cert = intersect_localizations(PresentedRing.hypersurface(Z, g, markers=["T6", "T5"]), pivot="T6")
print(D.ring, [str(a.degree) for a in D.history], cert.passed)
