"""Cox ring of a cubic in the blow-up of P^4 at two points, by localization."""

from coxring import PolyRing, GF, ambient_from_ample, PresentedRing, intersect_localizations

R = PolyRing("T1..T7", GF(32003))
grading = [[1, 1, 1, 1, 1, 0, 0],
           [-1, -1, -1, -1, 0, 1, 0],
           [-1, -1, -1, 0, -1, 0, 1]]

Z = ambient_from_ample(R, grading, [3, -1, -1])  # ample class picks the irrelevant ideal
print(Z.codim2_components())  # three codimension-2 pieces, so no closed form applies
print([str(m) for m in Z.markers()])  # one product per transversal

f = Z.random_general_polynomial([3, -1, -1], seed=1)
X = PresentedRing.hypersurface(Z, f)
print(len(f.terms), "terms in f")

# adjoin fractions g / (T6*T7)^n until the markers cut codimension 2
R1, cert = intersect_localizations(X, pivot="T6*T7", seed=1)
print(cert.format())
for a in R1.history:
    print(a.name, "degree", a.degree, "round", a.round)

# T4 and T5 become redundant: the result is a complete intersection
E = R1.eliminate_variables(["T4", "T5"])
print(E.ring, "dim", E.dimension(), "relations", len(E.minimal_relations()))

# the same hypersurface class on the flipped model needs only two new generators
Z2 = ambient_from_ample(R, grading, [3, -2, -2])
X2 = PresentedRing.hypersurface(Z2, Z2.random_general_polynomial([3, -2, -2], seed=1))
R2, cert2 = intersect_localizations(X2, pivot="T4*T5", seed=1)
print([str(a.degree) for a in R2.history])
print("minimal relations:", len(R2.minimal_relations()), "codim:", R2.ring.nvars - R2.dimension())
