"""Hypersurfaces in smooth rank-two toric varieties: cases, Fano rows, scrolls."""

from coxring import Rank2Params, rank2_smooth, corollaryC_case, anticanonical_presentation
from coxring import rank2_surface_presentation, scroll_type, theoremB_presentation

p = Rank2Params(4, 3, (0, 0, 1))  # n, k, a_1..a_k
print(rank2_smooth(p).grading.format())
print(corollaryC_case(p, [2, 1]))  # applies, multiplicity 2
print(corollaryC_case(Rank2Params(4, 3, (0, 0, 0)), [4, 1]).reason)  # effective cone not closed

# anticanonical hypersurfaces of the Fano ones
for q in [Rank2Params(5, 2, (0, 1)), Rank2Params(4, 3, (0, 0, 1)), Rank2Params(4, 1, (2,))]:
    row, P = anticanonical_presentation(q, seed=0)
    degs = [str(s) for s in P.s_degrees()] if P.split else []
    print(q, row, len(P.relations), "relations", degs)

# surfaces need the dimension-3 switch, which the helper sets
S = rank2_surface_presentation(Rank2Params(3, 1, (1,)), [2, 2], seed=0)
print([str(s) for s in S.s_degrees()], S.certificate.passed)

# degree [d,1] in P^1 x P^(n-1): a scroll, with d+1 relations
for n, d in [(5, 7), (4, 3), (4, 1)]:
    print(n, d, scroll_type(n, d))
Z = rank2_smooth(Rank2Params(4, 3, (0, 0, 0)))
for d in (1, 2, 3):
    P = theoremB_presentation(Z, Z.random_general_polynomial([d, 1], seed=1))
    print(d, len(P.relations))
