"""Closed-form Cox ring presentations of hypersurfaces.

For a toric ambient whose irrelevant ideal has exactly one codimension-2
component V(Ta, Tb) and a general ample f of multiplicity d along it,
the Cox ring of V(f) is K[T, S_1..S_d] modulo the d+1 relations

    f_0 + Ta S_1,  f_i + Tb S_i + Ta S_{i+1},  f_d + Tb S_d

where f = sum_i (-1)^i f_i Ta^i Tb^(d-i).  This module builds that
presentation, checks its hypotheses, and covers the rank-two tables
derived from it.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graded import DegreeVector, GradingMatrix, degree_of, parse_degree
from .ideals.ideal import Ideal, krull_dimension, saturation
from .localize import Certificate, PresentedRing, adjoin_fraction, cr2_certificate
from .polys.ring import Polynomial, PolyRing
from .toric import InvalidParamsError, Rank2Params, ToricAmbient, irrelevant_from_ample, is_fano, rank2_smooth


class HypothesisError(ValueError):
    """A hypothesis of the closed-form presentation does not hold."""


class NonUniqueComponentError(HypothesisError):
    pass


class CodimensionHypothesisError(HypothesisError):
    def __init__(self, actual: int, required: int):
        self.actual = actual
        self.required = required
        super().__init__(
            f"V(Ta, Tb, f_0..f_d) has codimension {actual}, the hypothesis needs {required}"
        )


class MultiplicityZeroError(HypothesisError):
    pass


class DimensionScopeError(HypothesisError):
    pass


class NotAmpleError(HypothesisError):
    pass


class NotFanoError(HypothesisError):
    pass


class UnsupportedShapeError(HypothesisError):
    pass


class ConditionsViolatedError(HypothesisError):
    pass


# -- splitting f along the pair ------------------------------------------------


@dataclass(frozen=True)
class MultiplicitySplit:
    d: int
    parts: tuple  # f_0..f_d
    pair: tuple  # (Ta, Tb) variable names

    def reconstruct(self) -> Polynomial:
        ring = self.parts[0].ring
        ta, tb = (ring.gen(v) for v in self.pair)
        out = ring.zero
        for i, fi in enumerate(self.parts):
            out = out + (-1) ** i * fi * ta**i * tb ** (self.d - i)
        return out

    def degenerate_parts(self) -> list:
        """Indices i with f_i = 0 or with f_i divisible by Ta for i < d."""
        ring = self.parts[0].ring
        a = ring.index[self.pair[0]]
        bad = []
        for i, fi in enumerate(self.parts):
            if fi.is_zero() or (i < self.d and all(e[a] > 0 for e in fi.as_dict())):
                bad.append(i)
        return bad


def split_multiplicity(f: Polynomial, Ta, Tb) -> MultiplicitySplit:
    """Write f = sum (-1)^i f_i Ta^i Tb^(d-i) with d the multiplicity along <Ta, Tb>.

    A term Ta^alpha Tb^beta m goes to bucket i = min(alpha, d), so f_i is
    free of Ta for i < d.
    """
    ring = f.ring
    a, b = ring.var_index(Ta), ring.var_index(Tb)
    if a == b:
        raise ValueError("Ta and Tb must be different variables")
    if f.is_zero():
        raise MultiplicityZeroError("the zero polynomial has no multiplicity")
    d = min(e[a] + e[b] for e in f.as_dict())
    if d == 0:
        raise MultiplicityZeroError(f"f is not in <{ring.names[a]}, {ring.names[b]}>")
    buckets = [dict() for _ in range(d + 1)]
    for e, c in f.as_dict().items():
        i = min(e[a], d)
        q = list(e)
        q[a] -= i
        q[b] -= d - i
        buckets[i][tuple(q)] = c if i % 2 == 0 else -c
    parts = tuple(ring.from_terms(bk.items()) for bk in buckets)
    return MultiplicitySplit(d, parts, (ring.names[a], ring.names[b]))


# -- the presentation --------------------------------------------------------------


@dataclass
class CoxPresentation:
    ring: PolyRing
    relations: list
    grading: GradingMatrix
    certificate: Certificate | None
    split: MultiplicitySplit | None = None
    ambient: ToricAmbient | None = None
    hypothesis_codim: int | None = None
    fractions: tuple = ()  # (name, numerator, denominator) over the ambient ring

    @property
    def d(self) -> int:
        return 0 if self.split is None else self.split.d

    @property
    def markers(self) -> list:
        if self.split is None:
            return []
        return [self.ring.gen(v) for v in self.split.pair]

    def ideal(self) -> Ideal:
        return self.presented().ideal

    def presented(self) -> PresentedRing:
        return PresentedRing(self.ring, self.relations, self.grading, self.markers or [self.ring.one])

    def dimension(self) -> int:
        return krull_dimension(self.ideal()).krull_dim

    def marker_codim(self) -> int:
        I = self.ideal()
        d0 = krull_dimension(I).krull_dim
        d1 = krull_dimension(I + self.markers).krull_dim
        return self.ring.nvars + 1 if d1 < 0 else d0 - d1

    def is_saturated(self) -> bool:
        """I : (Ta Tb)^infinity == I."""
        if self.split is None:
            return True
        I = self.ideal()
        ta, tb = self.markers
        sat, _ = saturation(I, ta * tb, exponent=False)
        return sat.issubset(I)

    def s_degrees(self) -> list:
        names = self.ring.names[len(self.ring.names) - self.d:] if self.d else ()
        return [self.grading.column(nm) for nm in names]


def _s_degree(deg_f, deg_a, deg_b, d: int, i: int) -> DegreeVector:
    return DegreeVector(deg_f) - (d - i + 1) * DegreeVector(deg_b) - i * DegreeVector(deg_a)


def theorem_b_fractions(split: MultiplicitySplit) -> list:
    """S_j as (name, numerator, denominator) with denominator Ta^j.

    S_1 = -f_0/Ta and S_{j+1} = -(f_j + Tb S_j)/Ta.
    """
    ring = split.parts[0].ring
    ta, tb = (ring.gen(v) for v in split.pair)
    out = []
    num = -split.parts[0]
    for j in range(1, split.d + 1):
        out.append((f"S{j}", num, ta**j))
        if j < split.d:
            num = -(split.parts[j] * ta**j + tb * num)
    return out


def _pair_of(Z: ToricAmbient, pair=None) -> tuple:
    if pair is not None:
        return tuple(Z.ring.names[Z.ring.var_index(v)] for v in pair)
    comps = Z.codim2_components()
    if len(comps) != 1:
        found = ", ".join("<" + ",".join(c) + ">" for c in comps) or "none"
        raise NonUniqueComponentError(
            f"the irrelevant ideal needs exactly one codimension-2 component, found {len(comps)}: {found}"
        )
    tb, ta = comps[0]
    return ta, tb


def _check_ample(Z: ToricAmbient, deg) -> None:
    gens = set()
    for idx in irrelevant_from_ample(Z.grading, deg):
        gens.add(tuple(1 if j in idx else 0 for j in range(Z.ring.nvars)))
    mine = {m.leading_monomial() for m in Z.irrelevant}
    # the ample cones give the maximal-cone complements; compare minimal elements
    def minimal(s):
        return {e for e in s if not any(o != e and all(x <= y for x, y in zip(o, e)) for o in s)}

    if not gens or minimal(gens) != minimal(mine):
        raise NotAmpleError(f"degree {deg} is not ample on the ambient")


def theoremB_presentation(Z: ToricAmbient, f: Polynomial, dim3_ok: bool = False, pair=None,
                          check_ample: bool = True, certify: bool = True,
                          seed: int | None = None) -> CoxPresentation:
    """Closed-form presentation of the Cox ring of V(f), with its checks.

    Raises NonUniqueComponentError, InhomogeneousError,
    CodimensionHypothesisError (with the actual codimension),
    DimensionScopeError (dim Z < 4 without ``dim3_ok``) or NotAmpleError.
    """
    ta, tb = _pair_of(Z, pair)
    f = Z.ring(f)
    deg = degree_of(f, Z.grading)
    if Z.dim < 4 and not dim3_ok:
        raise DimensionScopeError(f"the ambient has dimension {Z.dim}; pass dim3_ok to reuse the construction")
    if check_ample:
        _check_ample(Z, deg)
    split = split_multiplicity(f, ta, tb)
    d = split.d
    base = Z.ring
    hyp = Ideal(base, [base.gen(ta), base.gen(tb)] + [p for p in split.parts if p])
    codim = base.nvars - krull_dimension(hyp).krull_dim
    if codim < d + 3:
        raise CodimensionHypothesisError(codim, d + 3)

    names = [f"S{j}" for j in range(1, d + 1)]
    ring = base.extend(names)
    A, B = ring.gen(ta), ring.gen(tb)
    S = [ring.gen(nm) for nm in names]
    parts = [p.to_ring(ring) for p in split.parts]
    rels = [parts[0] + A * S[0]]
    for i in range(1, d):
        rels.append(parts[i] + B * S[i - 1] + A * S[i])
    rels.append(parts[d] + B * S[d - 1])
    deg_a, deg_b = Z.grading.column(ta), Z.grading.column(tb)
    sdeg = [_s_degree(deg, deg_a, deg_b, d, i) for i in range(1, d + 1)]
    grading = Z.grading.extend(sdeg, names)
    for r in rels:
        degree_of(r, grading)  # homogeneous by construction
    fracs = tuple(theorem_b_fractions(split))
    cert = None
    if certify:
        R = PresentedRing(base, [f], Z.grading, [base.gen(ta), base.gen(tb)])
        cert = cr2_certificate(R, fracs, relations=rels, seed=seed)
        cert.codims[f"V({ta},{tb},f_0..f_{d}) in affine space"] = codim
    return CoxPresentation(ring, rels, grading, cert, split, Z, codim, fracs)


def presentation_by_adjunction(pres: CoxPresentation) -> PresentedRing:
    """Adjoin the closed-form fractions one at a time with saturation."""
    Z, split = pres.ambient, pres.split
    ta, tb = split.pair
    R = PresentedRing(Z.ring, [split.reconstruct()], Z.grading, [Z.ring.gen(ta), Z.ring.gen(tb)])
    for j in range(split.d):
        A, B = R.ring.gen(ta), R.ring.gen(tb)
        num = -split.parts[j].to_ring(R.ring)
        if j > 0:
            num = num - B * R.ring.gen(f"S{j}")
        R = adjoin_fraction(R, num, 0, 1, check=False, name=f"S{j + 1}")
    return R


# -- rank two ---------------------------------------------------------------------


@dataclass(frozen=True)
class CaseResult:
    kind: str  # "case1", "case2" or "not-applicable"
    d: int | None = None
    reason: str = ""

    @property
    def applies(self) -> bool:
        return self.kind != "not-applicable"


def corollaryC_case(p: Rank2Params, deg) -> CaseResult:
    """Which rank-two case (if any) guarantees the closed form for degree ``deg``."""
    a, b = parse_degree(deg)
    reasons = []
    if p.n < 4:
        reasons.append(f"n >= 4 fails (n = {p.n})")
    if p.k == p.n - 1:
        m = sum(1 for x in p.a if x == 0)
        if not 0 < a:
            reasons.append(f"0 < a fails (a = {a})")
        elif a > m:
            reasons.append(f"a <= max{{k : a_k = 0}} = {m} fails (a = {a})")
        elif not b > 0:
            reasons.append(f"b > 0 fails (b = {b})")
        elif p.n >= 4:
            return CaseResult("case1", a)
    if p.k == 1:
        if not a > 0:
            reasons.append(f"a > 0 fails (a = {a})")
        elif not 0 < b <= p.n - 1:
            reasons.append(f"0 < b <= n-1 = {p.n - 1} fails (b = {b})")
        elif p.n >= 4:
            return CaseResult("case2", b)
    if p.k not in (1, p.n - 1):
        reasons.append(f"k must be 1 or n-1 (k = {p.k}): no codimension-2 irrelevant component")
    return CaseResult("not-applicable", None, "; ".join(reasons))


def anticanonical_degree(p: Rank2Params) -> DegreeVector:
    return DegreeVector((p.first_block - sum(p.a), p.k + 1))


def anticanonical_presentation(p: Rank2Params, seed: int, field=None) -> tuple:
    """(row, CoxPresentation) for a general anticanonical hypersurface.

    ``row`` is "hypersurface-CI" (2 <= k <= n-2), "d1-table" or "d2-table".
    """
    if not is_fano(p):
        raise NotFanoError(f"sum a_i = {sum(p.a)} is not < n-k+1 = {p.first_block}: not Fano")
    if p.n < 4:
        raise UnsupportedShapeError("the anticanonical table needs n >= 4")
    Z = rank2_smooth(p, field)
    deg = anticanonical_degree(p)
    f = Z.random_general_polynomial(deg, seed)
    if 2 <= p.k <= p.n - 2:
        return "hypersurface-CI", CoxPresentation(Z.ring, [f], Z.grading, None, None, Z)
    pres = theoremB_presentation(Z, f, seed=seed)
    row = {1: "d1-table", 2: "d2-table"}.get(pres.d)
    if row is None:
        raise UnsupportedShapeError(f"unexpected multiplicity {pres.d}")
    return row, pres


def rank2_surface_presentation(p: Rank2Params, deg, seed: int, field=None) -> CoxPresentation:
    """Very general ample surfaces in a rank-two toric threefold (n = 3)."""
    if p.n != 3:
        raise InvalidParamsError("surfaces need n = 3")
    a, b = parse_degree(deg)
    if p.k == 2:
        if p.a[0] != 0:
            raise ConditionsViolatedError(f"a_1 = 0 fails (a_1 = {p.a[0]})")
        if p.a[1] <= 0:
            raise ConditionsViolatedError(f"a_2 > 0 fails (a_2 = {p.a[1]})")
        if a != 1:
            raise ConditionsViolatedError(f"deg f = [1,b] fails (first entry {a})")
        if b - 3 < 0:
            raise ConditionsViolatedError(f"b-3>=0 fails (b = {b})")
    else:
        a1 = p.a[0]
        if b != 2:
            raise ConditionsViolatedError(f"deg f = [a,2] fails (second entry {b})")
        if a < max(1, 3 - a1):
            raise ConditionsViolatedError(f"a >= max{{1,3-a_1}} = {max(1, 3 - a1)} fails (a = {a})")
    Z = rank2_smooth(p, field)
    f = Z.random_general_polynomial((a, b), seed)
    return theoremB_presentation(Z, f, dim3_ok=True, seed=seed)


def scroll_type(n: int, d: int) -> tuple:
    """(zeros, ones) of the scroll S(0..0, 1..1) cut out by degree [d,1] in P^1 x P^(n-1).

    ones = 0 encodes P^1 x P^(n-2).
    """
    if n < 3 or d < 1:
        raise InvalidParamsError("scroll_type needs n >= 3 and d >= 1")
    a = d % (n - 1)
    return n - a - 1, a
