"""Intersections of localizations R_{m_1} cap ... cap R_{m_s}.

A :class:`PresentedRing` is K[x]/I with a grading and marker elements
m_1..m_s.  :func:`intersect_localizations` enlarges it by fractions
f/m_1^n until V(m_1..m_s) has codimension at least two, at which point
the ring equals the intersection of the localizations (for a normal
domain).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, replace
from dataclasses import field as dc_field

from .graded import (
    DegreeVector,
    GradingMatrix,
    adjoined_degree,
    degree_of,
    is_homogeneous,
    positive_weights,
)
from .ideals.ideal import (
    Ideal,
    eliminate,
    ideal_intersection,
    krull_dimension,
    minimal_homogeneous_generators,
    saturation,
)
from .polys.orders import MonomialOrder
from .polys.ring import Polynomial, PolyRing

log = logging.getLogger(__name__)

MAX_ROUNDS = 16
N_CAP = 64


class LocalizeError(Exception):
    pass


class PreconditionError(LocalizeError):
    pass


class SingleMarkerError(LocalizeError):
    def __init__(self, marker):
        super().__init__(
            f"only one marker ({marker}): the intersection is the localization at it, "
            "which has no presentation as a quotient of the same kind"
        )


class NCapExceededError(LocalizeError):
    pass


class RoundBudgetExhausted(LocalizeError):
    """The loop did not certify within ``max_rounds``; carries the partial result."""

    def __init__(self, partial, certificate):
        self.partial = partial
        self.certificate = certificate
        super().__init__(f"no certificate after {certificate.rounds} rounds (result not certified)")


@dataclass(frozen=True)
class Adjunction:
    name: str
    n: int
    numerator: Polynomial  # in the ring before this adjunction
    denominator: Polynomial  # m_1^n
    degree: DegreeVector
    round: int
    expanded: tuple = ()  # (numerator, denominator) over the variables never adjoined


@dataclass
class Certificate:
    kind: str  # "codim2-stop" or "cr2"
    passed: bool
    dims: dict = dc_field(default_factory=dict)
    codims: dict = dc_field(default_factory=dict)
    field: str = ""
    seed: int | None = None
    rounds: int = 0
    failures: list = dc_field(default_factory=list)
    notes: list = dc_field(default_factory=list)

    def format(self) -> str:
        lines = [f"kind: {self.kind}", f"status: {'certified' if self.passed else 'NOT certified'}"]
        lines.append(f"field: {self.field}")
        if self.seed is not None:
            lines.append(f"seed: {self.seed}")
        if self.kind == "codim2-stop":
            lines.append(f"rounds: {self.rounds}")
        for k, v in self.dims.items():
            lines.append(f"dim {k}: {v}")
        for k, v in self.codims.items():
            lines.append(f"codim {k}: {v}")
        for msg in self.failures:
            lines.append(f"failed: {msg}")
        for msg in self.notes:
            lines.append(f"note: {msg}")
        return "\n".join(lines)


class PresentedRing:
    """K[x]/I with a grading, marker elements and the adjunction history."""

    def __init__(self, ring: PolyRing, ideal, grading: GradingMatrix, markers, history=(), pruned=()):
        self.ring = ring
        gens = ideal.gens if isinstance(ideal, Ideal) else tuple(ring(g) for g in ideal)
        self.grading = grading.with_names(ring.names)
        self.weights = positive_weights(self.grading)
        if isinstance(ideal, Ideal) and ideal.ring == ring and self.weights is None:
            self.ideal = ideal
        elif isinstance(ideal, Ideal) and ideal.ring == ring and ideal._weights == self.weights:
            self.ideal = ideal
        elif self.weights is not None:
            self.ideal = Ideal(ring, gens, self.weights)
        else:
            self.ideal = Ideal(ring, gens)
        self.markers = tuple(ring(m) for m in markers)
        self.history = tuple(history)
        self.pruned = tuple(pruned)
        for m in self.markers:
            if m.is_zero():
                raise PreconditionError("markers must be nonzero")
            degree_of(m, self.grading)
        for g in self.ideal.gens:
            degree_of(g, self.grading)

    @classmethod
    def hypersurface(cls, ambient, f: Polynomial, markers=None) -> PresentedRing:
        markers = ambient.markers() if markers is None else markers
        return cls(ambient.ring, [f], ambient.grading, markers)

    def __repr__(self):
        return f"PresentedRing({self.ring}, {len(self.ideal.gens)} relations, {len(self.markers)} markers)"

    @property
    def adjoined(self) -> tuple:
        return tuple(a.name for a in self.history)

    def embed(self, f: Polynomial) -> Polynomial:
        return f.to_ring(self.ring)

    def dimension(self) -> int:
        return krull_dimension(self.ideal).krull_dim

    def relations(self) -> tuple:
        return self.ideal.gens

    def minimal_relations(self) -> list:
        return minimal_homogeneous_generators(self.ideal, self.grading)

    def pivot_index(self, pivot) -> int:
        if pivot is None:
            return 0
        if isinstance(pivot, int):
            if not 0 <= pivot < len(self.markers):
                raise PreconditionError(f"pivot index {pivot} out of range")
            return pivot
        p = self.ring(pivot)
        for i, m in enumerate(self.markers):
            if m == p:
                return i
        raise PreconditionError(f"pivot {pivot} is not one of the markers")

    def eliminate_variables(self, names) -> PresentedRing:
        """Drop variables that are polynomial in the others (via elimination).

        Markers involving a dropped variable are discarded.
        """
        sub_ideal = eliminate(self.ideal, names)
        keep = [i for i, nm in enumerate(self.ring.names) if nm not in set(names)]
        sub = sub_ideal.ring
        markers = []
        for m in self.markers:
            if not any(self.ring.names[i] in names for i in m.variables()):
                markers.append(m.to_ring(sub))
        gens = minimal_homogeneous_generators(sub_ideal, self.grading.restrict(keep))
        return PresentedRing(sub, gens, self.grading.restrict(keep), markers, self.history, self.pruned)


# -- single-step operations ----------------------------------------------------


def _dims(R: PresentedRing, extra) -> tuple:
    d0 = krull_dimension(R.ideal).krull_dim
    J = R.ideal + list(extra)
    d1 = krull_dimension(J).krull_dim
    return d0, d1


def codim_of_markers(R: PresentedRing, dims: dict | None = None) -> int:
    """dim(I) - dim(I + <markers>); the unit ideal counts as arity + 1."""
    if not R.markers:
        raise PreconditionError("no markers")
    d0, d1 = _dims(R, R.markers)
    if dims is not None:
        dims["presentation"] = d0
        dims["presentation + markers"] = d1
    if d1 < 0:
        return R.ring.nvars + 1
    return d0 - d1


def saturation_intersection(R: PresentedRing, pivot, n: int) -> Ideal:
    """I_n(R): the numerators f with f/m_1^n in every R_{m_i}, i != pivot."""
    if n < 1:
        raise ValueError("n must be at least 1")
    if len(R.markers) < 2:
        raise SingleMarkerError(R.markers[0] if R.markers else None)
    p = R.pivot_index(pivot)
    m1 = R.markers[p]
    base = Ideal(R.ring, R.ideal.gens + (m1**n,), R.ideal._weights)
    out = None
    for i, m in enumerate(R.markers):
        if i == p:
            continue
        sat, _ = saturation(base, m, "auto", exponent=False)
        out = sat if out is None else ideal_intersection(out, sat)
    return out


def new_fraction_numerators(R: PresentedRing, pivot, n: int, In: Ideal | None = None) -> list:
    """B_n: minimal generators of I_n(R) that are not in I + <m_1^n>."""
    p = R.pivot_index(pivot)
    In = In if In is not None else saturation_intersection(R, p, n)
    base = R.ideal.gens + (R.markers[p] ** n,)
    return minimal_homogeneous_generators(In, R.grading, modulo=base)


def _next_name(ring: PolyRing, prefix: str = "S") -> str:
    k = 1
    while f"{prefix}{k}" in ring.index:
        k += 1
    return f"{prefix}{k}"


def adjoin_fraction(R: PresentedRing, f: Polynomial, pivot, n: int, check: bool = True,
                    name: str | None = None, round_no: int = 0) -> PresentedRing:
    """R[S]/(<S m_1^n - f> : m_1^infinity), with S = f/m_1^n."""
    p = R.pivot_index(pivot)
    m1 = R.markers[p]
    f = R.ring(f)
    if check:
        base = R.ideal + [m1**n]
        if base.contains(f):
            raise PreconditionError(f"{f} lies in <m_1^{n}> already; the fraction is not new")
        if len(R.markers) >= 2:
            In = saturation_intersection(R, p, n)
            if not In.contains(f):
                raise PreconditionError(f"{f}/m_1^{n} is not in every localization")
    deg_s = adjoined_degree(degree_of(f, R.grading), n, degree_of(m1, R.grading))
    name = name or _next_name(R.ring)
    ring = R.ring.extend([name])
    grading = R.grading.extend([deg_s], [name])
    s = ring.gen(name)
    m1e = m1.to_ring(ring)
    gens = [g.to_ring(ring) for g in R.ideal.gens] + [s * m1e**n - f.to_ring(ring)]
    w = positive_weights(grading)
    J = Ideal(ring, gens, w)
    sat, _ = saturation(J, m1e, "bayer" if w is not None and m1e.is_monomial() else "rabinowitsch",
                        exponent=False)
    rels = minimal_homogeneous_generators(sat, grading)
    expanded = _expand(R, f, m1**n)
    hist = R.history + (Adjunction(name, n, f, m1**n, deg_s, round_no, expanded),)
    return PresentedRing(ring, Ideal(ring, rels, w), grading, [m.to_ring(ring) for m in R.markers], hist, R.pruned)


# -- the main loop -----------------------------------------------------------------


def intersect_localizations(R: PresentedRing, pivot=None, max_rounds: int = MAX_ROUNDS,
                            n_cap: int = N_CAP, prune: bool = True, seed: int | None = None):
    """Algorithm: adjoin fractions f/m_1^n until the markers cut codimension >= 2.

    Returns (presentation, certificate).  Elements of each B_n are adjoined
    one at a time in ascending degree; an element whose fraction already
    lies in the enlarged ring is skipped.
    """
    if len(R.markers) < 2:
        raise SingleMarkerError(R.markers[0] if R.markers else None)
    if max_rounds < 1:
        raise ValueError("max_rounds must be at least 1")
    p = R.pivot_index(pivot)
    rounds = 0
    dims: dict = {}
    dim0 = R.dimension()
    codim = codim_of_markers(R, dims)
    notes = []
    while codim < 2:
        if rounds >= max_rounds:
            cert = Certificate("codim2-stop", False, dict(dims), {"markers": codim},
                               R.ring.field.name, seed, rounds, ["round budget exhausted"])
            raise RoundBudgetExhausted(R, cert)
        for n in range(1, n_cap + 1):
            B = new_fraction_numerators(R, p, n)
            if B:
                break
        else:
            raise NCapExceededError(f"no new numerator for n <= {n_cap}")
        rounds += 1
        log.info("round %d: n=%d, %d candidate numerators", rounds, n, len(B))
        for f in B:
            fe = R.embed(f)
            if (R.ideal + [R.markers[p] ** n]).contains(fe):
                notes.append(f"round {rounds}: skipped a numerator already covered by earlier adjunctions")
                continue
            R = adjoin_fraction(R, fe, p, n, check=False, round_no=rounds)
        dims = {}
        codim = codim_of_markers(R, dims)
    if prune and R.history:
        R2 = prune_redundant(R)
        if R2 is not R:
            notes.append(f"pruned redundant generators: {', '.join(R2.pruned)}")
            R = R2
            dims = {}
            codim = codim_of_markers(R, dims)
    dims["initial"] = dim0
    cert = Certificate("codim2-stop", codim >= 2 and dims["presentation"] == dim0, dims,
                       {"markers": codim}, R.ring.field.name, seed, rounds, [], notes)
    if dims["presentation"] != dim0:
        cert.failures.append(f"dimension changed from {dim0} to {dims['presentation']}")
    return R, cert


def prune_redundant(R: PresentedRing) -> PresentedRing:
    """Remove adjoined variables that are polynomials in the remaining ones."""
    changed = True
    cur = R
    dropped = list(R.pruned)
    while changed:
        changed = False
        for adj in reversed(cur.history):
            v = cur.ring.index[adj.name]
            order = MonomialOrder.block(cur.ring.nvars, [v], weights=cur.weights)
            gb = cur.ideal.groebner_basis(order)
            target = tuple(1 if i == v else 0 for i in range(cur.ring.nvars))
            if any(g.leading_monomial(order) == target for g in gb.polys):
                nxt = cur.eliminate_variables([adj.name])
                hist = tuple(a for a in cur.history if a.name != adj.name)
                dropped.append(adj.name)
                cur = PresentedRing(nxt.ring, nxt.ideal, nxt.grading, nxt.markers, hist, dropped)
                changed = True
                break
    if cur is R:
        return R
    return renumber(cur)


def renumber(R: PresentedRing, prefix: str = "S") -> PresentedRing:
    """Rename adjoined variables to S1, S2, ... in adjunction order."""
    mapping = {adj.name: f"{prefix}{k}" for k, adj in enumerate(R.history, start=1)}
    if all(a == b for a, b in mapping.items()):
        return R
    names = [mapping.get(nm, nm) for nm in R.ring.names]
    ring = PolyRing(names, R.ring.field)
    gens = [g.to_ring(ring, mapping) for g in R.ideal.gens]
    hist = []
    for a in R.history:
        src = a.numerator.ring
        sub = PolyRing([mapping.get(nm, nm) for nm in src.names], src.field)
        hist.append(replace(a, name=mapping[a.name], numerator=a.numerator.to_ring(sub, mapping)))
    return PresentedRing(ring, gens, R.grading, [m.to_ring(ring) for m in R.markers], hist, R.pruned)


# -- fractions as elements of Frac(R_base) ----------------------------------------------


def _substitute_fractions(h: Polynomial, base: PolyRing, fracs: dict) -> tuple:
    """Clear denominators in h(T, S=N/D): returns (numerator, denominator) in ``base``.

    ``fracs`` maps S-variable names to (N, D) pairs of base-ring polynomials.
    """
    ring = h.ring
    s_idx = [i for i, nm in enumerate(ring.names) if nm in fracs]
    t_names = [nm for nm in ring.names if nm not in fracs]
    top = {i: max((e[i] for e in h.as_dict()), default=0) for i in s_idx}
    den = base.one
    for i in s_idx:
        den = den * fracs[ring.names[i]][1] ** top[i]
    num = base.zero
    cache: dict = {}

    def pw(i, which, k):
        key = (i, which, k)
        if key not in cache:
            cache[key] = fracs[ring.names[i]][which] ** k
        return cache[key]

    t_pos = [base.index[nm] for nm in t_names]
    t_src = [ring.index[nm] for nm in t_names]
    for e, c in h.as_dict().items():
        mono = [0] * base.nvars
        for src, dst in zip(t_src, t_pos):
            mono[dst] = e[src]
        term = base.monomial(mono, c)
        for i in s_idx:
            if e[i]:
                term = term * pw(i, 0, e[i])
            if top[i] - e[i]:
                term = term * pw(i, 1, top[i] - e[i])
        num = num + term
    return num, den


def base_ring(R: PresentedRing) -> PolyRing:
    """The ring of the variables that were never adjoined."""
    adj = set(R.adjoined) | set(R.pruned)
    return PolyRing([nm for nm in R.ring.names if nm not in adj], R.ring.field)


def _expand(R: PresentedRing, num: Polynomial, den: Polynomial) -> tuple:
    base = base_ring(R)
    known = {a.name: a.expanded for a in R.history}
    if known:
        n_, d_ = _substitute_fractions(num, base, known)
    else:
        n_, d_ = num.to_ring(base), base.one
    return n_, den.to_ring(base) * d_


def expand_history(R: PresentedRing) -> list:
    """Each adjoined variable as (name, numerator, denominator) over the base ring."""
    return [(a.name, a.expanded[0], a.expanded[1]) for a in R.history]


def _normalize_fractions(base: PresentedRing, fractions) -> list:
    out = []
    for k, fr in enumerate(fractions, start=1):
        fr = tuple(fr)
        if len(fr) == 3 and isinstance(fr[2], int):
            f, m, n = fr
            name, u = f"S{k}", base.ring(m) ** n
        elif len(fr) == 3:
            name, f, u = fr
        elif len(fr) == 2:
            (f, u), name = fr, f"S{k}"
        else:
            raise ValueError(f"cannot read fraction {fr!r}")
        out.append((name, base.ring(f), base.ring(u)))
    return out


def cr2_certificate(base: PresentedRing, fractions, relations=None, check_membership: bool = True,
                    seed: int | None = None) -> Certificate:
    """Check the two dimension conditions for R'' = R[S]/(<u_j S_j - f_j> + relations).

    ``fractions`` holds (f, m, n) triples (S = f/m^n), (f, u) pairs or
    (name, f, u) triples over the base ring.  When dim R'' = dim R and the
    markers cut codimension >= 2 in R'', the subring generated by the
    fractions is the intersection of the localizations.  ``relations`` are
    extra polynomials in T and S; each is verified to vanish after
    substituting S_j = f_j/u_j, so R'' still surjects onto that subring.
    """
    fails = []
    notes = []
    fractions = _normalize_fractions(base, fractions)
    names = [nm for nm, _, _ in fractions]
    ring = base.ring.extend(names) if names else base.ring
    fracs = {nm: (f, u) for nm, f, u in fractions}
    degs = [degree_of(f, base.grading) - degree_of(u, base.grading) for _, f, u in fractions]
    grading = base.grading.extend(degs, names) if names else base.grading
    gens = [g.to_ring(ring) for g in base.ideal.gens]
    for nm, (f, u) in fracs.items():
        gens.append(ring.gen(nm) * u.to_ring(ring) - f.to_ring(ring))
    extra = [h.to_ring(ring) if isinstance(h, Polynomial) else ring(h) for h in (relations or [])]
    if check_membership:
        I = base.ideal
        for h in extra:
            num, _ = _substitute_fractions(h, base.ring, fracs)
            if not I.contains(num):
                fails.append(f"relation {h} does not vanish on the fractions")
        for nm, (f, u) in fracs.items():
            J = I + [u]
            for m in base.markers:
                if not J.saturate(m).contains(f):
                    fails.append(f"{nm} = ({f})/({u}) is not in the localization at {m}")
    w = positive_weights(grading)
    Rpp = Ideal(ring, gens + extra, w) if w is not None else Ideal(ring, gens + extra)
    if not is_homogeneous(Rpp.gens, grading):
        notes.append("R'' is not homogeneous for the extended grading")
    d_base = krull_dimension(base.ideal).krull_dim
    d_pp = krull_dimension(Rpp).krull_dim
    markers = [m.to_ring(ring) for m in base.markers]
    d_mk = krull_dimension(Rpp + markers).krull_dim
    codim = ring.nvars + 1 if d_mk < 0 else d_pp - d_mk
    dims = {"base": d_base, "R''": d_pp, "R'' + markers": d_mk}
    if d_pp != d_base:
        fails.append(f"dimension condition: dim R'' = {d_pp} but dim R = {d_base}")
    if codim < 2:
        fails.append(f"codimension condition: markers cut codimension {codim} in R''")
    return Certificate("cr2", not fails, dims, {"markers in R''": codim}, base.ring.field.name,
                       seed, 0, fails, notes)


def certify_run(base: PresentedRing, final: PresentedRing, seed: int | None = None) -> Certificate:
    """cr2 check of a finished run: its fractions with the final relations as extras."""
    fracs = expand_history(final)
    return cr2_certificate(base, fracs, relations=final.ideal.gens, seed=seed)


def verify_presentation(R: PresentedRing, base: PresentedRing | None = None) -> Certificate:
    """Both dimension conditions for R as given (no fractions needed).

    Without ``base`` only the codimension condition is checked.
    """
    dims: dict = {}
    codim = codim_of_markers(R, dims)
    fails = []
    if base is not None:
        dims["base"] = base.dimension()
        if dims["presentation"] != dims["base"]:
            fails.append(f"dimension condition: dim = {dims['presentation']} but dim of the base = {dims['base']}")
    if codim < 2:
        fails.append(f"codimension condition: markers cut codimension {codim}")
    return Certificate("cr2", not fails, dims, {"markers": codim}, R.ring.field.name, None, 0, fails)
