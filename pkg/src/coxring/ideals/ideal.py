"""Ideals of polynomial rings and the operations built on Groebner bases."""

from __future__ import annotations

import threading
from dataclasses import dataclass

from ..graded import (
    GradingMatrix,
    InhomogeneousError,
    degree_of,
    homogenizing_weights,
    positive_weights,
)
from ..polys.orders import MonomialOrder
from ..polys.ring import Polynomial, PolyRing, RingMismatchError, exact_divide
from .groebner import Engine


class OrderMismatchError(ValueError):
    pass


class ZeroDivisorInputError(ValueError):
    """Quotient or saturation by the zero polynomial."""


class NonSquarefreeError(ValueError):
    pass


_UNSET = object()


class GroebnerBasis:
    """A reduced Groebner basis together with its order."""

    def __init__(self, engine: Engine, elems: list):
        self._engine = engine
        self._elems = elems
        self.order = engine.order
        self.ring = engine.ring
        self.polys = tuple(engine.elem_poly(e) for e in elems)

    def __iter__(self):
        return iter(self.polys)

    def __len__(self):
        return len(self.polys)

    def __getitem__(self, i):
        return self.polys[i]

    def is_unit(self) -> bool:
        return len(self._elems) == 1 and self._elems[0].lmk == self._engine.packer.one

    def leading_monomials(self) -> list:
        return [e.lme for e in self._elems]

    def normal_form(self, f: Polynomial) -> Polynomial:
        if f.ring != self.ring:
            raise RingMismatchError(f"{f.ring} vs {self.ring}")
        eng = self._engine
        return eng.unpack(eng.reduce(eng.pack(f), self._elems))

    def reduces_to_zero(self, f: Polynomial) -> bool:
        if f.is_zero():
            return True
        eng = self._engine
        return not eng.reduce(eng.pack(f), self._elems)

    def __str__(self):
        return "[" + ", ".join(str(g) for g in self.polys) + "]"


def normal_form(f: Polynomial, G: GroebnerBasis, order: MonomialOrder | None = None) -> Polynomial:
    if order is not None and order != G.order:
        raise OrderMismatchError(f"basis was computed for {G.order}, not {order}")
    return G.normal_form(f)


class Ideal:
    """A finitely generated ideal; Groebner bases are cached per order.

    ``weights`` optionally records positive integer weights under which
    the generators are homogeneous; it steers pair selection and enables
    the faster saturation method.
    """

    def __init__(self, ring: PolyRing, gens=(), weights=_UNSET):
        self.ring = ring
        self.gens = tuple(g for g in (ring(x) for x in gens) if g)
        self._gb: dict = {}
        self._lock = threading.Lock()
        self._weights = weights

    def __repr__(self):
        return f"Ideal({self.ring}, [{', '.join(str(g) for g in self.gens)}])"

    __str__ = __repr__

    @property
    def weights(self):
        """Positive weights making the generators homogeneous, or None."""
        if self._weights is _UNSET:
            self._weights = homogenizing_weights(self.gens) if self.gens else (1,) * self.ring.nvars
        return self._weights

    def _derived(self, ring, gens, g=None) -> Ideal:
        """A new ideal in ``ring`` that inherits our weights when ``g`` respects them."""
        weights = _UNSET
        w = self._weights
        if ring == self.ring and w not in (_UNSET, None) and (g is None or _w_homogeneous(g, w)):
            weights = w
        return Ideal(ring, gens, weights)

    # -- Groebner bases -------------------------------------------------------

    def groebner_basis(self, order: MonomialOrder | None = None) -> GroebnerBasis:
        order = order or self.ring.order
        with self._lock:
            gb = self._gb.get(order)
            if gb is None:
                w = self.weights if self._weights is not _UNSET else None
                eng = Engine(self.ring, order, w)
                eng.run(self.gens)
                elems = eng.reduced_basis()
                if not self.gens:
                    elems = []
                gb = GroebnerBasis(eng, elems)
                self._gb[order] = gb
            return gb

    def groebner(self, order=None) -> list:
        return list(self.groebner_basis(order).polys)

    # -- membership and comparison ------------------------------------------------

    @property
    def working_order(self) -> MonomialOrder:
        """Order for order-independent questions: a cached one, else the weight order."""
        if self._gb:
            return next(iter(self._gb))
        w = self.weights
        if w is not None and len(set(w)) > 1:
            return MonomialOrder.weight(w)
        return self.ring.order

    def contains(self, f) -> bool:
        return self.groebner_basis(self.working_order).reduces_to_zero(self.ring(f))

    __contains__ = contains

    def is_unit(self) -> bool:
        return self.groebner_basis(self.working_order).is_unit()

    def is_zero(self) -> bool:
        return not self.gens

    def issubset(self, other: Ideal) -> bool:
        self._same_ring(other)
        return all(other.contains(g) for g in self.gens)

    def __eq__(self, other):
        if not isinstance(other, Ideal) or other.ring != self.ring:
            return NotImplemented
        return self.groebner(self.ring.order) == other.groebner(self.ring.order)

    def __hash__(self):
        return hash((self.ring, tuple(self.groebner())))

    def _same_ring(self, other):
        if other.ring != self.ring:
            raise RingMismatchError(f"{other.ring} vs {self.ring}")

    def __add__(self, other) -> Ideal:
        if isinstance(other, Ideal):
            self._same_ring(other)
            gens = other.gens
        else:
            gens = [self.ring(g) for g in other]
        w = self._weights
        if w not in (_UNSET, None) and all(_w_homogeneous(g, w) for g in gens):
            return Ideal(self.ring, self.gens + tuple(gens), w)
        return Ideal(self.ring, self.gens + tuple(gens))

    def map_to(self, ring: PolyRing, weights=_UNSET) -> Ideal:
        return Ideal(ring, [g.to_ring(ring) for g in self.gens], weights)

    # -- operations -------------------------------------------------------------

    def quotient(self, g) -> Ideal:
        return ideal_quotient(self, g)

    def saturate(self, g, method: str = "auto") -> Ideal:
        return saturation(self, g, method, exponent=False)[0]

    def intersect(self, other) -> Ideal:
        return ideal_intersection(self, other)

    def eliminate(self, variables) -> Ideal:
        return eliminate(self, variables)

    def dimension(self) -> int:
        return krull_dimension(self).krull_dim


# -- quotient, saturation, intersection, elimination ----------------------------


def _w_homogeneous(f: Polynomial, w) -> bool:
    return len({sum(a * b for a, b in zip(e, w)) for e in f.as_dict()}) <= 1


def _with_t(ring: PolyRing, name: str = "t") -> PolyRing:
    while name in ring.index:
        name = "_" + name
    return ring.extend([name])


def ideal_intersection(I: Ideal, J: Ideal) -> Ideal:
    """I cap J, eliminating t from t*I + (1-t)*J."""
    I._same_ring(J)
    ring = I.ring
    if not I.gens or not J.gens:
        return Ideal(ring, [])
    big = _with_t(ring)
    n = ring.nvars
    t = big.gen(n)
    gens = [t * g.to_ring(big) for g in I.gens] + [(1 - t) * g.to_ring(big) for g in J.gens]
    wI = I.weights
    homog = wI is not None and all(_w_homogeneous(f, wI) for f in J.gens)
    w = (wI if homog else (1,) * n) + ((0,) if homog else (1,))
    order = MonomialOrder.block(n + 1, [n], weights=w)
    gb = Ideal(big, gens, w if homog else None).groebner_basis(order)
    keep = [g.to_ring(ring) for g in gb.polys if g.degree_in(n) <= 0]
    return Ideal(ring, keep, wI if homog else _UNSET)


def ideal_quotient(I: Ideal, g) -> Ideal:
    """I : g, as (I cap <g>) / g."""
    g = I.ring(g)
    if g.is_zero():
        raise ZeroDivisorInputError("quotient by the zero polynomial")
    if g.is_constant():
        return I._derived(I.ring, I.gens)
    gw = I.weights if I.weights is not None and _w_homogeneous(g, I.weights) else _UNSET
    inter = ideal_intersection(I, Ideal(I.ring, [g], gw))
    out = []
    for h in inter.gens:
        q = exact_divide(h, g)
        if q is None:
            raise ArithmeticError("intersection element not divisible by g")
        out.append(q)
    return I._derived(I.ring, out, g)


def _saturate_rabinowitsch(I: Ideal, g: Polynomial) -> Ideal:
    ring = I.ring
    big = _with_t(ring)
    n = ring.nvars
    t = big.gen(n)
    gens = [h.to_ring(big) for h in I.gens] + [1 - t * g.to_ring(big)]
    order = MonomialOrder.block(n + 1, [n])
    gb = Ideal(big, gens, None).groebner_basis(order)
    keep = [h.to_ring(ring) for h in gb.polys if h.degree_in(n) <= 0]
    return I._derived(ring, keep, g)


def _saturate_quotients(I: Ideal, g: Polynomial) -> tuple:
    cur = I
    k = 0
    while True:
        nxt = ideal_quotient(cur, g)
        if nxt.issubset(cur):
            return cur, k
        cur = nxt
        k += 1


def _saturate_bayer(I: Ideal, g: Polynomial, w) -> Ideal:
    """Saturation by a monomial of an ideal homogeneous for positive weights ``w``."""
    (exps, _), = g.terms
    cur = I
    for v, a in enumerate(exps):
        if not a:
            continue
        gb = cur.groebner_basis(MonomialOrder.weight(w, last=v))
        gens = []
        for h in gb.polys:
            k = min(e[v] for e in h.as_dict())
            if k:
                shift = [0] * cur.ring.nvars
                shift[v] = -k
                h = h.mul_monomial(shift)
            gens.append(h)
        cur = Ideal(cur.ring, gens, w)
    return cur


def saturation_exponent(I: Ideal, sat: Ideal, g: Polynomial) -> int:
    """Smallest k with I : g^k equal to ``sat``."""
    gb = I.groebner_basis(I.working_order)
    k = 0
    for h in sat.gens:
        j = 0
        while not gb.reduces_to_zero(h):
            h = h * g
            j += 1
        k = max(k, j)
    return k


def saturation(I: Ideal, g, method: str = "auto", exponent: bool = True) -> tuple:
    """(I : g^infinity, k) with k the stabilisation exponent.

    ``method`` is ``"rabinowitsch"`` (one extra variable), ``"quotient"``
    (iterated colon ideals), ``"bayer"`` (reverse-lex trick; needs a
    monomial g and weighted-homogeneous I) or ``"auto"``.  With
    ``exponent=False`` the exponent is not computed and reported as None
    (except for the quotient method, where it comes for free).
    """
    g = I.ring(g)
    if g.is_zero():
        raise ZeroDivisorInputError("saturation by the zero polynomial")
    if g.is_constant() or not I.gens:
        return I._derived(I.ring, I.gens), 0
    if method == "auto":
        method = "bayer" if g.is_monomial() and I.weights is not None else "rabinowitsch"
    if method == "quotient":
        return _saturate_quotients(I, g)
    if method == "rabinowitsch":
        sat = _saturate_rabinowitsch(I, g)
    elif method == "bayer":
        if not g.is_monomial():
            raise ValueError("the bayer method needs a monomial")
        w = I.weights
        if w is None:
            raise InhomogeneousError("the bayer method needs a weighted-homogeneous ideal")
        sat = _saturate_bayer(I, g, w)
    else:
        raise ValueError(f"unknown saturation method {method!r}")
    return sat, (saturation_exponent(I, sat, g) if exponent else None)


def _var_indices(ring: PolyRing, variables) -> list:
    if isinstance(variables, int):
        if not 0 <= variables < ring.nvars:
            raise ValueError("number of eliminated variables out of range")
        return list(range(variables))
    return sorted({ring.var_index(v) for v in variables})


def eliminate(I: Ideal, variables) -> Ideal:
    """I cap K[remaining variables]; ``variables`` is a count k (first k) or names."""
    ring = I.ring
    drop = _var_indices(ring, variables)
    if len(drop) >= ring.nvars:
        raise ValueError("cannot eliminate every variable")
    keep = [i for i in range(ring.nvars) if i not in drop]
    sub = PolyRing([ring.names[i] for i in keep], ring.field, ring.order.restrict(keep))
    if not drop:
        return Ideal(sub, [g.to_ring(sub) for g in I.gens], I._weights)
    w = I.weights
    order = MonomialOrder.block(ring.nvars, drop, weights=w)
    gb = I.groebner_basis(order)
    dropset = set(drop)
    out = [g.to_ring(sub) for g in gb.polys if not (set(g.variables()) & dropset)]
    sub_w = None if w is None else tuple(w[i] for i in keep)
    return Ideal(sub, out, sub_w)


# -- dimension ---------------------------------------------------------------


@dataclass(frozen=True)
class DimensionReport:
    krull_dim: int
    witness: tuple  # names of a maximal independent set of variables

    def __int__(self):
        return self.krull_dim


def _minimal_edges(edges) -> list:
    edges = sorted(set(edges), key=lambda e: (bin(e).count("1"), e))
    out = []
    for e in edges:
        if not any(f & e == f for f in out):
            out.append(e)
    return out


def min_hitting_set(edges, nvars: int) -> int:
    """A minimum set of vertices meeting every edge (edges and result are bitmasks)."""
    edges = _minimal_edges(edges)
    if not edges:
        return 0
    if 0 in edges:
        raise ValueError("an empty edge cannot be hit")
    best = [(1 << nvars) - 1]

    def search(chosen: int, size: int):
        if size >= bin(best[0]).count("1"):
            return
        unhit = [e for e in edges if not e & chosen]
        if not unhit:
            best[0] = chosen
            return
        # lower bound: disjoint unhit edges need distinct vertices
        used = 0
        lb = 0
        for e in unhit:
            if not e & used:
                used |= e
                lb += 1
        if size + lb >= bin(best[0]).count("1"):
            return
        e = min(unhit, key=lambda x: bin(x).count("1"))
        v = 0
        while e:
            if e & 1:
                search(chosen | (1 << v), size + 1)
            e >>= 1
            v += 1

    search(0, 0)
    return best[0]


def _lm_dimension(ring: PolyRing, monomials) -> DimensionReport:
    edges = []
    for e in monomials:
        mask = 0
        for i, x in enumerate(e):
            if x:
                mask |= 1 << i
        if mask == 0:
            return DimensionReport(-1, ())
        edges.append(mask)
    cover = min_hitting_set(edges, ring.nvars)
    witness = tuple(ring.names[i] for i in range(ring.nvars) if not cover >> i & 1)
    return DimensionReport(len(witness), witness)


def krull_dimension(I: Ideal, order: MonomialOrder | None = None) -> DimensionReport:
    """Dimension of K[x]/I from the leading-term ideal; -1 for the unit ideal."""
    if not I.gens:
        return DimensionReport(I.ring.nvars, I.ring.names)
    gb = I.groebner_basis(order or I.working_order)
    return _lm_dimension(I.ring, gb.leading_monomials())


def monomial_dimension(ring: PolyRing, monomials) -> DimensionReport:
    return _lm_dimension(ring, monomials)


# -- minimal generators ---------------------------------------------------------


def minimal_homogeneous_generators(I: Ideal, grading: GradingMatrix, modulo=None) -> list:
    """An inclusion-minimal homogeneous generating set of I (+ ``modulo``).

    With ``modulo`` (an ideal or list of polynomials) the result is a
    minimal set that generates I together with ``modulo``; elements already
    in ``modulo`` are dropped.  Output is sorted by degree, then by leading
    monomial.
    """
    ring = I.ring
    mod = [] if modulo is None else list(modulo.gens if isinstance(modulo, Ideal) else modulo)
    mod = [ring(f) for f in mod if f]
    degs = {}
    for f in list(I.gens) + mod:
        degs[f] = degree_of(f, grading)  # raises InhomogeneousError
    key = ring.order.key
    w = positive_weights(grading)
    cands = sorted(
        I.gens,
        key=lambda f: (sum(a * b for a, b in zip(f.leading_monomial(), w)) if w else 0,
                       tuple(degs[f]), key(f.leading_monomial())),
    )
    if w is not None:
        eng = Engine(ring, MonomialOrder.weight(w), w)
        kept = eng.run(mod, cands, early_unit=False)
        out = [cands[i] for i in kept]
    else:
        out = list(cands)
        i = 0
        while i < len(out):
            rest = Ideal(ring, mod + out[:i] + out[i + 1:])
            if rest.contains(out[i]):
                del out[i]
            else:
                i += 1
    return sorted(out, key=lambda f: (tuple(degs[f]), key(f.leading_monomial())))


# -- monomial ideals -----------------------------------------------------------


def _squarefree_mask(f: Polynomial) -> int:
    if not f.is_monomial():
        raise NonSquarefreeError(f"{f} is not a monomial")
    (e, _), = f.terms
    if any(x > 1 for x in e):
        raise NonSquarefreeError(f"{f} is not squarefree")
    mask = 0
    for i, x in enumerate(e):
        if x:
            mask |= 1 << i
    return mask


def minimal_transversals(edges) -> list:
    """All inclusion-minimal vertex covers of a hypergraph (bitmasks)."""
    edges = _minimal_edges(edges)
    covers = [0]
    for e in edges:
        nxt = set()
        for c in covers:
            if c & e:
                nxt.add(c)
            else:
                v = e
                while v:
                    low = v & -v
                    nxt.add(c | low)
                    v ^= low
        covers = _minimal_edges(nxt)
    return covers


def monomial_minimal_primes(I) -> list:
    """Minimal primes of a squarefree monomial ideal, as tuples of variable names."""
    gens = I.gens if isinstance(I, Ideal) else list(I)
    if not gens:
        return [()]
    ring = gens[0].ring
    masks = [_squarefree_mask(f) for f in gens]
    if 0 in masks:
        return []
    covers = minimal_transversals(masks)
    out = []
    for c in covers:
        out.append(tuple(ring.names[i] for i in range(ring.nvars) if c >> i & 1))
    out.sort(key=lambda s: (len(s), [ring.index[x] for x in s]))
    return out


__all__ = [
    "DimensionReport",
    "GroebnerBasis",
    "Ideal",
    "NonSquarefreeError",
    "OrderMismatchError",
    "ZeroDivisorInputError",
    "eliminate",
    "ideal_intersection",
    "ideal_quotient",
    "krull_dimension",
    "minimal_homogeneous_generators",
    "minimal_transversals",
    "monomial_minimal_primes",
    "normal_form",
    "saturation",
    "saturation_exponent",
    "InhomogeneousError",
]
