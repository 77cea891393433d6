"""Buchberger's algorithm on packed monomials.

Polynomials inside the engine are dicts ``{key: coeff}`` where ``key`` is
the packed monomial (see :class:`~coxring.polys.orders.Packer`), so that
comparing, multiplying and testing divisibility of monomials are plain
int operations.  Basis elements are kept monic.

Selection is by sugar (weighted degree), then by task kind, then by the
lcm.  Input generators are queued as tasks too, which makes the same loop
compute minimal generating sets of homogeneous ideals: a generator that
reduces to zero when its degree comes up is redundant.
"""

from __future__ import annotations

import heapq
import logging
from dataclasses import dataclass

from ..polys.orders import SAFE_EXP, MonomialOrder
from ..polys.ring import Polynomial, PolyRing

log = logging.getLogger(__name__)

PAIR, GEN, CANDIDATE = 0, 1, 2


class ExponentOverflowError(ArithmeticError):
    pass


@dataclass
class _Elem:
    lmk: int
    lme: tuple
    tail: list  # [(key, coeff)] descending, lead coefficient 1 implied
    sugar: int
    tag: int = -1  # index of the input generator this came from, if any

    def poly_items(self, one_coeff):
        yield self.lmk, one_coeff
        yield from self.tail


class Engine:
    """Groebner basis state for one ring, order and field."""

    def __init__(self, ring: PolyRing, order: MonomialOrder, weights=None):
        if order.nvars != ring.nvars:
            raise ValueError("order arity does not match the ring")
        self.ring = ring
        self.order = order
        self.packer = order.packer
        self.p = ring.field.p
        self.one_coeff = ring.field(1)
        w = tuple(weights) if weights is not None else (1,) * ring.nvars
        if len(w) != ring.nvars or min(w) < 0:
            raise ValueError("sugar weights must be non-negative, one per variable")
        self.weights = w
        self.elems: list[_Elem] = []  # every element ever added
        self.active: list[int] = []  # indices usable as reducers / pair partners
        self.unit = False
        self._pairs: dict = {}  # (i, j) -> (lcm exponents, lcm key)
        self._heap: list = []
        # leading-monomial lookups: key -> reducing element, or the number
        # of elements already known not to divide it
        self._lookup: dict = {}
        self._active_elems: list = []

    # -- conversion ---------------------------------------------------------

    def pack(self, f: Polynomial) -> dict:
        enc = self.packer.encode
        out = {}
        for e, c in f.as_dict().items():
            if max(e, default=0) >= SAFE_EXP:
                raise ExponentOverflowError(f"exponent too large in {f}")
            out[enc(e)] = c
        return out

    def unpack(self, items) -> Polynomial:
        dec = self.packer.decode
        return Polynomial(self.ring, {dec(k): c for k, c in items})

    def elem_poly(self, e: _Elem) -> Polynomial:
        return self.unpack(e.poly_items(self.one_coeff))

    def wdeg(self, exps) -> int:
        return sum(a * b for a, b in zip(exps, self.weights))

    # -- reduction ------------------------------------------------------------

    def _reducer(self, k: int, reducers):
        g = self.packer.guards
        t = self.packer.tie_mask
        if self.packer.revlex:
            kt = k & t
            for r in reducers:
                if ((r.lmk & t) | g) - kt & g == g:
                    return r
        else:
            kt = (k & t) | g
            for r in reducers:
                if kt - (r.lmk & t) & g == g:
                    return r
        return None

    def _find(self, k: int):
        hit = self._lookup.get(k)
        if hit is None:
            r = self._reducer(k, self._active_elems)
        elif hit.__class__ is int:
            if hit == len(self.elems):
                return None
            r = self._reducer(k, self.elems[hit:])
        else:
            return hit
        self._lookup[k] = len(self.elems) if r is None else r
        return r

    def reduce(self, poly: dict, reducers=None, tail_only: bool = False) -> list:
        """Full normal form of ``poly`` as a descending list of terms."""
        if reducers is None:
            find = self._find
        else:
            def find(k, _red=reducers, _f=self._reducer):
                return _f(k, _red)
        p = self.p
        acc = dict(poly)
        heap = [-k for k in acc]
        heapq.heapify(heap)
        out = []
        push = heapq.heappush
        pop = heapq.heappop
        first = tail_only
        while heap:
            k = -pop(heap)
            c = acc.pop(k, None)
            if c is None:
                continue
            r = None if first else find(k)
            first = False
            if r is None:
                out.append((k, c))
                continue
            delta = k - r.lmk
            get = acc.get
            if p is not None:
                for tk, tc in r.tail:
                    nk = tk + delta
                    v = get(nk)
                    if v is None:
                        acc[nk] = -c * tc % p
                        push(heap, -nk)
                    else:
                        v = (v - c * tc) % p
                        if v:
                            acc[nk] = v
                        else:
                            del acc[nk]
            else:
                for tk, tc in r.tail:
                    nk = tk + delta
                    v = get(nk)
                    if v is None:
                        acc[nk] = -c * tc
                        push(heap, -nk)
                    else:
                        v = v - c * tc
                        if v:
                            acc[nk] = v
                        else:
                            del acc[nk]
        return out

    def _make_elem(self, terms: list, sugar: int, tag: int = -1) -> _Elem:
        lk, lc = terms[0]
        fld = self.ring.field
        inv = fld.inv(lc)
        p = self.p
        if p is not None:
            tail = [(k, c * inv % p) for k, c in terms[1:]]
        else:
            tail = [(k, c * inv) for k, c in terms[1:]]
        pk = self.packer
        if any(pk.overflowed(k) for k, _ in terms):
            raise ExponentOverflowError("monomial exponent exceeded the packing range")
        return _Elem(lk, pk.decode(lk), tail, sugar, tag)

    def spoly(self, i: int, j: int) -> dict:
        a, b = self.elems[i], self.elems[j]
        lcm = tuple(max(x, y) for x, y in zip(a.lme, b.lme))
        lk = self.packer.encode(lcm)
        da, db = lk - a.lmk, lk - b.lmk
        p = self.p
        acc = {}
        for k, c in a.tail:
            acc[k + da] = c
        for k, c in b.tail:
            nk = k + db
            v = acc.get(nk, 0) - c
            if p is not None:
                v %= p
            if v:
                acc[nk] = v
            else:
                acc.pop(nk, None)
        return acc

    # -- main loop ------------------------------------------------------------

    def run(self, gens, candidates=(), early_unit: bool = True):
        """Compute a Groebner basis of ``gens + candidates``.

        Returns the indices of the candidates that were *not* redundant,
        i.e. whose normal form was nonzero when processed.  Only meaningful
        for homogeneous input with positive weights.
        """
        queue = []
        counter = 0
        for kind, polys in ((GEN, gens), (CANDIDATE, candidates)):
            for idx, f in enumerate(polys):
                d = self.pack(f)
                if not d:
                    continue
                sug = max(self.wdeg(self.packer.decode(k)) for k in d)
                queue.append((sug, kind, idx, counter, d))
                counter += 1
        heapq.heapify(queue)
        kept = []
        heap = self._heap
        nred = 0
        while queue or heap:
            if heap and (not queue or heap[0][:2] <= queue[0][:2]):
                sug, _, _, i, j = heapq.heappop(heap)
                if self._pairs.pop((i, j), None) is None:
                    continue
                poly = self.spoly(i, j)
                tag = -1
            else:
                sug, kind, idx, _, poly = heapq.heappop(queue)
                tag = idx if kind == CANDIDATE else -1
            terms = self.reduce(poly)
            nred += 1
            if not terms:
                continue
            if tag >= 0:
                kept.append(tag)
            self._add(terms, sug, tag)
            if self.unit and early_unit:
                break
        log.debug("groebner: %d reductions, %d elements", nred, len(self.active))
        return sorted(kept)

    def _add(self, terms, sugar, tag=-1):
        h = self._make_elem(terms, sugar, tag)
        t = len(self.elems)
        self.elems.append(h)
        if h.lmk == self.packer.one:
            self.unit = True
            self.active = [t]
            self._active_elems = [h]
            self._pairs.clear()
            self._heap.clear()
            return
        pk = self.packer
        divides = pk.divides
        elems = self.elems
        hl = h.lme
        hk = h.lmk
        # Gebauer-Moeller: new pairs (i, t)
        cand = []
        for i in self.active:
            g = elems[i]
            lcm = tuple(x if x > y else y for x, y in zip(g.lme, hl))
            coprime = all(not (x and y) for x, y in zip(g.lme, hl))
            cand.append((i, lcm, pk.encode(lcm), coprime))
        keep = []
        for a, (i, lcm, lk, coprime) in enumerate(cand):
            if coprime:
                continue
            for b, (_, _, lk2, _) in enumerate(cand):
                if b != a and divides(lk2, lk) and (lk2 != lk or b < a or cand[b][3]):
                    break
            else:
                keep.append((i, lcm, lk))
        # old pairs made redundant by h
        drop = []
        for (i, j), (lcm, lk) in self._pairs.items():
            if divides(hk, lk):
                gi, gj = elems[i].lme, elems[j].lme
                l1 = tuple(x if x > y else y for x, y in zip(gi, hl))
                l2 = tuple(x if x > y else y for x, y in zip(gj, hl))
                if l1 != lcm and l2 != lcm:
                    drop.append((i, j))
        for key in drop:
            del self._pairs[key]
        hw = self.wdeg(hl)
        for i, lcm, lk in keep:
            g = elems[i]
            sug = max(g.sugar - self.wdeg(g.lme), sugar - hw) + self.wdeg(lcm)
            self._pairs[(i, t)] = (lcm, lk)
            heapq.heappush(self._heap, (sug, PAIR, lk, i, t))
        # elements whose leading monomial is divisible by lm(h) retire
        self.active = [i for i in self.active if not divides(hk, elems[i].lmk)]
        self.active.append(t)
        self._active_elems = [elems[i] for i in self.active]

    def reduced_basis(self) -> list:
        """Interreduce the active elements; sorted by leading monomial, ascending."""
        if self.unit:
            return [_Elem(self.packer.one, self.packer.decode(self.packer.one), [], 0)]
        elems = sorted((self.elems[i] for i in self.active), key=lambda e: e.lmk)
        out = []
        for e in elems:
            terms = self.reduce(dict(e.poly_items(self.one_coeff)), elems, tail_only=True)
            out.append(_Elem(e.lmk, e.lme, terms[1:], e.sugar, e.tag))
        return out


def groebner_elems(ring, polys, order, weights=None):
    eng = Engine(ring, order, weights)
    eng.run(polys)
    return eng, eng.reduced_basis()


def groebner(polys, order: MonomialOrder | None = None, weights=None) -> list:
    """Reduced Groebner basis of ``polys`` (monic, ascending leading monomials)."""
    polys = list(polys)
    if not polys:
        raise ValueError("need at least one polynomial to fix the ring")
    ring = polys[0].ring
    order = order or ring.order
    eng, basis = groebner_elems(ring, [f for f in polys if f], order, weights)
    return [eng.elem_poly(e) for e in basis]


# -- a deliberately naive route, used to check the engine's output ------------


def is_groebner_basis(basis, order: MonomialOrder | None = None) -> bool:
    """Buchberger's criterion checked with plain exponent-tuple division.

    Works on Polynomial objects (any field); independent of the engine.
    """
    basis = [g for g in basis if g]
    if not basis:
        return True
    ring = basis[0].ring
    order = order or ring.order
    key = order.key
    fld = ring.field
    p = fld.p

    def norm(d):
        if p is None:
            return {e: c for e, c in d.items() if c}
        return {e: c % p for e, c in d.items() if c % p}

    def to_frac_free(g):
        # monic copy so the naive division only divides by 1
        lm = max(g.as_dict(), key=key)
        inv = fld.inv(g.coefficient(lm))
        return norm({e: c * inv for e, c in g.as_dict().items()})

    monic = [to_frac_free(g) for g in basis]

    def nf(f):
        rem = {}
        f = norm(dict(f))
        lead = [(max(g, key=key), g) for g in monic]
        while f:
            m = max(f, key=key)
            c = f.pop(m)
            for lm, g in lead:
                if all(x >= y for x, y in zip(m, lm)):
                    q = tuple(x - y for x, y in zip(m, lm))
                    for e, gc in g.items():
                        if e == lm:
                            continue
                        ne = tuple(a + b for a, b in zip(e, q))
                        v = f.get(ne, 0) - c * gc
                        if p is not None:
                            v %= p
                        if v:
                            f[ne] = v
                        else:
                            f.pop(ne, None)
                    break
            else:
                rem[m] = c
        return rem

    for a in range(len(monic)):
        for b in range(a + 1, len(monic)):
            fa, fb = monic[a], monic[b]
            la, lb = max(fa, key=key), max(fb, key=key)
            if all(not (x and y) for x, y in zip(la, lb)):
                continue
            lcm = tuple(max(x, y) for x, y in zip(la, lb))
            qa = tuple(x - y for x, y in zip(lcm, la))
            qb = tuple(x - y for x, y in zip(lcm, lb))
            s = {}
            for e, c in fa.items():
                ne = tuple(x + y for x, y in zip(e, qa))
                s[ne] = s.get(ne, 0) + c
            for e, c in fb.items():
                ne = tuple(x + y for x, y in zip(e, qb))
                s[ne] = s.get(ne, 0) - c
            if nf(s):
                return False
    return True
