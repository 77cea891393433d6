"""Toric ambient data: Cox ring, grading, irrelevant ideal."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .graded import DegreeVector, GradingMatrix, parse_degree, positive_weights
from .ideals.ideal import Ideal, minimal_transversals, monomial_minimal_primes
from .polys.fields import GF, Field
from .polys.ring import Polynomial, PolyRing


class InvalidParamsError(ValueError):
    pass


class EmptyLinearSystemError(ValueError):
    pass


DEFAULT_EXPONENT_CAP = 30


class ToricAmbient:
    """Cox ring K[T_1..T_r] with a Z^k grading and a squarefree irrelevant ideal."""

    def __init__(self, ring: PolyRing, grading: GradingMatrix, irrelevant, label: str = ""):
        if grading.nvars != ring.nvars:
            raise ValueError("grading has the wrong number of columns")
        self.ring = ring
        self.grading = grading.with_names(ring.names)
        self.irrelevant = tuple(ring(m) for m in irrelevant)
        for m in self.irrelevant:
            if not m.is_monomial() or max(m.leading_monomial()) > 1:
                raise ValueError(f"irrelevant generator {m} is not a squarefree monomial")
        self.label = label

    @property
    def dim(self) -> int:
        return self.ring.nvars - self.grading.rank

    @property
    def field(self) -> Field:
        return self.ring.field

    def with_field(self, field: Field) -> ToricAmbient:
        ring = PolyRing(self.ring.names, field, self.ring.order)
        return ToricAmbient(ring, self.grading, [m.to_ring(ring) for m in self.irrelevant], self.label)

    def __repr__(self):
        return f"ToricAmbient({self.ring}, {self.grading.rows})"

    # -- irrelevant locus -----------------------------------------------------

    def irrelevant_components(self) -> list:
        """Minimal primes of the irrelevant ideal, as tuples of variable names."""
        return monomial_minimal_primes(Ideal(self.ring, self.irrelevant, None))

    def codim2_components(self) -> list:
        return [c for c in self.irrelevant_components() if len(c) == 2]

    def markers(self, components=None) -> list:
        """Monomials m_i with V(m_1..m_s) equal to the union of ``components``.

        These are the products over the minimal transversals of the
        component family (default: the codimension-2 components).
        """
        comps = self.codim2_components() if components is None else components
        idx = self.ring.index
        masks = []
        for c in comps:
            m = 0
            for v in c:
                m |= 1 << idx[v]
            masks.append(m)
        out = []
        for cover in minimal_transversals(masks):
            e = [(cover >> i) & 1 for i in range(self.ring.nvars)]
            out.append(self.ring.monomial(e))
        return out

    # -- linear systems -------------------------------------------------------

    def monomial_basis(self, degree, cap: int = DEFAULT_EXPONENT_CAP) -> list:
        """Exponent vectors of all monomials of the given degree, descending."""
        return monomial_basis(self.grading, parse_degree(degree), cap, self.ring.order)

    def random_general_polynomial(self, degree, seed: int, cap: int = DEFAULT_EXPONENT_CAP) -> Polynomial:
        return random_general_polynomial(self, degree, seed, cap)

    def is_ample_rank2(self, degree) -> bool:
        return is_ample_rank2(degree)


def monomial_basis(grading: GradingMatrix, degree: DegreeVector, cap: int = DEFAULT_EXPONENT_CAP, order=None) -> list:
    if len(degree) != grading.rank:
        raise ValueError(f"degree {degree} has rank {len(degree)}, expected {grading.rank}")
    w = positive_weights(grading)
    cols = grading.columns
    r = grading.nvars
    target = tuple(degree)
    out = []
    if w is None:
        # no positive grading: only the exponent cap bounds the search
        bound = [cap] * r
        budget = None
    else:
        lam_total = _weight_of_degree(grading, w, degree)
        if lam_total is None or lam_total < 0:
            return []
        budget = lam_total
        bound = [min(cap, budget // wj) for wj in w]
    exps = [0] * r

    def rec(j, acc, left):
        if j == r:
            if tuple(acc) == target and (left is None or left == 0):
                out.append(tuple(exps))
            return
        col = cols[j]
        top = bound[j] if left is None else min(bound[j], left // w[j])
        if j == r - 1 and left is not None:
            if left % w[j]:
                return
            choices = [left // w[j]] if left // w[j] <= bound[j] else []
        else:
            choices = range(top + 1)
        for x in choices:
            exps[j] = x
            rec(j + 1, [a + x * c for a, c in zip(acc, col)], None if left is None else left - x * w[j])
        exps[j] = 0

    rec(0, [0] * grading.rank, budget)
    if order is not None:
        out.sort(key=order.key, reverse=True)
    return out


def _weight_of_degree(grading: GradingMatrix, w, degree) -> int | None:
    """w . e for any e of the given degree (w is a linear function of the degree)."""
    # recover lambda with lambda . col_j = w_j by exact least squares on a basis
    k = grading.rank
    cols = grading.columns
    for idx in combinations(range(grading.nvars), k):
        sub = [[cols[j][i] for j in idx] for i in range(k)]
        lam = _solve_transpose(sub, [w[j] for j in idx])
        if lam is None:
            continue
        if all(sum(l * c for l, c in zip(lam, col)) == wj for col, wj in zip(cols, w)):
            val = sum(l * d for l, d in zip(lam, degree))
            return int(val) if val.denominator == 1 else None
    return None


def _det(m):
    n = len(m)
    if n == 1:
        return m[0][0]
    return sum((-1) ** j * m[0][j] * _det([row[:j] + row[j + 1:] for row in m[1:]]) for j in range(n))


def _solve(m, b):
    """Exact solution of m x = b (Cramer), or None if singular."""
    d = _det(m)
    if d == 0:
        return None
    n = len(m)
    out = []
    for j in range(n):
        mj = [row[:j] + [b[i]] + row[j + 1:] for i, row in enumerate(m)]
        out.append(Fraction(_det(mj), d))
    return out


def _solve_transpose(m, b):
    mt = [list(r) for r in zip(*m)]
    return _solve(mt, b)


def random_general_polynomial(Z: ToricAmbient, degree, seed: int, cap: int = DEFAULT_EXPONENT_CAP) -> Polynomial:
    """Every monomial of the degree with a seeded random nonzero coefficient."""
    basis = Z.monomial_basis(degree, cap)
    if not basis:
        raise EmptyLinearSystemError(f"no monomials of degree {parse_degree(degree)}")
    rng = random.Random(seed)
    fld = Z.ring.field
    return Z.ring.from_terms((e, fld.random_nonzero(rng)) for e in basis)


def is_ample_rank2(degree) -> bool:
    a, b = parse_degree(degree)
    return a > 0 and b > 0


def irrelevant_from_ample(grading: GradingMatrix, ample) -> list:
    """Index sets J with ``ample`` in the interior of cone(deg T_j : j in J).

    For a simplicial toric variety these are the complements of the
    maximal cones, so the products T_J generate the irrelevant ideal.
    """
    ample = list(parse_degree(ample))
    k = grading.rank
    cols = grading.columns
    out = []
    for idx in combinations(range(grading.nvars), k):
        m = [[cols[j][i] for j in idx] for i in range(k)]
        c = _solve(m, ample)
        if c is not None and all(x > 0 for x in c):
            out.append(idx)
    return out


def ambient_from_ample(ring: PolyRing, grading, ample, label: str = "") -> ToricAmbient:
    grading = grading if isinstance(grading, GradingMatrix) else GradingMatrix(grading)
    gens = []
    for idx in irrelevant_from_ample(grading, ample):
        e = [0] * ring.nvars
        for j in idx:
            e[j] = 1
        gens.append(ring.monomial(e))
    return ToricAmbient(ring, grading, _minimal_monomials(gens), label)


def _minimal_monomials(monos) -> list:
    exps = sorted({m.leading_monomial() for m in monos}, key=lambda e: (sum(e), tuple(-x for x in e)))
    keep = []
    for e in exps:
        if not any(all(a <= b for a, b in zip(f, e)) for f in keep):
            keep.append(e)
    ring = monos[0].ring
    return [ring.monomial(e) for e in keep]


# -- smooth projective toric varieties of Picard rank two ----------------------


@dataclass(frozen=True)
class Rank2Params:
    n: int
    k: int
    a: tuple

    def __post_init__(self):
        a = tuple(int(x) for x in self.a)
        object.__setattr__(self, "a", a)
        if self.n < 2:
            raise InvalidParamsError("n must be at least 2")
        if not 1 <= self.k <= self.n - 1:
            raise InvalidParamsError(f"k must satisfy 1 <= k <= n-1, got k={self.k}, n={self.n}")
        if len(a) != self.k:
            raise InvalidParamsError(f"expected {self.k} values a_i, got {len(a)}")
        if any(x < 0 for x in a) or any(x > y for x, y in zip(a, a[1:])):
            raise InvalidParamsError("a must be a non-decreasing list of non-negative integers")

    @classmethod
    def parse(cls, src: str) -> Rank2Params:
        """``"n,k,a1,...,ak"``."""
        vals = [int(x) for x in src.replace(" ", "").split(",") if x]
        if len(vals) < 2:
            raise InvalidParamsError("expected n,k,a1,...,ak")
        return cls(vals[0], vals[1], tuple(vals[2:]))

    @property
    def first_block(self) -> int:
        return self.n - self.k + 1


def rank2_smooth(p: Rank2Params, field: Field | None = None) -> ToricAmbient:
    field = field or GF()
    r = p.n + 2
    m = p.first_block
    top = [1] * m + [0] + [-x for x in p.a]
    bottom = [0] * m + [1] * (p.k + 1)
    ring = PolyRing([f"T{i}" for i in range(1, r + 1)], field)
    gens = [ring.gen(i) * ring.gen(j) for i in range(m) for j in range(m, r)]
    return ToricAmbient(ring, GradingMatrix([top, bottom]), gens, f"rank2(n={p.n},k={p.k},a={list(p.a)})")


def is_fano(p: Rank2Params) -> bool:
    return sum(p.a) < p.n - p.k + 1
