"""Polynomial rings and sparse exact polynomials."""

from __future__ import annotations

import re
from fractions import Fraction

from .fields import QQ, Field
from .orders import MonomialOrder

_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")
_RANGE = re.compile(r"([A-Za-z_]+)(\d+)\.\.([A-Za-z_]+)?(\d+)\Z")


class RingMismatchError(ValueError):
    pass


class ZeroPolynomialError(ValueError):
    pass


def expand_names(spec: str) -> list[str]:
    """``"T1..T3,S1"`` -> ``["T1", "T2", "T3", "S1"]``."""
    out = []
    for part in spec.split(","):
        part = part.strip()
        if not part:
            continue
        m = _RANGE.match(part)
        if m:
            stem, lo, stem2, hi = m.groups()
            if stem2 not in (None, stem):
                raise ValueError(f"bad variable range {part!r}")
            out.extend(f"{stem}{i}" for i in range(int(lo), int(hi) + 1))
        else:
            out.append(part)
    return out


def compress_names(names) -> str:
    """Inverse of :func:`expand_names`, using ranges for runs of length >= 3."""
    parsed = []
    for nm in names:
        m = re.match(r"([A-Za-z_]+)(\d+)\Z", nm)
        parsed.append((m.group(1), int(m.group(2))) if m and not m.group(2).startswith("0") else (nm, None))
    out = []
    i = 0
    while i < len(parsed):
        stem, k = parsed[i]
        j = i
        if k is not None:
            while j + 1 < len(parsed) and parsed[j + 1] == (stem, k + (j + 1 - i)):
                j += 1
        if j - i >= 2:
            out.append(f"{stem}{k}..{stem}{k + j - i}")
        else:
            out.extend(names[i:j + 1])
        i = j + 1
    return ",".join(out)


class PolyRing:
    """K[x_1..x_n] with a default monomial order.

    Two rings are equal when they have the same variable names and field;
    the order only affects printing and default Groebner computations.
    """

    def __init__(self, names, field: Field = QQ, order: MonomialOrder | None = None):
        if isinstance(names, str):
            names = expand_names(names)
        names = tuple(names)
        for nm in names:
            if not _NAME.match(nm):
                raise ValueError(f"invalid variable name {nm!r}")
        if len(set(names)) != len(names):
            raise ValueError("duplicate variable names")
        if not names:
            raise ValueError("a ring needs at least one variable")
        self.names = names
        self.nvars = len(names)
        self.field = field
        self.order = order or MonomialOrder.grevlex(self.nvars)
        if self.order.nvars != self.nvars:
            raise ValueError("order arity does not match the ring")
        self.index = {nm: i for i, nm in enumerate(names)}
        self._zero_exp = (0,) * self.nvars

    def __eq__(self, other):
        return isinstance(other, PolyRing) and self.names == other.names and self.field == other.field

    def __hash__(self):
        return hash((self.names, self.field))

    def __str__(self):
        return f"{self.field.name}[{compress_names(self.names)}]"

    __repr__ = __str__

    # -- element construction --------------------------------------------

    def __call__(self, x) -> Polynomial:
        if isinstance(x, Polynomial):
            if x.ring == self:
                return x
            return x.to_ring(self)
        if isinstance(x, str):
            from .parsing import parse_polynomial

            return parse_polynomial(x, self)
        return self.constant(x)

    def constant(self, c) -> Polynomial:
        c = self.field(c)
        return Polynomial(self, {self._zero_exp: c} if c else {})

    @property
    def zero(self) -> Polynomial:
        return Polynomial(self, {})

    @property
    def one(self) -> Polynomial:
        return self.constant(1)

    def gen(self, v) -> Polynomial:
        i = self.index[v] if isinstance(v, str) else v
        e = [0] * self.nvars
        e[i] = 1
        return Polynomial(self, {tuple(e): self.field(1)})

    @property
    def gens(self) -> tuple:
        return tuple(self.gen(i) for i in range(self.nvars))

    def monomial(self, exps, coeff=1) -> Polynomial:
        c = self.field(coeff)
        return Polynomial(self, {tuple(exps): c} if c else {})

    def from_terms(self, terms) -> Polynomial:
        """Build from (exponent tuple, coefficient) pairs, combining repeats."""
        d: dict = {}
        conv = self.field
        for e, c in terms:
            e = tuple(e)
            d[e] = d.get(e, 0) + conv(c)
        p = self.field.p
        if p is not None:
            d = {e: c % p for e, c in d.items() if c % p}
        else:
            d = {e: c for e, c in d.items() if c}
        return Polynomial(self, d)

    # -- derived rings ------------------------------------------------------

    def with_order(self, order: MonomialOrder) -> PolyRing:
        return PolyRing(self.names, self.field, order)

    def extend(self, new_names, order: MonomialOrder | None = None) -> PolyRing:
        return PolyRing(self.names + tuple(new_names), self.field, order)

    def drop(self, names, order: MonomialOrder | None = None) -> PolyRing:
        names = set(names)
        keep = [nm for nm in self.names if nm not in names]
        return PolyRing(keep, self.field, order)

    def var_index(self, v) -> int:
        if isinstance(v, int):
            if not 0 <= v < self.nvars:
                raise IndexError(v)
            return v
        if isinstance(v, Polynomial):
            if not v.is_monomial() or v.total_degree() != 1:
                raise ValueError(f"{v} is not a variable")
            (e, _), = v.terms
            return e.index(1)
        return self.index[v]


class Polynomial:
    """An immutable sparse polynomial.

    ``terms`` iterates (exponents, coefficient) pairs in descending order
    under the ring's order; no zero coefficient is ever stored.
    """

    __slots__ = ("ring", "_d", "_terms", "_hash")

    def __init__(self, ring: PolyRing, d: dict):
        self.ring = ring
        self._d = d
        self._terms = None
        self._hash = None

    # -- inspection ---------------------------------------------------------

    @property
    def terms(self) -> tuple:
        if self._terms is None:
            key = self.ring.order.key
            self._terms = tuple(sorted(self._d.items(), key=lambda t: key(t[0]), reverse=True))
        return self._terms

    def as_dict(self) -> dict:
        return dict(self._d)

    def coefficient(self, exps):
        return self._d.get(tuple(exps), self.ring.field.zero())

    def __len__(self):
        return len(self._d)

    def __bool__(self):
        return bool(self._d)

    def is_zero(self) -> bool:
        return not self._d

    def is_constant(self) -> bool:
        return not self._d or (len(self._d) == 1 and self.ring._zero_exp in self._d)

    def is_monomial(self) -> bool:
        return len(self._d) == 1

    def total_degree(self) -> int:
        if not self._d:
            raise ZeroPolynomialError("degree of the zero polynomial")
        return max(sum(e) for e in self._d)

    def degree_in(self, v) -> int:
        i = self.ring.var_index(v)
        return max((e[i] for e in self._d), default=-1)

    def variables(self) -> tuple:
        """Indices of the variables that occur."""
        used = set()
        for e in self._d:
            used.update(i for i, x in enumerate(e) if x)
        return tuple(sorted(used))

    def leading_term(self, order: MonomialOrder | None = None):
        """(exponents, coefficient) of the largest term under ``order``."""
        if not self._d:
            raise ZeroPolynomialError("leading term of the zero polynomial")
        order = order or self.ring.order
        e = max(self._d, key=order.key)
        return e, self._d[e]

    def leading_monomial(self, order=None) -> tuple:
        return self.leading_term(order)[0]

    def leading_coefficient(self, order=None):
        return self.leading_term(order)[1]

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> Polynomial:
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise RingMismatchError(f"{other.ring} vs {self.ring}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.constant(other)
        return NotImplemented

    def _new(self, d: dict) -> Polynomial:
        p = self.ring.field.p
        if p is not None:
            d = {e: c % p for e, c in d.items() if c % p}
        else:
            d = {e: c for e, c in d.items() if c}
        return Polynomial(self.ring, d)

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        d = dict(self._d)
        for e, c in other._d.items():
            d[e] = d.get(e, 0) + c
        return self._new(d)

    __radd__ = __add__

    def __neg__(self):
        return self._new({e: -c for e, c in self._d.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        d = dict(self._d)
        for e, c in other._d.items():
            d[e] = d.get(e, 0) - c
        return self._new(d)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        d: dict = {}
        get = d.get
        for e1, c1 in self._d.items():
            for e2, c2 in other._d.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                d[e] = get(e, 0) + c1 * c2
        return self._new(d)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = self.ring.one
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def scale(self, c) -> Polynomial:
        c = self.ring.field(c)
        return self._new({e: c * x for e, x in self._d.items()})

    def monic(self, order=None) -> Polynomial:
        if not self._d:
            return self
        return self.scale(self.ring.field.inv(self.leading_coefficient(order)))

    def mul_monomial(self, exps, c=1) -> Polynomial:
        c = self.ring.field(c)
        return self._new({tuple(a + b for a, b in zip(e, exps)): c * x for e, x in self._d.items()})

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return other.ring == self.ring and other._d == self._d
        if isinstance(other, (int, Fraction)):
            return self == self.ring.constant(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self._d.items())))
        return self._hash

    # -- conversion ---------------------------------------------------------

    def to_ring(self, ring: PolyRing, mapping: dict | None = None) -> Polynomial:
        """Re-express in ``ring`` by matching variable names.

        ``mapping`` optionally renames source variables to target names.
        """
        if ring.field != self.ring.field:
            raise RingMismatchError("cannot change the coefficient field")
        mapping = mapping or {}
        pos = []
        for i, nm in enumerate(self.ring.names):
            tgt = mapping.get(nm, nm)
            pos.append(ring.index.get(tgt))
        n = ring.nvars
        d = {}
        for e, c in self._d.items():
            out = [0] * n
            for i, x in enumerate(e):
                if x:
                    j = pos[i]
                    if j is None:
                        raise RingMismatchError(
                            f"variable {self.ring.names[i]} does not exist in {ring}"
                        )
                    out[j] += x
            t = tuple(out)
            d[t] = d.get(t, 0) + c
        return Polynomial(ring, d)

    def subs(self, values: dict) -> Polynomial:
        """Substitute polynomials (or constants) for variables, by name or index."""
        ring = self.ring
        img = list(ring.gens)
        for k, v in values.items():
            img[ring.var_index(k)] = ring(v)
        return self.compose(img)

    def compose(self, images) -> Polynomial:
        """Evaluate at the list ``images`` (one polynomial per variable)."""
        images = list(images)
        target = images[0].ring if images and isinstance(images[0], Polynomial) else self.ring
        images = [target(x) for x in images]
        cache: dict = {}

        def power(i, k):
            key = (i, k)
            if key not in cache:
                cache[key] = images[i] ** k
            return cache[key]

        result = target.zero
        for e, c in self._d.items():
            t = target.constant(c)
            for i, k in enumerate(e):
                if k:
                    t = t * power(i, k)
            result = result + t
        return result

    def divides_exactly(self, other) -> bool:
        return exact_divide(other, self) is not None

    # -- printing -----------------------------------------------------------

    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"Polynomial({format_polynomial(self)!r}, {self.ring})"


def format_monomial(exps, names) -> str:
    parts = []
    for x, nm in zip(exps, names):
        if x == 1:
            parts.append(nm)
        elif x:
            parts.append(f"{nm}^{x}")
    return "*".join(parts)


def format_polynomial(f: Polynomial) -> str:
    if f.is_zero():
        return "0"
    fld = f.ring.field
    names = f.ring.names
    out = []
    for i, (e, c) in enumerate(f.terms):
        s = fld.format(c)
        neg = s.startswith("-")
        if neg:
            s = s[1:]
        mono = format_monomial(e, names)
        if mono:
            body = mono if s == "1" else f"{s}*{mono}"
        else:
            body = s
        if i == 0:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


def exact_divide(f: Polynomial, g: Polynomial) -> Polynomial | None:
    """Return q with f == q*g, or None when g does not divide f."""
    if g.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    ring = f.ring
    order = ring.order
    ge, gc = g.leading_term(order)
    ginv = ring.field.inv(gc)
    p = ring.field.p
    rem = dict(f._d)
    q: dict = {}
    key = order.key
    gterms = list(g._d.items())
    while rem:
        e = max(rem, key=key)
        c = rem[e]
        m = tuple(a - b for a, b in zip(e, ge))
        if min(m) < 0:
            return None
        qc = c * ginv
        if p is not None:
            qc %= p
        q[m] = qc
        for te, tc in gterms:
            ne = tuple(a + b for a, b in zip(te, m))
            v = rem.get(ne, 0) - qc * tc
            if p is not None:
                v %= p
            if v:
                rem[ne] = v
            else:
                rem.pop(ne, None)
    return Polynomial(ring, q)


def split_by(f: Polynomial, key) -> dict:
    """Group the terms of ``f`` by ``key(exps)`` into polynomials."""
    groups: dict = {}
    for e, c in f._d.items():
        groups.setdefault(key(e), {})[e] = c
    return {k: Polynomial(f.ring, d) for k, d in groups.items()}


__all__ = [
    "PolyRing",
    "Polynomial",
    "RingMismatchError",
    "ZeroPolynomialError",
    "exact_divide",
    "expand_names",
    "compress_names",
    "format_polynomial",
    "split_by",
]
