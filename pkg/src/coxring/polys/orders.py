"""Monomial orders.

Every order used here is a weight-matrix order: a few integer weight rows
compared first, then a tie-break that is either reverse-lexicographic or
lexicographic over a permutation of the variables.  This covers grevlex,
lex, weighted grevlex and elimination (block) orders, and lets us pack a
monomial into one Python int whose integer order is the monomial order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from operator import mul

EXP_BITS = 16
EXP_MAX = (1 << EXP_BITS) - 1
ROW_BITS = 40
#: exponents above this are rejected before packing
SAFE_EXP = 1 << (EXP_BITS - 2)


@dataclass(frozen=True)
class MonomialOrder:
    nvars: int
    rows: tuple = ()
    tie: str = "revlex"
    perm: tuple = ()
    kind: str = field(default="grevlex", compare=False)

    def __post_init__(self):
        if self.tie not in ("revlex", "lex"):
            raise ValueError(f"unknown tie-break {self.tie!r}")
        if not self.perm:
            object.__setattr__(self, "perm", tuple(range(self.nvars)))
        if sorted(self.perm) != list(range(self.nvars)):
            raise ValueError("perm must be a permutation of the variables")
        for i, r in enumerate(self.rows):
            if len(r) != self.nvars:
                raise ValueError("weight row length must equal the number of variables")
            if i > 0 and min(r, default=0) < 0:
                raise ValueError("only the first weight row may have negative entries")
        if self.tie == "revlex" and not self.rows:
            raise ValueError("reverse-lex tie-break needs a degree row")

    # -- constructors -----------------------------------------------------

    @classmethod
    def grevlex(cls, n: int, last: int | None = None) -> MonomialOrder:
        return cls(n, ((1,) * n,), "revlex", _perm_last(n, last), "grevlex")

    @classmethod
    def lex(cls, n: int) -> MonomialOrder:
        return cls(n, (), "lex", tuple(range(n)), "lex")

    @classmethod
    def weight(cls, w, last: int | None = None) -> MonomialOrder:
        """Weighted degree ``w`` first, grevlex tie-break.

        ``last`` names the variable compared first (and smallest) in the
        reverse-lex tie-break.
        """
        w = tuple(int(x) for x in w)
        if min(w, default=1) < 0:
            raise ValueError("weights must be non-negative")
        n = len(w)
        rows = (w,) if all(x > 0 for x in w) else (w, (1,) * n)
        return cls(n, rows, "revlex", _perm_last(n, last), "weight")

    @classmethod
    def block(cls, n: int, first, weights=None) -> MonomialOrder:
        """Elimination order for the variables in ``first``.

        ``first`` is an int k (the first k variables) or an iterable of
        indices.  Monomials are compared by degree in the eliminated block,
        then by (weighted) degree, then reverse-lex.
        """
        if isinstance(first, int):
            if not 0 <= first <= n:
                raise ValueError("block size out of range")
            block = set(range(first))
        else:
            block = set(first)
        ind = tuple(1 if i in block else 0 for i in range(n))
        w = tuple(weights) if weights is not None else (1,) * n
        if min(w, default=1) < 0:
            raise ValueError("weights must be non-negative")
        # keep the eliminated variables at the top of the revlex tie-break
        perm = tuple(sorted(block)) + tuple(i for i in range(n) if i not in block)
        return cls(n, (ind, w), "revlex", perm, "block")

    # -- comparison -------------------------------------------------------

    def key(self, exps) -> tuple:
        """Sort key: larger key means larger monomial."""
        k = [sum(map(mul, r, exps)) for r in self.rows]
        if self.tie == "revlex":
            k.extend(-exps[v] for v in reversed(self.perm))
        else:
            k.extend(exps[v] for v in self.perm)
        return tuple(k)

    def max_monomial(self, monos):
        return max(monos, key=self.key)

    def sorted_desc(self, monos):
        return sorted(monos, key=self.key, reverse=True)

    @property
    def packer(self) -> Packer:
        return _packer(self)

    def restrict(self, keep) -> MonomialOrder:
        """The induced order on the subring generated by the variables ``keep``."""
        keep = list(keep)
        pos = {v: i for i, v in enumerate(keep)}
        rows = tuple(tuple(r[v] for v in keep) for r in self.rows)
        rows = tuple(r for r in rows if any(r))
        perm = tuple(pos[v] for v in self.perm if v in pos)
        if self.tie == "revlex" and not rows:
            rows = ((1,) * len(keep),)
        return MonomialOrder(len(keep), rows, self.tie, perm, self.kind)

    def __str__(self):
        if self.kind == "lex":
            return "lex"
        if self.kind == "grevlex" and self.perm == tuple(range(self.nvars)):
            return "grevlex"
        return f"{self.kind}{list(self.rows)}"


def _perm_last(n: int, last: int | None) -> tuple:
    if last is None:
        return tuple(range(n))
    if not 0 <= last < n:
        raise ValueError("variable index out of range")
    return tuple(i for i in range(n) if i != last) + (last,)


class Packer:
    """Encodes exponent vectors as ints ordered like the monomial order.

    The encoding is affine in the exponents, so
    ``encode(a*b) == encode(a) + encode(b) - one``.  Each tie-break field
    carries one zero guard bit above it; divisibility of monomials and
    exponent overflow are read off the guard bits.
    """

    def __init__(self, order: MonomialOrder):
        n = order.nvars
        self.nvars = n
        width = EXP_BITS + 1
        fields = []  # (coefficient vector, offset, width), most significant first
        for r in order.rows:
            fields.append((r, 0, ROW_BITS))
        if order.tie == "revlex":
            for v in reversed(order.perm):
                vec = [0] * n
                vec[v] = -1
                fields.append((vec, EXP_MAX, width))
        else:
            for v in order.perm:
                vec = [0] * n
                vec[v] = 1
                fields.append((vec, 0, width))
        shifts = []
        s = 0
        for _, _, w in reversed(fields):
            shifts.append(s)
            s += w
        shifts.reverse()
        self.coeffs = tuple(
            sum(vec[v] << sh for (vec, _, _), sh in zip(fields, shifts)) for v in range(n)
        )
        self.one = sum(off << sh for (_, off, _), sh in zip(fields, shifts))
        nrows = len(order.rows)
        dec = [None] * n
        for (vec, off, _), sh in zip(fields[nrows:], shifts[nrows:]):
            v = next(i for i, x in enumerate(vec) if x)
            dec[v] = sh
        self._dec = tuple(dec)
        self.revlex = order.tie == "revlex"
        self.mask = EXP_MAX
        #: all tie-break bits including guards, and the guard bits alone
        self.tie_mask = (1 << (width * n)) - 1
        self.guards = sum(1 << (sh + EXP_BITS) for sh in dec)

    def encode(self, exps) -> int:
        return self.one + sum(map(mul, exps, self.coeffs))

    def decode(self, k: int) -> tuple:
        m = self.mask
        if self.revlex:
            return tuple(EXP_MAX - ((k >> sh) & m) for sh in self._dec)
        return tuple((k >> sh) & m for sh in self._dec)

    def divides(self, a: int, b: int) -> bool:
        """Whether monomial ``a`` divides monomial ``b`` (both encoded)."""
        g, t = self.guards, self.tie_mask
        if self.revlex:
            return ((a & t) | g) - (b & t) & g == g
        return ((b & t) | g) - (a & t) & g == g

    def overflowed(self, k: int) -> bool:
        return bool(k & self.guards)


@lru_cache(maxsize=256)
def _packer(order: MonomialOrder) -> Packer:
    return Packer(order)
