"""Coefficient fields: the rationals and prime fields F_p."""

from __future__ import annotations

import random
from fractions import Fraction

DEFAULT_PRIME = 32003


class CoefficientError(ValueError):
    """A literal cannot be represented in the coefficient field."""


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for n < 3.3e24."""
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
    for q in small:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class Field:
    """Either Q (``p is None``) or the prime field F_p.

    Elements of Q are :class:`fractions.Fraction`; elements of F_p are
    ints in ``range(p)``.
    """

    __slots__ = ("p",)

    def __init__(self, p: int | None = None):
        if p is not None:
            p = int(p)
            if not is_prime(p):
                raise ValueError(f"{p} is not prime")
        self.p = p

    @property
    def name(self) -> str:
        return "Q" if self.p is None else f"F{self.p}"

    @property
    def is_prime_field(self) -> bool:
        return self.p is not None

    def __eq__(self, other):
        return isinstance(other, Field) and other.p == self.p

    def __hash__(self):
        return hash(("Field", self.p))

    def __repr__(self):
        return f"Field({self.name})"

    def __call__(self, x) -> int | Fraction:
        """Coerce an int or Fraction into the field."""
        p = self.p
        if p is None:
            return Fraction(x)
        if isinstance(x, int):
            return x % p
        x = Fraction(x)
        den = x.denominator % p
        if den == 0:
            raise CoefficientError(f"{x} is not defined in {self.name}")
        return x.numerator * pow(den, -1, p) % p

    def zero(self):
        return self(0)

    def one(self):
        return self(1)

    def inv(self, c):
        if not c:
            raise ZeroDivisionError("inverse of zero")
        if self.p is None:
            return 1 / c
        return pow(c, -1, self.p)

    def format(self, c) -> str:
        """Signed integer or a/b; F_p uses the symmetric representative."""
        p = self.p
        if p is None:
            if c.denominator == 1:
                return str(c.numerator)
            return f"{c.numerator}/{c.denominator}"
        return str(c - p if c > p // 2 else c)

    def random_nonzero(self, rng: random.Random, bound: int = 9):
        """Uniform nonzero element of F_p, or a nonzero integer in [-bound, bound] for Q."""
        if self.p is None:
            c = 0
            while c == 0:
                c = rng.randint(-bound, bound)
            return Fraction(c)
        return rng.randrange(1, self.p)


QQ = Field()


def GF(p: int = DEFAULT_PRIME) -> Field:
    return Field(p)


def field_from_name(name: str) -> Field:
    """Parse ``Q``, ``QQ``, ``F32003``, ``GF(32003)`` or a bare prime."""
    s = name.strip()
    if s.isdigit():
        s = "F" + s
    if s in ("Q", "QQ"):
        return QQ
    if s.startswith("GF(") and s.endswith(")"):
        s = "F" + s[3:-1]
    if s.startswith("F") and s[1:].isdigit():
        return Field(int(s[1:]))
    raise ValueError(f"unknown field {name!r}")
