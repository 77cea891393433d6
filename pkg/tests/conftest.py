"""Shared helpers: random small ideals and a sympy Groebner oracle."""

import random
from fractions import Fraction

import pytest
import sympy

from coxring.polys import GF, QQ, MonomialOrder, PolyRing
from coxring.polys.ring import format_polynomial


def random_poly(rng, R, nterms=3, deg=3):
    terms = []
    for _ in range(nterms):
        e = [0] * R.nvars
        for _ in range(rng.randint(0, deg)):
            e[rng.randrange(R.nvars)] += 1
        terms.append((e, rng.randint(-5, 5)))
    return R.from_terms(terms)


def random_ideal_gens(rng, R, max_gens=3, deg=3):
    gens = [random_poly(rng, R, rng.randint(1, 3), deg) for _ in range(rng.randint(1, max_gens))]
    return [g for g in gens if g] or [R.gen(0)]


def to_sympy(f, syms):
    names = dict(zip(f.ring.names, syms))
    return sympy.sympify(format_polynomial(f).replace("^", "**"), locals=names)


def sympy_groebner(gens, order_name):
    """Reduced monic GB from sympy, converted back into the ring of ``gens``."""
    R = gens[0].ring
    syms = sympy.symbols(R.names)
    p = R.field.p
    kw = {"modulus": p} if p else {}
    G = sympy.groebner([to_sympy(g, syms) for g in gens], *syms, order=order_name, **kw)
    out = []
    for h in G.exprs:
        P = sympy.Poly(h, *syms, **kw)
        terms = []
        for mon, c in P.terms():
            if p:
                terms.append((mon, int(c)))
            else:
                c = sympy.Rational(c)
                terms.append((mon, Fraction(int(c.p), int(c.q))))
        out.append(R.from_terms(terms).monic())
    return out


@pytest.fixture
def rng():
    return random.Random(20261016)


@pytest.fixture
def qxy():
    return PolyRing("x,y", QQ)


@pytest.fixture
def f101():
    return GF(101)


def pytest_terminal_summary(terminalreporter):
    import test_acceptance

    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in test_acceptance.RESULTS:
            terminalreporter.write_line(line)
