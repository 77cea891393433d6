"""Text to polynomial.

Grammar (whitespace ignored)::

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := factor ('*' factor)*
    factor := atom ('^' INT)?
    atom   := INT | INT '/' INT | NAME | '(' expr ')'
"""

from __future__ import annotations

import re
from fractions import Fraction

from .fields import CoefficientError
from .ring import Polynomial, PolyRing

_TOKEN = re.compile(r"(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\S)")


class ParseError(ValueError):
    def __init__(self, message: str, offset: int, src: str = ""):
        self.offset = offset
        self.src = src
        super().__init__(f"{message} at byte {offset}")


class UnknownVariableError(ParseError):
    pass


def _tokenize(src: str):
    toks = []
    for m in _TOKEN.finditer(src):
        start = m.start()
        if m.group(1) is not None:
            toks.append(("int", m.group(1), start))
        elif m.group(2) is not None:
            toks.append(("name", m.group(2), start))
        else:
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise ParseError(f"unexpected character {ch!r}", len(src[:start].encode()), src)
            toks.append((ch, ch, start))
    toks.append(("end", "", len(src)))
    return toks


class _Parser:
    def __init__(self, src: str, ring: PolyRing):
        self.src = src
        self.ring = ring
        self.toks = _tokenize(src)
        self.i = 0

    def offset(self, tok) -> int:
        return len(self.src[: tok[2]].encode())

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        return ParseError(msg, self.offset(tok), self.src)

    def expect(self, kind):
        tok = self.take()
        if tok[0] != kind:
            got = "end of input" if tok[0] == "end" else repr(tok[1])
            raise self.error(f"expected {kind!r}, got {got}", tok)
        return tok

    def parse(self) -> Polynomial:
        if self.peek()[0] == "end":
            raise self.error("empty expression")
        f = self.expr()
        if self.peek()[0] != "end":
            raise self.error(f"unexpected {self.peek()[1]!r}")
        return f

    def expr(self) -> Polynomial:
        sign = 1
        if self.peek()[0] in ("+", "-"):
            sign = -1 if self.take()[0] == "-" else 1
        acc = self.term()
        if sign < 0:
            acc = -acc
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            t = self.term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term(self) -> Polynomial:
        acc = self.factor()
        while True:
            kind = self.peek()[0]
            if kind == "*":
                self.take()
                acc = acc * self.factor()
            elif kind in ("int", "name", "("):
                raise self.error("missing '*' between factors")
            else:
                return acc

    def factor(self) -> Polynomial:
        base = self.atom()
        if self.peek()[0] == "^":
            self.take()
            tok = self.expect("int")
            base = base ** int(tok[1])
        return base

    def atom(self) -> Polynomial:
        tok = self.take()
        kind = tok[0]
        if kind == "int":
            value = Fraction(int(tok[1]))
            if self.peek()[0] == "/":
                self.take()
                den = self.expect("int")
                if int(den[1]) == 0:
                    raise self.error("zero denominator", den)
                value = Fraction(int(tok[1]), int(den[1]))
            try:
                return self.ring.constant(value if value.denominator != 1 else value.numerator)
            except CoefficientError as exc:
                raise CoefficientError(f"{exc} (at byte {self.offset(tok)})") from None
        if kind == "name":
            if tok[1] not in self.ring.index:
                raise UnknownVariableError(f"unknown variable {tok[1]!r}", self.offset(tok), self.src)
            return self.ring.gen(tok[1])
        if kind == "(":
            inner = self.expr()
            self.expect(")")
            return inner
        got = "end of input" if kind == "end" else repr(tok[1])
        raise self.error(f"unexpected {got}", tok)


def parse_polynomial(src: str, ring: PolyRing) -> Polynomial:
    return _Parser(src, ring).parse()


def parse_polynomials(src: str, ring: PolyRing, sep: str = ";") -> list:
    """Parse a ``sep``-separated list, skipping empty entries."""
    out = []
    for part in src.split(sep):
        if part.strip():
            out.append(parse_polynomial(part, ring))
    return out
