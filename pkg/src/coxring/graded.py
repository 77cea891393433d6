"""Z^k gradings of polynomial rings."""

from __future__ import annotations

import json
from fractions import Fraction
from math import gcd, lcm

import numpy as np
from scipy.optimize import linprog

from .polys.ring import Polynomial, ZeroPolynomialError


class InhomogeneousError(ValueError):
    pass


class RankMismatchError(ValueError):
    pass


class DegreeVector(tuple):
    """An element of Z^k; ``+``, ``-`` and integer scaling act componentwise."""

    def __new__(cls, coords):
        return super().__new__(cls, (int(c) for c in coords))

    def _check(self, other):
        if len(other) != len(self):
            raise RankMismatchError(f"degree {list(other)} has rank {len(other)}, expected {len(self)}")

    def __add__(self, other):
        self._check(other)
        return DegreeVector(a + b for a, b in zip(self, other))

    def __sub__(self, other):
        self._check(other)
        return DegreeVector(a - b for a, b in zip(self, other))

    def __rsub__(self, other):
        return DegreeVector(other) - self

    def __neg__(self):
        return DegreeVector(-a for a in self)

    def __mul__(self, k):
        if not isinstance(k, (int, np.integer)):
            return NotImplemented
        return DegreeVector(int(k) * a for a in self)

    __rmul__ = __mul__

    def __str__(self):
        return "[" + ",".join(str(a) for a in self) + "]"

    def __repr__(self):
        return f"DegreeVector({str(self)})"


def parse_degree(src) -> DegreeVector:
    """``"[3,-1,-1]"``, ``"3,-1,-1"`` or a sequence of ints."""
    if isinstance(src, str):
        s = src.strip()
        if not s.startswith("["):
            s = f"[{s}]"
        src = json.loads(s)
    return DegreeVector(src)


class GradingMatrix:
    """k x r integer matrix; column j is the degree of variable j."""

    def __init__(self, rows, names=None):
        m = np.array(rows, dtype=np.int64)
        if m.ndim == 1:
            m = m.reshape(1, -1)
        if m.ndim != 2 or m.shape[0] < 1 or m.shape[1] < 1:
            raise ValueError("a grading matrix needs at least one row and one column")
        self.matrix = m
        self.matrix.setflags(write=False)
        self.rank = m.shape[0]
        self.nvars = m.shape[1]
        if names is not None:
            names = tuple(names)
            if len(names) != self.nvars:
                raise ValueError("one name per column is required")
        self.names = names

    @classmethod
    def parse(cls, src: str, names=None) -> GradingMatrix:
        rows = json.loads(src)
        if rows and not isinstance(rows[0], list):
            rows = [rows]
        return cls(rows, names)

    @property
    def rows(self) -> list:
        return self.matrix.tolist()

    def column(self, j) -> DegreeVector:
        if isinstance(j, str):
            if self.names is None:
                raise KeyError(j)
            j = self.names.index(j)
        return DegreeVector(self.matrix[:, j].tolist())

    @property
    def columns(self) -> list:
        return [DegreeVector(c) for c in self.matrix.T.tolist()]

    def monomial_degree(self, exps) -> DegreeVector:
        return DegreeVector((self.matrix @ np.asarray(exps, dtype=np.int64)).tolist())

    def extend(self, degrees, names=None) -> GradingMatrix:
        """Append columns for new variables."""
        cols = [list(d) for d in degrees]
        for d in cols:
            if len(d) != self.rank:
                raise RankMismatchError(f"degree {d} has rank {len(d)}, expected {self.rank}")
        m = np.hstack([self.matrix, np.array(cols, dtype=np.int64).T.reshape(self.rank, -1)])
        new_names = None
        if self.names is not None and names is not None:
            new_names = self.names + tuple(names)
        return GradingMatrix(m, new_names)

    def restrict(self, keep) -> GradingMatrix:
        keep = list(keep)
        names = None if self.names is None else tuple(self.names[j] for j in keep)
        return GradingMatrix(self.matrix[:, keep], names)

    def with_names(self, names) -> GradingMatrix:
        return GradingMatrix(self.matrix, names)

    def __eq__(self, other):
        return isinstance(other, GradingMatrix) and np.array_equal(self.matrix, other.matrix)

    def __hash__(self):
        return hash(self.matrix.tobytes())

    def format(self) -> str:
        """Rows with right-aligned columns."""
        cells = [[str(x) for x in row] for row in self.matrix.tolist()]
        if self.names is not None:
            cells.insert(0, list(self.names))
        width = [max(len(r[j]) for r in cells) for j in range(self.nvars)]
        return "\n".join(" ".join(c.rjust(w) for c, w in zip(r, width)) for r in cells)

    def to_text(self) -> str:
        return json.dumps(self.rows, separators=(",", ":"))

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"GradingMatrix({self.rows})"


def degree_of(f: Polynomial, grading: GradingMatrix) -> DegreeVector:
    """Common degree of all terms of ``f``."""
    if f.is_zero():
        raise ZeroPolynomialError("the zero polynomial has no degree")
    if grading.nvars != f.ring.nvars:
        raise RankMismatchError("grading and ring have different numbers of variables")
    first = None
    for e, _ in f.terms:
        d = grading.monomial_degree(e)
        if first is None:
            first = (e, d)
        elif d != first[1]:
            from .polys.ring import format_monomial

            a = format_monomial(first[0], f.ring.names) or "1"
            b = format_monomial(e, f.ring.names) or "1"
            raise InhomogeneousError(f"terms {a} (degree {first[1]}) and {b} (degree {d}) differ")
    return first[1]


def is_homogeneous(f, grading: GradingMatrix) -> bool:
    polys = [f] if isinstance(f, Polynomial) else list(f)
    for g in polys:
        if g.is_zero():
            continue
        try:
            degree_of(g, grading)
        except InhomogeneousError:
            return False
    return True


def adjoined_degree(deg_f, n: int, deg_m) -> DegreeVector:
    """Degree of S when S * m^n = f."""
    if n < 1:
        raise ValueError("n must be at least 1")
    return DegreeVector(deg_f) - n * DegreeVector(deg_m)


def _rational_vector(x, denominators=(1, 2, 3, 4, 6, 12, 60, 840, 2520)):
    for den in denominators:
        yield [Fraction(round(v * den), den) for v in x]
    yield [Fraction(v).limit_denominator(10**6) for v in x]


def _integral(fracs) -> tuple:
    den = 1
    for q in fracs:
        den = lcm(den, q.denominator)
    ints = [int(q * den) for q in fracs]
    g = 0
    for v in ints:
        g = gcd(g, v)
    g = g or 1
    return tuple(v // g for v in ints)


def positive_weights(grading: GradingMatrix) -> tuple | None:
    """Integer weights w_j = lambda . deg(x_j) >= 1 for some linear form lambda.

    Polynomials homogeneous for the grading are then homogeneous for ``w``.
    Returns None when the grading admits no such form.
    """
    m = grading.matrix.astype(float)
    k = grading.rank
    # minimise sum_j lambda.col_j subject to lambda.col_j >= 1
    res = linprog(
        c=m.sum(axis=1),
        A_ub=-m.T,
        b_ub=-np.ones(grading.nvars),
        bounds=[(None, None)] * k,
        method="highs",
    )
    if res.status != 0:
        return None
    for lam in _rational_vector(res.x):
        w = [sum(l * int(c) for l, c in zip(lam, col)) for col in grading.matrix.T.tolist()]
        if all(x > 0 for x in w):
            return _integral(w)
    return None


def homogenizing_weights(polys) -> tuple | None:
    """Positive integer weights making every polynomial in ``polys`` homogeneous."""
    polys = [f for f in polys if f]
    if not polys:
        return None
    n = polys[0].ring.nvars
    rows = []
    for f in polys:
        exps = list(f.as_dict())
        e0 = exps[0]
        rows.extend([a - b for a, b in zip(e, e0)] for e in exps[1:])
    if not rows:
        return (1,) * n
    a_eq = np.array(rows, dtype=float)
    res = linprog(
        c=np.ones(n),
        A_eq=a_eq,
        b_eq=np.zeros(len(rows)),
        bounds=[(1, None)] * n,
        method="highs",
    )
    if res.status != 0:
        return None
    for w in _rational_vector(res.x):
        if min(w) <= 0:
            continue
        wi = _integral(w)
        if all(sum(a * b for a, b in zip(r, wi)) == 0 for r in rows):
            return wi
    return None
