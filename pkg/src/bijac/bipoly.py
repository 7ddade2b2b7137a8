"""Sparse bihomogeneous polynomials in x0, x1, y0, y1.

The bigrading is deg(x_i) = (1, 0), deg(y_i) = (0, 1).  A :class:`BiPoly`
always carries its bidegree, including the zero polynomial, and arithmetic
between polynomials of different bidegree (or over different fields) raises
:class:`BidegreeError` rather than coercing.

Coordinates on S_{a,b} follow :func:`monomial_basis`: x0-exponent descending,
then y0-exponent descending.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .fields import QQ

VARS = ("x0", "x1", "y0", "y1")


class BidegreeError(ValueError):
    """Operands or terms have incompatible bidegrees."""


class PolySyntaxError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class BidegreeMismatchError(BidegreeError):
    def __init__(self, term: str, found: "BiDegree", expected: "BiDegree"):
        super().__init__(
            f"term {term!r} has bidegree {tuple(found)}, expected {tuple(expected)}"
        )
        self.term = term
        self.found = found
        self.expected = expected


class BiDegree(NamedTuple):
    a: int
    b: int

    @property
    def dim(self) -> int:
        """dim S_{a,b}."""
        if self.a < 0 or self.b < 0:
            return 0
        return (self.a + 1) * (self.b + 1)

    def __add__(self, other):
        return BiDegree(self.a + other[0], self.b + other[1])

    def __sub__(self, other):
        return BiDegree(self.a - other[0], self.b - other[1])


class Monomial(NamedTuple):
    """Exponents of x0, x1, y0, y1."""

    i: int
    j: int
    k: int
    l: int

    @property
    def degree(self) -> BiDegree:
        return BiDegree(self.i + self.j, self.k + self.l)

    def __mul__(self, other):
        return Monomial(self.i + other[0], self.j + other[1], self.k + other[2], self.l + other[3])

    def divides(self, other: "Monomial") -> bool:
        return all(s <= o for s, o in zip(self, other))

    def __str__(self):
        factors = []
        for name, e in zip(VARS, self):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append(f"{name}^{e}")
        return "*".join(factors) if factors else "1"


@lru_cache(maxsize=None)
def monomial_basis(deg: tuple[int, int]) -> tuple[Monomial, ...]:
    """All monomials of bidegree ``deg`` in canonical order (empty if negative)."""
    a, b = deg
    if a < 0 or b < 0:
        return ()
    return tuple(
        Monomial(i, a - i, k, b - k) for i in range(a, -1, -1) for k in range(b, -1, -1)
    )


def monomial_index(m: Monomial) -> int:
    """Position of ``m`` in ``monomial_basis(m.degree)``."""
    b = m.k + m.l
    return m.j * (b + 1) + m.l


class BiPoly:
    """Immutable bihomogeneous polynomial with coefficients in ``field``."""

    __slots__ = ("degree", "terms", "field", "_hash")

    def __init__(self, degree, terms=None, field=QQ):
        degree = BiDegree(*degree)
        clean = {}
        for mono, coef in (terms or {}).items():
            mono = Monomial(*mono)
            if mono.degree != degree:
                raise BidegreeError(f"monomial {mono} does not have bidegree {tuple(degree)}")
            c = field.reduce(coef)
            if c != 0:
                clean[mono] = c
        self.degree = degree
        self.terms = clean
        self.field = field
        self._hash = None

    # construction helpers

    @classmethod
    def zero(cls, degree, field=QQ) -> "BiPoly":
        return cls(degree, {}, field)

    @classmethod
    def monomial(cls, mono, coef=1, field=QQ) -> "BiPoly":
        mono = Monomial(*mono)
        return cls(mono.degree, {mono: coef}, field)

    @classmethod
    def from_vector(cls, degree, vec: Sequence, field=QQ) -> "BiPoly":
        basis = monomial_basis(tuple(degree))
        if len(vec) != len(basis):
            raise ValueError(f"vector of length {len(vec)} for S_{tuple(degree)} of dim {len(basis)}")
        return cls(degree, dict(zip(basis, vec)), field)

    def coeff_vector(self) -> list:
        """Dense coordinates in the canonical basis of S_{a,b}."""
        vec = [self.field.zero] * self.degree.dim
        for mono, c in self.terms.items():
            vec[monomial_index(mono)] = c
        return vec

    def over(self, field) -> "BiPoly":
        if field == self.field:
            return self
        return BiPoly(self.degree, self.terms, field)

    # arithmetic

    def _check(self, other: "BiPoly"):
        if not isinstance(other, BiPoly):
            raise TypeError(f"expected BiPoly, got {type(other).__name__}")
        if other.field != self.field:
            raise BidegreeError(f"field mismatch: {self.field} vs {other.field}")

    def __add__(self, other: "BiPoly") -> "BiPoly":
        self._check(other)
        if other.degree != self.degree:
            raise BidegreeError(f"cannot add bidegrees {tuple(self.degree)} and {tuple(other.degree)}")
        out = dict(self.terms)
        for mono, c in other.terms.items():
            out[mono] = out.get(mono, 0) + c
        return BiPoly(self.degree, out, self.field)

    def __neg__(self) -> "BiPoly":
        return BiPoly(self.degree, {m: -c for m, c in self.terms.items()}, self.field)

    def __sub__(self, other: "BiPoly") -> "BiPoly":
        return self + (-other)

    def scale(self, c) -> "BiPoly":
        c = self.field.reduce(c)
        return BiPoly(self.degree, {m: v * c for m, v in self.terms.items()}, self.field)

    def __mul__(self, other):
        if not isinstance(other, BiPoly):
            return self.scale(other)
        self._check(other)
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = m1 * m2
                out[m] = out.get(m, 0) + c1 * c2
        return BiPoly(self.degree + other.degree, out, self.field)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, n: int) -> "BiPoly":
        if n < 0:
            raise ValueError("negative power")
        result = BiPoly.monomial((0, 0, 0, 0), 1, self.field)
        for _ in range(n):
            result = result * self
        return result

    def shift(self, mono) -> "BiPoly":
        """Multiply by a monomial (cheaper than a full product)."""
        mono = Monomial(*mono)
        return BiPoly(
            self.degree + mono.degree,
            {m * mono: c for m, c in self.terms.items()},
            self.field,
        )

    def divide_monomial(self, mono) -> "BiPoly":
        """Exact division by a monomial; raises ``ValueError`` if not exact."""
        mono = Monomial(*mono)
        out = {}
        for m, c in self.terms.items():
            if not mono.divides(m):
                raise ValueError(f"{self} is not divisible by {mono}")
            out[Monomial(*(a - b for a, b in zip(m, mono)))] = c
        return BiPoly(self.degree - mono.degree, out, self.field)

    def partial(self, var) -> "BiPoly":
        """Formal partial derivative with respect to ``var`` (name or index 0..3)."""
        v = VARS.index(var) if isinstance(var, str) else int(var)
        step = BiDegree(1, 0) if v < 2 else BiDegree(0, 1)
        out = {}
        for m, c in self.terms.items():
            e = m[v]
            if e:
                mm = list(m)
                mm[v] -= 1
                out[Monomial(*mm)] = c * e
        return BiPoly(self.degree - step, out, self.field)

    def evaluate(self, point: Sequence):
        """Value at ``(x0, x1, y0, y1)`` with entries coercible into the field."""
        f = self.field
        pt = [f.reduce(v) for v in point]
        total = f.zero
        for m, c in self.terms.items():
            term = c
            for v, e in zip(pt, m):
                term = term * v**e
            total = total + term
        return f.reduce(total)

    # comparison and display

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, BiPoly):
            return NotImplemented
        return (
            self.degree == other.degree
            and self.field == other.field
            and self.terms == other.terms
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.degree, self.field, frozenset(self.terms.items())))
        return self._hash

    def __repr__(self):
        return f"BiPoly({tuple(self.degree)}, {format_bipoly(self)!r}, {self.field!r})"

    def __str__(self):
        return format_bipoly(self)


def euler_defect(F: BiPoly) -> tuple[BiPoly, BiPoly]:
    """Return (x.grad_x F - d F, y.grad_y F - e F); both vanish identically."""
    d, e = F.degree
    x0 = BiPoly.monomial((1, 0, 0, 0), 1, F.field)
    x1 = BiPoly.monomial((0, 1, 0, 0), 1, F.field)
    y0 = BiPoly.monomial((0, 0, 1, 0), 1, F.field)
    y1 = BiPoly.monomial((0, 0, 0, 1), 1, F.field)
    ex = x0 * F.partial("x0") + x1 * F.partial("x1") - F.scale(d)
    ey = y0 * F.partial("y0") + y1 * F.partial("y1") - F.scale(e)
    return ex, ey


def random_bipoly(deg, seed: int, height: int, field=QQ) -> BiPoly:
    """Integer coefficients uniform in [-height, height], drawn from PCG64(seed)."""
    deg = BiDegree(*deg)
    if deg.a < 0 or deg.b < 0:
        raise ValueError(f"negative bidegree {tuple(deg)}")
    if height < 0:
        raise ValueError("height must be nonnegative")
    rng = np.random.default_rng(seed % 2**64)
    coeffs = rng.integers(-height, height, size=deg.dim, endpoint=True)
    return BiPoly.from_vector(deg, [int(c) for c in coeffs], field)


def multiply_all(polys: Iterable[BiPoly]) -> BiPoly:
    polys = list(polys)
    out = polys[0]
    for p in polys[1:]:
        out = out * p
    return out


# ---------------------------------------------------------------------------
# text format

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<var>x0|x1|y0|y1)|(?P<op>[-+*/^]))")


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            start = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise PolySyntaxError(f"unexpected character {text[start]!r}", start)
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.idx = 0

    def peek(self):
        return self.tokens[self.idx]

    def take(self):
        tok = self.tokens[self.idx]
        self.idx += 1
        return tok

    def expect(self, kind, value=None):
        tok = self.take()
        if tok[0] != kind or (value is not None and tok[1] != value):
            want = value or kind
            got = tok[1] or "end of input"
            raise PolySyntaxError(f"expected {want!r}, found {got!r}", tok[2])
        return tok

    def nat(self) -> int:
        return int(self.expect("num")[1])

    def coef(self) -> Fraction:
        num = self.nat()
        if self.peek()[:2] == ("op", "/"):
            self.take()
            den_tok = self.peek()
            den = self.nat()
            if den == 0:
                raise PolySyntaxError("zero denominator", den_tok[2])
            return Fraction(num, den)
        return Fraction(num)

    def term(self, sign: int):
        """Returns (coefficient, exponent list, source start)."""
        start = self.peek()[2]
        coef = Fraction(sign)
        exps = [0, 0, 0, 0]
        tok = self.peek()
        if tok[:2] == ("op", "-"):
            self.take()
            coef = -coef
            tok = self.peek()
        if tok[0] == "num":
            coef *= self.coef()
            if self.peek()[:2] != ("op", "*"):
                return coef, exps, start
            self.take()
        self.factor(exps)
        while self.peek()[:2] == ("op", "*"):
            self.take()
            self.factor(exps)
        return coef, exps, start

    def factor(self, exps):
        name = self.expect("var")[1]
        power = 1
        if self.peek()[:2] == ("op", "^"):
            self.take()
            power = self.nat()
        exps[VARS.index(name)] += power

    def poly(self):
        terms = []
        sign = 1
        if self.peek()[:2] in (("op", "+"), ("op", "-")):
            sign = -1 if self.take()[1] == "-" else 1
        terms.append(self.term(sign))
        while True:
            tok = self.peek()
            if tok[0] == "end":
                break
            if tok[:2] not in (("op", "+"), ("op", "-")):
                raise PolySyntaxError(f"expected '+' or '-', found {tok[1]!r}", tok[2])
            self.take()
            terms.append(self.term(-1 if tok[1] == "-" else 1))
        return terms


def parse_bipoly(text: str, expected, field=QQ) -> BiPoly:
    """Parse ``text`` as a polynomial of bidegree ``expected``.

    Grammar: ``poly := term (('+'|'-') term)*``, ``term := [coef '*'] factor
    ('*' factor)*``, ``factor := var ['^' nat]``, ``coef := ['-'] nat ['/'
    nat]``.  Also accepted: a leading sign, a bare coefficient as the constant
    term, and the literal ``0``.
    """
    expected = BiDegree(*expected)
    parser = _Parser(text)
    out: dict = {}
    raw = parser.poly()
    bounds = [t[2] for t in raw] + [len(text)]
    for n, (coef, exps, start) in enumerate(raw):
        mono = Monomial(*exps)
        is_zero_literal = coef == 0 and exps == [0, 0, 0, 0]
        if mono.degree != expected and not is_zero_literal:
            src = text[start:bounds[n + 1]].strip().rstrip("+-").strip()
            raise BidegreeMismatchError(src, mono.degree, expected)
        if not is_zero_literal:
            out[mono] = out.get(mono, 0) + coef
    return BiPoly(expected, out, field)


def _format_coef(c) -> str:
    if isinstance(c, Fraction) and c.denominator != 1:
        return f"{c.numerator}/{c.denominator}"
    return str(int(c))


def format_bipoly(p: BiPoly) -> str:
    """Canonical text, parseable by :func:`parse_bipoly` in the same field."""
    if not p.terms:
        return "0"
    parts = []
    for mono in monomial_basis(tuple(p.degree)):
        c = p.terms.get(mono)
        if c is None:
            continue
        first = not parts
        neg = c < 0
        mag = -c if neg else c
        mono_s = str(mono)
        if mono_s == "1":
            body = _format_coef(mag)
        elif mag == 1:
            body = mono_s if not (first and neg) else f"1*{mono_s}"
        else:
            body = f"{_format_coef(mag)}*{mono_s}"
        if first:
            parts.append(f"-{body}" if neg else body)
        else:
            parts.append(f" - {body}" if neg else f" + {body}")
    return "".join(parts)
