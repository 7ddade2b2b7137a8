"""Bigraded pieces of the Jacobian ideal and ring of a curve F in S_{d,e}.

J_{a,b} is spanned by the monomial multiples m * dF/dx_i with m in
S_{a-d+1,b-e} and m * dF/dy_i with m in S_{a-d,b-e+1}; R_{a,b} = S_{a,b}/J_{a,b}.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from typing import Sequence

from . import exactla
from .bipoly import BiDegree, BiPoly, monomial_basis, random_bipoly
from .exactla import Complement, Subspace
from .fields import GF, QQ

CERTIFIED_SMOOTH = "certified-smooth"
SINGULAR_WITNESSED = "singular-witnessed"
UNDECIDED = "undecided"


@dataclass(frozen=True)
class QuotientPiece:
    degree: BiDegree
    dim_S: int
    J: Subspace
    R: Complement

    @property
    def dim_J(self) -> int:
        return self.J.dim

    @property
    def dim_R(self) -> int:
        return self.R.dim

    @property
    def R_reps(self) -> tuple[BiPoly, ...]:
        """Monomials spanning the complement, as polynomials."""
        basis = monomial_basis(tuple(self.degree))
        f = self.J.field
        return tuple(BiPoly.monomial(basis[c], 1, f) for c in self.R.free_columns)


@dataclass(frozen=True)
class SmoothnessVerdict:
    status: str
    certifying_degree: BiDegree | None = None
    witness: tuple | None = None
    trace: tuple = ()

    @property
    def smooth(self) -> bool:
        return self.status == CERTIFIED_SMOOTH

    def to_dict(self) -> dict:
        return {
            "status": self.status,
            "certifying_degree": list(self.certifying_degree) if self.certifying_degree else None,
            "witness": [str(x) for x in self.witness] if self.witness else None,
            "trace": [dict(t) for t in self.trace],
        }


class CurveContext:
    """A fixed curve F = 0 of bidegree (d, e) over a working field.

    Pieces of J and R are memoized per bidegree.  Concurrent fills of the same
    entry compute identical canonical values, so races are harmless.
    """

    def __init__(self, F: BiPoly, field=None):
        field = F.field if field is None else field
        F = F.over(field)
        d, e = F.degree
        if d < 1 or e < 1:
            raise ValueError(f"curve bidegree must be at least (1, 1), got {(d, e)}")
        if F.is_zero():
            raise ValueError("curve polynomial is zero")
        self.F = F
        self.field = field
        self.d = d
        self.e = e
        self.partials = tuple(F.partial(v) for v in range(4))
        self._pieces: dict[BiDegree, QuotientPiece] = {}
        self._smooth: dict[tuple, SmoothnessVerdict] = {}

    @property
    def degree(self) -> BiDegree:
        return BiDegree(self.d, self.e)

    @property
    def genus(self) -> int:
        return (self.d - 1) * (self.e - 1)

    # irregularity of P1 x P1 and its geometric genus
    q = 0
    p_g = 0

    def with_field(self, field) -> "CurveContext":
        return CurveContext(self.F, field) if field != self.field else self

    def descriptor(self) -> dict:
        return {"d": self.d, "e": self.e, "F": str(self.F), "genus": self.genus}

    def __repr__(self):
        return f"CurveContext(({self.d}, {self.e}), {self.field!r})"


def _multiplier_degrees(ctx: CurveContext, deg) -> tuple[BiDegree, BiDegree]:
    a, b = deg
    return BiDegree(a - ctx.d + 1, b - ctx.e), BiDegree(a - ctx.d, b - ctx.e + 1)


def jacobian_generator_polys(ctx: CurveContext, deg) -> list[BiPoly]:
    deg = BiDegree(*deg)
    mx, my = _multiplier_degrees(ctx, deg)
    out = []
    for v, mdeg in ((0, mx), (1, mx), (2, my), (3, my)):
        for m in monomial_basis(tuple(mdeg)):
            out.append(ctx.partials[v].shift(m))
    return out


def jacobian_generators(ctx: CurveContext, deg) -> list[list]:
    """Coefficient vectors of all monomial multiples of the partials in ``deg``."""
    return [g.coeff_vector() for g in jacobian_generator_polys(ctx, deg)]


def jacobian_piece(ctx: CurveContext, deg) -> QuotientPiece:
    deg = BiDegree(*deg)
    piece = ctx._pieces.get(deg)
    if piece is None:
        n = deg.dim
        J = exactla.span(jacobian_generators(ctx, deg), n, ctx.field)
        piece = QuotientPiece(deg, n, J, exactla.complement_coords(J))
        ctx._pieces[deg] = piece
    return piece


def hilbert(ctx: CurveContext, deg) -> tuple[int, int, int]:
    """(dim S, dim J, dim R) in bidegree ``deg``."""
    piece = jacobian_piece(ctx, deg)
    return piece.dim_S, piece.dim_J, piece.dim_R


def _coordinate_points(bound: int = 2):
    vals = range(-bound, bound + 1)
    line = [(1, 0)] + [(t, 1) for t in vals]
    for (x0, x1), (y0, y1) in itertools.product(line, line):
        yield (x0, x1, y0, y1)


def find_singular_point(ctx: CurveContext, bound: int = 2):
    """Search a small grid of rational points for a common zero of the partials."""
    for pt in _coordinate_points(bound):
        if all(p.evaluate(pt) == 0 for p in ctx.partials):
            return pt
    return None


def certify_smooth(ctx: CurveContext, cap=None) -> SmoothnessVerdict:
    """Certify that the four partials of F have no common zero.

    Tries (d,e), (2d,2e), (4d,4e), ... (clamped to ``cap``, default (4d,4e)).
    J_{a,b} = S_{a,b} at any step is a certificate: a common zero would give a
    nonzero evaluation functional on S_{a,b} vanishing on J_{a,b}.  Over a
    prime field the certificate also holds over QQ, since the rank of the
    integer generator matrix mod p bounds its rational rank from below.
    """
    cap = BiDegree(*(cap or (4 * ctx.d, 4 * ctx.e)))
    if cap.a < ctx.d or cap.b < ctx.e:
        raise ValueError(f"cap {tuple(cap)} below curve bidegree {(ctx.d, ctx.e)}")
    key = tuple(cap)
    if key in ctx._smooth:
        return ctx._smooth[key]
    trace = []
    k = 1
    verdict = None
    while True:
        deg = BiDegree(min(k * ctx.d, cap.a), min(k * ctx.e, cap.b))
        dim_S, dim_J, dim_R = hilbert(ctx, deg)
        trace.append((("degree", list(deg)), ("dim_S", dim_S), ("dim_J", dim_J)))
        if dim_R == 0:
            verdict = SmoothnessVerdict(CERTIFIED_SMOOTH, deg, None, tuple(trace))
            break
        if deg == cap:
            break
        k *= 2
    if verdict is None:
        pt = find_singular_point(ctx)
        status = SINGULAR_WITNESSED if pt is not None else UNDECIDED
        verdict = SmoothnessVerdict(status, None, pt, tuple(trace))
    ctx._smooth[key] = verdict
    return verdict


def ideal_piece(generators: Sequence[BiPoly], deg) -> Subspace:
    """Span in S_{deg} of all monomial multiples of ``generators``."""
    deg = BiDegree(*deg)
    field = generators[0].field
    rows = []
    for g in generators:
        for m in monomial_basis(tuple(deg - g.degree)):
            rows.append(g.shift(m).coeff_vector())
    return exactla.span(rows, deg.dim, field)


@dataclass(frozen=True)
class LengthResult:
    length: int
    stabilized: bool
    trace: tuple = dc_field(default=())


def scheme_length(generators: Sequence[BiPoly], cap=None) -> LengthResult:
    """Length of the finite scheme cut out by ``generators``, if it is finite.

    Walks (a,b) = (a0+k, b0+k) from the componentwise maximum generator
    bidegree and returns the codimension of the ideal piece once two
    consecutive steps agree.  ``stabilized`` is False if ``cap`` (default:
    four times the starting bidegree) is reached first.
    """
    if not generators:
        raise ValueError("need at least one generator")
    a0 = max(g.degree.a for g in generators)
    b0 = max(g.degree.b for g in generators)
    cap = BiDegree(*(cap or (max(4 * a0, 1), max(4 * b0, 1))))
    trace = []
    prev = None
    k = 0
    while a0 + k <= cap.a and b0 + k <= cap.b:
        deg = BiDegree(a0 + k, b0 + k)
        codim = deg.dim - ideal_piece(generators, deg).dim
        trace.append((tuple(deg), codim))
        if prev is not None and codim == prev:
            return LengthResult(codim, True, tuple(trace))
        prev = codim
        k += 1
    return LengthResult(prev if prev is not None else 0, False, tuple(trace))


def ramification_generators(ctx: CurveContext) -> list[BiPoly]:
    """F, dF/dx0, dF/dx1: their common zeros are the ramification points of
    the projection of the curve onto the y-line."""
    return [ctx.F, ctx.partials[0], ctx.partials[1]]


def ramification_degree(d: int, e: int) -> int:
    """Riemann-Hurwitz for the degree-d projection: 2g - 2 + 2d."""
    g = (d - 1) * (e - 1)
    return 2 * g - 2 + 2 * d


def curve_from_seed(d: int, e: int, seed: int, height: int, field=QQ) -> BiPoly:
    return random_bipoly((d, e), seed, height, field)


def smooth_seeds(d: int, e: int, count: int, height: int = 100, field=None, start: int = 0, limit: int = 1000):
    """The first ``count`` seeds >= ``start`` whose random curve certifies smooth."""
    field = GF() if field is None else field
    found = []
    for s in range(start, start + limit):
        ctx = CurveContext(curve_from_seed(d, e, s, height), field)
        if certify_smooth(ctx).smooth:
            found.append(s)
            if len(found) == count:
                return found
    raise RuntimeError(f"only {len(found)} smooth curves among {limit} seeds")
