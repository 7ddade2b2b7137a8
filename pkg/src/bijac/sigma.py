"""Global sections of the first-order operator bundle twisted by O(a, b).

Sections are described on the chart x1*y1 != 0 with affine coordinates
z0 = x0/x1, w0 = y0/y1, in the local frame {1, Dz, Dw} where the curve's
differential acts by dF(1) = F, dF(Dz) = x1 dF/dx0, dF(Dw) = y1 dF/dy0.
Five families of sections form a basis; the two mixed families carry the
correction term forced by the chart gluing, and their images are computed
from the local expression with an exact division by x1 (resp. y1).
"""

from __future__ import annotations

from dataclasses import dataclass

from . import exactla
from .bipoly import BiDegree, BiPoly, Monomial
from .exactla import Subspace
from .jacring import CurveContext, jacobian_piece

ONE, DZ, DW = "1", "Dz", "Dw"


@dataclass(frozen=True)
class SigmaSection:
    """Basis section of family 1..5 with its parameters, at twist (a, b).

    family 1: (t, u)  z0^t w0^u * 1
    family 2: (r, s)  z0^r w0^s * Dz
    family 3: (s,)    -d z0^(a+1) w0^s * 1 + z0^(a+2) w0^s * Dz
    family 4: (n, m)  z0^n w0^m * Dw
    family 5: (n,)    -e z0^n w0^(b+1) * 1 + z0^n w0^(b+2) * Dw
    """

    family: int
    params: tuple[int, ...]
    twist: BiDegree

    def __post_init__(self):
        object.__setattr__(self, "twist", BiDegree(*self.twist))
        if not _in_range(self.family, self.params, self.twist):
            raise ValueError(
                f"parameters {self.params} out of range for family {self.family} at twist {tuple(self.twist)}"
            )

    def local_terms(self, d: int, e: int) -> list[tuple[int, str, int, int]]:
        """(coefficient, frame, z0 exponent, w0 exponent) summands."""
        a, b = self.twist
        f, p = self.family, self.params
        if f == 1:
            return [(1, ONE, p[0], p[1])]
        if f == 2:
            return [(1, DZ, p[0], p[1])]
        if f == 3:
            return [(-d, ONE, a + 1, p[0]), (1, DZ, a + 2, p[0])]
        if f == 4:
            return [(1, DW, p[0], p[1])]
        return [(-e, ONE, p[0], b + 1), (1, DW, p[0], b + 2)]


def _ranges(family: int, a: int, b: int) -> list[range]:
    if family == 1:
        return [range(0, a + 1), range(0, b + 1)]
    if family == 2:
        return [range(0, a + 2), range(0, b + 1)]
    if family == 3:
        # z0^(a+1) must be a polynomial
        return [range(0, b + 1)] if a >= -1 else [range(0)]
    if family == 4:
        return [range(0, a + 1), range(0, b + 2)]
    if family == 5:
        return [range(0, a + 1)] if b >= -1 else [range(0)]
    raise ValueError(f"unknown family {family}")


def _in_range(family, params, twist) -> bool:
    rs = _ranges(family, *twist)
    return len(params) == len(rs) and all(v in r for v, r in zip(params, rs))


def sigma_sections(a: int, b: int) -> list[SigmaSection]:
    """Enumerate the basis of H^0(Sigma_L(a, b)), families in order 1..5."""
    if a < -2 or b < -2:
        return []
    out = []
    for family in range(1, 6):
        rs = _ranges(family, a, b)
        if len(rs) == 1:
            out.extend(SigmaSection(family, (x,), (a, b)) for x in rs[0])
        else:
            out.extend(SigmaSection(family, (x, y), (a, b)) for x in rs[0] for y in rs[1])
    return out


def sigma_dim(a: int, b: int) -> int:
    """h^0(Sigma_L(a, b)) = (b+1)(2a+4) + (a+1)(b+3) for a, b >= -1, else 0."""
    if a < -1 or b < -1:
        return 0
    return (b + 1) * (2 * a + 4) + (a + 1) * (b + 3)


def _frame_image(ctx: CurveContext, frame: str) -> BiPoly:
    if frame == ONE:
        return ctx.F
    if frame == DZ:
        return ctx.partials[0].shift((0, 1, 0, 0))
    return ctx.partials[2].shift((0, 0, 0, 1))


def apply_dF(ctx: CurveContext, s: SigmaSection) -> BiPoly:
    """Image of a section of Sigma_L(a, b) in S_{a+d, b+e}.

    The local summand z0^p w0^q * frame (times x1^a y1^b) homogenizes to
    x0^p x1^(a-p) y0^q y1^(b-q) dF(frame); negative powers of x1, y1 are
    cleared by an exact division, which fails loudly if the gluing were wrong.
    """
    a, b = s.twist
    target = BiDegree(a + ctx.d, b + ctx.e)
    terms = s.local_terms(ctx.d, ctx.e)
    sx = max(0, max(p - a for _, _, p, _ in terms))
    sy = max(0, max(q - b for _, _, _, q in terms))
    total = BiPoly.zero(target + (sx, sy), ctx.field)
    for coef, frame, p, q in terms:
        mono = Monomial(p, a - p + sx, q, b - q + sy)
        total = total + _frame_image(ctx, frame).shift(mono).scale(coef)
    return total.divide_monomial((0, sx, 0, sy))


def image_dF(ctx: CurveContext, twist) -> Subspace:
    """Span of dF over the whole basis of H^0(Sigma_L(twist))."""
    a, b = twist
    target = BiDegree(a + ctx.d, b + ctx.e)
    vecs = [apply_dF(ctx, s).coeff_vector() for s in sigma_sections(a, b)]
    return exactla.span(vecs, target.dim, ctx.field)


def oracle_equiv(ctx: CurveContext, twist) -> bool:
    """Does the dF image equal the naive partial-derivative piece J_{a+d, b+e}?"""
    a, b = twist
    naive = jacobian_piece(ctx, (a + ctx.d, b + ctx.e)).J
    return exactla.subspace_equal(image_dF(ctx, twist), naive)
