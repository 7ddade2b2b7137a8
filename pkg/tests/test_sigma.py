from __future__ import annotations

import pytest

from bijac import exactla, jacring
from bijac.bipoly import Monomial, monomial_basis
from bijac.fields import GF, QQ
from bijac.jacring import CurveContext
from bijac.sigma import SigmaSection, apply_dF, image_dF, oracle_equiv, sigma_dim, sigma_sections


def _count_by_family(a, b):
    """Independent count: product of range lengths per family."""
    n = lambda k: max(k, 0)  # noqa: E731
    return (
        n(a + 1) * n(b + 1)
        + n(a + 2) * n(b + 1)
        + (n(b + 1) if a >= -1 else 0)
        + n(a + 1) * n(b + 2)
        + (n(a + 1) if b >= -1 else 0)
    )


@pytest.mark.parametrize("a", range(-2, 5))
@pytest.mark.parametrize("b", range(-2, 5))
def test_enumeration_matches_dimension(a, b):
    assert len(sigma_sections(a, b)) == sigma_dim(a, b) == _count_by_family(a, b)


@pytest.mark.parametrize("twist,expected", [((0, 0), 7), ((-2, 5), 0), ((5, -2), 0), ((1, 1), 20)])
def test_sigma_dim_values(twist, expected):
    assert sigma_dim(*twist) == expected


def test_family_sizes_at_origin():
    fams = [s.family for s in sigma_sections(0, 0)]
    assert [fams.count(f) for f in range(1, 6)] == [1, 2, 1, 2, 1]


def test_out_of_range_rejected():
    with pytest.raises(ValueError):
        SigmaSection(2, (3, 0), (1, 1))
    with pytest.raises(ValueError):
        SigmaSection(3, (0,), (-2, 1))
    with pytest.raises(ValueError):
        SigmaSection(6, (0,), (0, 0))


@pytest.fixture(scope="module")
def ctx33():
    return CurveContext(jacring.curve_from_seed(3, 3, 2, 100), QQ)


def _expected_image(ctx, s):
    """Closed-form images of the five families.

    Family 5 carries y0^(b+1): w0 = y0/y1 raised to b+1 in the section,
    mirroring the x0^(a+1) of family 3.
    """
    a, b = s.twist
    Fx0, Fx1, Fy0, Fy1 = ctx.partials
    f, p = s.family, s.params
    if f == 1:
        return ctx.F.shift(Monomial(p[0], a - p[0], p[1], b - p[1]))
    if f == 2:
        return Fx0.shift(Monomial(p[0], a - p[0] + 1, p[1], b - p[1]))
    if f == 3:
        return Fx1.shift(Monomial(a + 1, 0, p[0], b - p[0])).scale(-1)
    if f == 4:
        return Fy0.shift(Monomial(p[0], a - p[0], p[1], b - p[1] + 1))
    return Fy1.shift(Monomial(p[0], a - p[0], b + 1, 0)).scale(-1)


def test_origin_examples(ctx33):
    assert apply_dF(ctx33, SigmaSection(1, (0, 0), (0, 0))) == ctx33.F
    assert apply_dF(ctx33, SigmaSection(2, (0, 0), (0, 0))) == ctx33.partials[0].shift((0, 1, 0, 0))
    assert apply_dF(ctx33, SigmaSection(3, (0,), (0, 0))) == ctx33.partials[1].shift((1, 0, 0, 0)).scale(-1)


@pytest.mark.parametrize("twist", [(0, 0), (1, 2), (2, 0), (-1, 1), (1, -1), (-1, -1)])
def test_images_match_closed_forms(ctx33, twist):
    for s in sigma_sections(*twist):
        img = apply_dF(ctx33, s)
        assert img.degree == (twist[0] + 3, twist[1] + 3)
        assert img == _expected_image(ctx33, s)


def test_boundary_images_use_other_partials(ctx33):
    # family 3 and 5 pick up only dF/dx1 and dF/dy1 after the Euler substitution
    for s in sigma_sections(1, 1):
        if s.family in (3, 5):
            img = apply_dF(ctx33, s)
            partial = ctx33.partials[1 if s.family == 3 else 3]
            shifts = monomial_basis(tuple(img.degree - partial.degree))
            assert any(img == partial.shift(m).scale(-1) for m in shifts)


@pytest.mark.parametrize("a", range(-1, 4))
@pytest.mark.parametrize("b", range(-1, 4))
def test_oracle_33(ctx33, a, b):
    assert oracle_equiv(ctx33, (a, b))


@pytest.mark.parametrize("twist", [(0, 0), (1, 1)])
def test_oracle_23(twist):
    ctx = CurveContext(jacring.curve_from_seed(2, 3, 0, 100), GF())
    assert oracle_equiv(ctx, twist)


def test_oracle_vacuous_at_minus_two(ctx33):
    assert image_dF(ctx33, (-2, 0)).dim == 0
    assert jacring.hilbert(ctx33, (1, 3))[1] == 0
    assert oracle_equiv(ctx33, (-2, 0))


def test_twist_zero_gives_full_jacobian_piece(ctx33):
    img = image_dF(ctx33, (0, 0))
    assert img.dim == 7
    assert img.contains(ctx33.F.coeff_vector())


def test_oracle_catches_a_broken_image(ctx33):
    # dropping one family changes the span, so the comparison is not vacuous
    vecs = [apply_dF(ctx33, s).coeff_vector() for s in sigma_sections(0, 0) if s.family != 2]
    broken = exactla.span(vecs, 16, QQ)
    assert not exactla.subspace_equal(broken, jacring.jacobian_piece(ctx33, (3, 3)).J)
