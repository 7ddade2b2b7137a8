from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bijac import exactla, jacring
from bijac.bipoly import BiPoly, monomial_basis, parse_bipoly, random_bipoly
from bijac.fields import GF, QQ
from bijac.jacring import CurveContext


@pytest.fixture(scope="module")
def ctx33():
    return CurveContext(jacring.curve_from_seed(3, 3, 0, 100), QQ)


def test_context_constants(ctx33):
    assert (ctx33.d, ctx33.e, ctx33.genus, ctx33.q, ctx33.p_g) == (3, 3, 4, 0, 0)


def test_context_rejects_bad_input():
    with pytest.raises(ValueError):
        CurveContext(BiPoly.zero((3, 3)))
    with pytest.raises(ValueError):
        CurveContext(random_bipoly((0, 2), 1, 5))


def test_generators_small_degrees(ctx33):
    assert jacring.jacobian_generators(ctx33, (2, 2)) == []
    gens = jacring.jacobian_generator_polys(ctx33, (2, 3))
    assert gens == [ctx33.partials[0], ctx33.partials[1]]
    assert len(jacring.jacobian_generators(ctx33, (3, 3))) == 8


def test_euler_relation_among_eight_generators(ctx33):
    assert exactla.rank(jacring.jacobian_generators(ctx33, (3, 3)), QQ, 16) == 7


@pytest.mark.parametrize(
    "deg,expected",
    [((2, 2), (9, 0, 9)), ((1, 1), (4, 0, 4)), ((3, 3), (16, 7, 9)), ((5, 5), (36, 35, 1)), ((-1, 5), (0, 0, 0))],
)
def test_hilbert_33(ctx33, deg, expected):
    assert jacring.hilbert(ctx33, deg) == expected


@pytest.mark.parametrize("d,e", [(2, 2), (2, 3), (3, 4), (4, 4)])
def test_low_pieces(d, e):
    ctx = CurveContext(jacring.curve_from_seed(d, e, 1, 100), GF())
    assert jacring.hilbert(ctx, (d - 1, e - 1)) == (d * e, 0, d * e)
    assert jacring.certify_smooth(ctx).smooth
    assert jacring.hilbert(ctx, (d - 1, e))[1] == 2
    assert jacring.hilbert(ctx, (d, e - 1))[1] == 2
    assert jacring.hilbert(ctx, (d, e))[1] <= 7


def test_F_lies_in_its_jacobian_piece(ctx33):
    assert jacring.jacobian_piece(ctx33, (3, 3)).J.contains(ctx33.F.coeff_vector())


def test_piece_dimensions_add_up(ctx33):
    for a in range(0, 6):
        for b in range(0, 6):
            s, j, r = jacring.hilbert(ctx33, (a, b))
            assert s == (a + 1) * (b + 1) == j + r


@given(st.integers(2, 5), st.integers(2, 5), st.integers(0, 2), st.integers(0, 2), st.integers(0, 10**6))
@settings(max_examples=25, deadline=None)
def test_ideal_absorbs_monomials(a, b, da, db, seed):
    ctx = CurveContext(jacring.curve_from_seed(3, 2, 4, 50), GF())
    piece = jacring.jacobian_piece(ctx, (a, b))
    if not piece.J.dim:
        return
    v = piece.J.basis[seed % piece.J.dim]
    elem = BiPoly.from_vector((a, b), v, ctx.field)
    target = jacring.jacobian_piece(ctx, (a + da, b + db)).J
    for m in monomial_basis((da, db)):
        assert target.contains(elem.shift(m).coeff_vector())


def test_R_reps_are_monomials(ctx33):
    piece = jacring.jacobian_piece(ctx33, (4, 4))
    assert len(piece.R_reps) == piece.dim_R == 5
    assert all(len(p.terms) == 1 for p in piece.R_reps)


def test_cache_consistent_under_threads():
    F = jacring.curve_from_seed(3, 3, 5, 100)
    shared = CurveContext(F, GF())
    degs = [(a, b) for a in range(6) for b in range(6)] * 3
    with ThreadPoolExecutor(8) as pool:
        got = list(pool.map(lambda d: jacring.hilbert(shared, d), degs))
    fresh = CurveContext(F, GF())
    assert got == [jacring.hilbert(fresh, d) for d in degs]
    assert shared._pieces[(4, 4)].J == fresh._pieces[(4, 4)].J


# -- smoothness ---------------------------------------------------------------


@pytest.mark.parametrize("d,e", [(1, 1), (2, 3), (3, 3)])
def test_monomial_curve_not_certified(d, e):
    ctx = CurveContext(BiPoly.monomial((d, 0, e, 0)))
    v = jacring.certify_smooth(ctx)
    assert not v.smooth
    assert v.status in (jacring.SINGULAR_WITNESSED, jacring.UNDECIDED)
    assert v.trace


def test_random_curves_mostly_smooth():
    verdicts = [jacring.certify_smooth(CurveContext(jacring.curve_from_seed(3, 3, s, 100), GF())) for s in range(20)]
    assert sum(v.smooth for v in verdicts) >= 18
    for v in verdicts:
        if v.smooth:
            a, b = v.certifying_degree
            assert a >= 3 and b >= 3


def test_reducible_curve_not_certified():
    p = random_bipoly((1, 1), 11, 20)
    q = random_bipoly((1, 1), 12, 20)
    v = jacring.certify_smooth(CurveContext(p * q))
    assert not v.smooth


def test_certificate_over_prime_matches_rationals(ctx33):
    assert jacring.certify_smooth(ctx33).smooth
    assert jacring.certify_smooth(ctx33.with_field(GF())).smooth


def test_cap_below_degree_rejected(ctx33):
    with pytest.raises(ValueError):
        jacring.certify_smooth(ctx33, (2, 3))


def test_singular_grid_witness():
    # F = y0 (x0 - x1) (x0 y0 + x1 y1); the first two factors meet at x0 = x1, y0 = 0
    F = parse_bipoly("x0^2*y0^2 - x0*x1*y0^2 + x0*x1*y0*y1 - x1^2*y0*y1", (2, 2))
    v = jacring.certify_smooth(CurveContext(F))
    assert v.status == jacring.SINGULAR_WITNESSED
    pt = v.witness
    assert all(p.evaluate(pt) == 0 for p in CurveContext(F).partials)


# -- scheme length ------------------------------------------------------------


@pytest.mark.parametrize("seed", range(3))
def test_ramification_length_33(seed):
    ctx = CurveContext(jacring.curve_from_seed(3, 3, seed, 100), GF())
    res = jacring.scheme_length(jacring.ramification_generators(ctx))
    assert res.stabilized and res.length == 12 == jacring.ramification_degree(3, 3)


def test_length_zero_when_ideal_fills():
    gens = [BiPoly.monomial(m) for m in monomial_basis((1, 1))]
    res = jacring.scheme_length(gens)
    assert res.stabilized and res.length == 0


def test_curve_alone_never_stabilizes(ctx33):
    res = jacring.scheme_length([ctx33.F])
    assert not res.stabilized
    assert res.length > 0


def test_scheme_length_needs_generators():
    with pytest.raises(ValueError):
        jacring.scheme_length([])
