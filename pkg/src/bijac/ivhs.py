"""Trace, pairings and the infinitesimal variation of Hodge structure.

For a curve F of bidegree (d, e) the top piece is R_{3d-4,3e-4}; when it is
one-dimensional the trace is the (normalized) functional on S_{3d-4,3e-4}
vanishing on J.  The IVHS form of a deformation tau in S_{d,e} is the
symmetric g x g matrix tr(tau * m_i * m_j) over the monomials m_i of
S_{d-2,e-2} (where J vanishes, so R_{d-2,e-2} = S_{d-2,e-2}).
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import exactla
from .bipoly import BiDegree, BiPoly, monomial_basis, monomial_index, parse_bipoly, random_bipoly
from .jacring import CurveContext, hilbert, jacobian_generator_polys, jacobian_piece
from .report import FAIL, PASS, UNDECIDED, VACUOUS, CheckRecord
from .sigma import sigma_dim

SUCCESS = "SUCCESS"
UNDECIDED_GENERIC = "UNDECIDED-GENERIC"


class TraceError(ValueError):
    """The top piece is not one-dimensional, so the trace is not unique."""


def top_degree(ctx: CurveContext) -> BiDegree:
    return BiDegree(3 * ctx.d - 4, 3 * ctx.e - 4)


def top_piece_check(ctx: CurveContext) -> tuple[int, bool]:
    if ctx.d < 2 or ctx.e < 2:
        raise ValueError("top piece needs d, e >= 2")
    dim_R = hilbert(ctx, top_degree(ctx))[2]
    return dim_R, dim_R == 1


@dataclass(frozen=True)
class TraceFunctional:
    degree: BiDegree
    coefficients: tuple
    normalization: str = "first nonzero coordinate = 1"
    unique: bool = True

    def __call__(self, p: BiPoly):
        if p.degree != self.degree:
            raise ValueError(f"trace lives on S_{tuple(self.degree)}, got S_{tuple(p.degree)}")
        f = p.field
        return f.reduce(sum(c * self.coefficients[monomial_index(m)] for m, c in p.terms.items()))


def trace_space(ctx: CurveContext) -> exactla.Subspace:
    """All functionals on S_top vanishing on J_top (dimension = dim R_top)."""
    deg = top_degree(ctx)
    J = jacobian_piece(ctx, deg).J
    return exactla.kernel_basis(J.basis, ctx.field, deg.dim)


def trace_functionals(ctx: CurveContext) -> list[TraceFunctional]:
    """RREF basis of the trace space; a single element when the top is 1-dim."""
    W = trace_space(ctx)
    unique = W.dim == 1
    return [TraceFunctional(top_degree(ctx), tuple(v), unique=unique) for v in W.basis]


def trace_functional(ctx: CurveContext) -> TraceFunctional:
    fns = trace_functionals(ctx)
    if len(fns) != 1:
        raise TraceError(f"top piece R_{tuple(top_degree(ctx))} has dimension {len(fns)}, not 1")
    return fns[0]


def _trace_or_default(ctx, trace):
    return trace if trace is not None else trace_functional(ctx)


def complementary_degree(ctx: CurveContext, deg) -> BiDegree:
    return top_degree(ctx) - deg


def pairing_matrix(ctx: CurveContext, deg, trace: TraceFunctional | None = None) -> list[list]:
    """Matrix of (u, v) -> tr(u v) on R-representatives of deg x complementary deg.

    Rows follow the complement monomials of R_deg, columns those of the
    complementary piece.
    """
    deg = BiDegree(*deg)
    comp = complementary_degree(ctx, deg)
    if min(deg) < 0 or min(comp) < 0:
        raise ValueError(f"pairing degree {tuple(deg)} out of range for top {tuple(top_degree(ctx))}")
    t = _trace_or_default(ctx, trace).coefficients
    rb, cb = monomial_basis(tuple(deg)), monomial_basis(tuple(comp))
    row_monos = [rb[c] for c in jacobian_piece(ctx, deg).R.free_columns]
    col_monos = [cb[c] for c in jacobian_piece(ctx, comp).R.free_columns]
    return [[t[monomial_index(u * v)] for v in col_monos] for u in row_monos]


def pairing_on_polys(ctx: CurveContext, us: Sequence[BiPoly], vs: Sequence[BiPoly], trace=None) -> list[list]:
    tr = _trace_or_default(ctx, trace)
    return [[tr(u * v) for v in vs] for u in us]


@dataclass(frozen=True)
class IVHSForm:
    tau: BiPoly
    matrix: tuple[tuple, ...]
    basis: tuple  # monomials of S_{d-2,e-2}

    @property
    def size(self) -> int:
        return len(self.basis)

    def is_symmetric(self) -> bool:
        return all(self.matrix[i][j] == self.matrix[j][i] for i in range(self.size) for j in range(i))

    def rank(self, field) -> int:
        if not self.basis:
            return 0
        return exactla.rank(self.matrix, field, self.size)


def btau_matrix(ctx: CurveContext, tau: BiPoly, trace: TraceFunctional | None = None) -> IVHSForm:
    if tau.degree != ctx.degree:
        raise ValueError(f"tau must have bidegree {tuple(ctx.degree)}")
    tau = tau.over(ctx.field)
    t = _trace_or_default(ctx, trace).coefficients
    f = ctx.field
    basis = monomial_basis((ctx.d - 2, ctx.e - 2))
    n = len(basis)
    M = [[f.zero] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            mij = basis[i] * basis[j]
            val = f.reduce(sum(c * t[monomial_index(m * mij)] for m, c in tau.terms.items()))
            M[i][j] = M[j][i] = val
    return IVHSForm(tau, tuple(tuple(r) for r in M), basis)


def derive_seed(seed: int, index: int) -> int:
    """Independent 64-bit seed for trial ``index`` of a run seeded by ``seed``."""
    ss = np.random.SeedSequence(entropy=seed % 2**64, spawn_key=(index,))
    return int(ss.generate_state(1, dtype=np.uint64)[0])


def _trial_ranks(ctx, trace, taus, workers):
    def one(tau):
        return btau_matrix(ctx, tau, trace).rank(ctx.field)

    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(one, taus))
    return [one(tau) for tau in taus]


def _d2_injectivity(ctx: CurveContext, trace: TraceFunctional) -> dict:
    """alpha -> lambda(alpha^2) on S_{d-2,e-2} when min(d, e) = 2.

    With J_{2d-4,2e-4} = 0, injectivity of the pairing R_{2d-4,2e-4} x R_{d,e}
    forces alpha^2 = 0 in the polynomial ring, hence alpha = 0.
    """
    deg = BiDegree(2 * ctx.d - 4, 2 * ctx.e - 4)
    dim_S, dim_J, dim_R = hilbert(ctx, deg)
    M = pairing_matrix(ctx, deg, trace)
    r = exactla.rank(M, ctx.field, hilbert(ctx, ctx.degree)[2]) if M else 0
    return {
        "degree": list(deg),
        "dim_J": dim_J,
        "dim_R": dim_R,
        "pairing_rank": r,
        "injective": dim_J == 0 and r == dim_R,
    }


def certify_max_ivhs(
    ctx: CurveContext,
    trials: int,
    seed: int,
    height: int = 100,
    workers: int = 1,
    taus: Sequence[BiPoly] | None = None,
) -> CheckRecord:
    """Search for tau with rank B_tau = g (lower semicontinuity makes one
    witness a certificate for general tau).

    Taus are drawn from S_{d,e} with per-trial seeds ``derive_seed(seed, i)``
    unless given explicitly.  When the top piece is not one-dimensional, every
    basis functional of the trace space must admit a witness.
    """
    if trials < 1:
        raise ValueError("trials must be at least 1")
    if ctx.d < 2 or ctx.e < 2:
        raise ValueError("IVHS certification needs d, e >= 2")
    g = ctx.genus
    seeds = [derive_seed(seed, i) for i in range(trials)]
    if taus is None:
        taus = [random_bipoly(ctx.degree, s, height, ctx.field) for s in seeds]
        tau_source = "random"
    else:
        taus = [t.over(ctx.field) for t in taus][:trials]
        seeds = seeds[: len(taus)]
        tau_source = "given"
    traces = trace_functionals(ctx)
    per_trace = []
    for tr in traces:
        ranks = _trial_ranks(ctx, tr, taus, workers)
        hist: dict[int, int] = {}
        for r in ranks:
            hist[r] = hist.get(r, 0) + 1
        best = max(ranks)
        wi = ranks.index(best)
        per_trace.append(
            {
                "ranks": ranks,
                "histogram": {str(k): hist[k] for k in sorted(hist)},
                "max_rank": best,
                "witness_trial": wi,
                "witness_seed": seeds[wi] if tau_source == "random" else None,
                "witness_tau": str(taus[wi]),
            }
        )
    found = bool(traces) and all(p["max_rank"] == g for p in per_trace)
    outputs = {
        "genus": g,
        "maximal_rank": g - ctx.q,
        "trace_dim": len(traces),
        "trace_unique": len(traces) == 1,
        "max_rank": min(p["max_rank"] for p in per_trace) if per_trace else 0,
        "witness_seed": per_trace[0]["witness_seed"] if per_trace else None,
        "trials": per_trace,
        "tau_source": tau_source,
    }
    injective = None
    if min(ctx.d, ctx.e) == 2 and traces:
        routes = [_d2_injectivity(ctx, tr) for tr in traces]
        injective = all(r["injective"] for r in routes)
        outputs["d2_injectivity"] = routes
    status = SUCCESS if (found or injective) else UNDECIDED_GENERIC
    outputs["status"] = status
    if tau_source == "given" and not found:
        outputs["note"] = "non-generic sample"
    return CheckRecord(
        "ivhs",
        {"trials": trials, "seed": seed, "height": height},
        outputs,
        PASS if status == SUCCESS else UNDECIDED,
    )


def witness_tau(record: CheckRecord, ctx: CurveContext) -> BiPoly:
    return parse_bipoly(record.outputs["trials"][0]["witness_tau"], ctx.degree, ctx.field)


def _proportional(F: BiPoly, G: BiPoly) -> bool:
    return exactla.rank([F.coeff_vector(), G.coeff_vector()], F.field, F.degree.dim) < 2


def mu_kernel_dim(ctx: CurveContext, G: BiPoly) -> int:
    """dim ker of (A, B) -> A F + B G on S_{d-4,e-4} + S_{d-4,e-4}."""
    if ctx.d < 3 or ctx.e < 3:
        raise ValueError("mu_G needs d, e >= 3")
    G = G.over(ctx.field)
    if G.degree != ctx.degree:
        raise ValueError(f"G must have bidegree {tuple(ctx.degree)}")
    if _proportional(ctx.F, G):
        raise ValueError("G is proportional to F")
    dom = monomial_basis((ctx.d - 4, ctx.e - 4))
    if not dom:
        return 0
    target = BiDegree(2 * ctx.d - 4, 2 * ctx.e - 4)
    rows = [ctx.F.shift(m).coeff_vector() for m in dom] + [G.shift(m).coeff_vector() for m in dom]
    return len(rows) - exactla.rank(rows, ctx.field, target.dim)


def random_jacobian_element(ctx: CurveContext, seed: int, height: int = 100) -> BiPoly:
    """Integer combination of the eight generators x_i F_{x_j}, y_i F_{y_j} of J_{d,e}."""
    gens = jacobian_generator_polys(ctx, ctx.degree)
    rng = np.random.default_rng(seed % 2**64)
    coeffs = rng.integers(-height, height, size=len(gens), endpoint=True)
    out = BiPoly.zero(ctx.degree, ctx.field)
    for c, g in zip(coeffs, gens):
        out = out + g.scale(int(c))
    return out


def kernel_square_check(ctx: CurveContext, tau_star: BiPoly, maximal: bool = True, trace=None) -> CheckRecord:
    """For alpha in ker B_tau*, evaluate tr(alpha^2 r) over representatives r of R_{d,e}.

    The vanishing is only asserted when ``maximal`` is set (tau* of maximal
    rank); otherwise the evaluations are diagnostic.
    """
    tr = _trace_or_default(ctx, trace)
    form = btau_matrix(ctx, tau_star, tr)
    n = form.size
    K = exactla.kernel_basis(form.matrix, ctx.field, n) if n else exactla.zero_subspace(0, ctx.field)
    inputs = {"tau_star": str(tau_star), "maximal": maximal}
    if K.dim == 0:
        return CheckRecord("kernel-square", inputs, {"kernel_dim": 0, "evaluations": []}, VACUOUS)
    reps = jacobian_piece(ctx, ctx.degree).R_reps
    evals = []
    for v in K.basis:
        alpha = BiPoly.from_vector((ctx.d - 2, ctx.e - 2), v, ctx.field)
        sq = alpha * alpha
        evals.append([tr(sq * r) for r in reps])
    vanish = all(x == 0 for row in evals for x in row)
    outputs = {"kernel_dim": K.dim, "evaluations": evals, "all_vanish": vanish}
    if not maximal:
        outputs["note"] = "tau* not known to be of maximal rank; diagnostic only"
        return CheckRecord("kernel-square", inputs, outputs, UNDECIDED)
    return CheckRecord("kernel-square", inputs, outputs, PASS if vanish else FAIL)


def bounds_report(d: int, e: int, ctx: CurveContext | None = None) -> dict:
    """Lower bound de-d-e against upper bound de-d-e-4 on the kernel-square locus.

    With ``ctx`` the intermediate dimensions of the upper-bound chain are
    computed as well.
    """
    if d < 3 or e < 3:
        raise ValueError("bounds need d, e >= 3")
    lower = (d - 1) * (e - 1) - 1
    upper = d * e - d - e - 4
    out = {
        "lower": lower,
        "upper": upper,
        "contradiction": lower > upper,
        "h0_sigma_L": sigma_dim(0, 0),
    }
    if ctx is not None:
        _, dim_J2, dim_R2 = hilbert(ctx, (2 * d - 4, 2 * e - 4))
        _, dim_Jde, dim_Rde = hilbert(ctx, (d, e))
        dim_S_mu = BiDegree(d - 4, e - 4).dim
        out.update(
            {
                "dim_J_2d-4_2e-4": dim_J2,
                "dim_R_2d-4_2e-4": dim_R2,
                "dim_R_d_e": dim_Rde,
                "dim_J_d_e": dim_Jde,
                "dims_equal": dim_R2 == dim_Rde,
                "chain": [
                    dim_J2 - 2 * dim_S_mu,
                    d * e - d - e - 10 + dim_Jde,
                    d * e - d - e - 10 + sigma_dim(0, 0),
                ],
            }
        )
    return out


def _duality_items(ctx: CurveContext, tr: TraceFunctional) -> dict:
    d, e = ctx.d, ctx.e
    items = {}
    deg1 = BiDegree(2 * d - 4, 2 * e - 4)
    rows1 = hilbert(ctx, deg1)[2]
    cols1 = hilbert(ctx, ctx.degree)[2]
    M1 = pairing_matrix(ctx, deg1, tr)
    r1 = exactla.rank(M1, ctx.field, cols1) if M1 else 0
    if min(d, e) >= 3:
        items["iso_K2L2"] = {
            "source_dim": rows1, "target_dim": cols1, "rank": r1,
            "holds": rows1 == cols1 == r1,
        }
    else:
        items["injective_K2L2"] = {
            "source_dim": rows1, "target_dim": cols1, "rank": r1,
            "holds": r1 == rows1,
        }
    deg3 = BiDegree(2 * d - 2, 2 * e - 2)
    rows3 = hilbert(ctx, deg3)[2]
    cols3 = hilbert(ctx, (d - 2, e - 2))[2]
    M3 = pairing_matrix(ctx, deg3, tr)
    r3 = exactla.rank(M3, ctx.field, cols3) if M3 else 0
    items["surjective_KL2"] = {
        "source_dim": rows3, "target_dim": cols3, "rank": r3,
        "kernel_dim": rows3 - r3,
        "holds": r3 == cols3 and rows3 - r3 == 1,
    }
    return items


def duality_report(ctx: CurveContext) -> CheckRecord:
    """Ranks of the duality maps R_{2d-4,2e-4} -> R_{d,e}^* and R_{2d-2,2e-2} -> R_{d-2,e-2}^*."""
    if ctx.d < 2 or ctx.e < 2:
        raise ValueError("duality needs d, e >= 2")
    traces = trace_functionals(ctx)
    if not traces:
        return CheckRecord("duality", {}, {"trace_dim": 0}, UNDECIDED)
    per = [_duality_items(ctx, tr) for tr in traces]
    holds = all(item["holds"] for items in per for item in items.values())
    outputs = {"trace_dim": len(traces), "trace_unique": len(traces) == 1, "items": per[0]}
    if len(per) > 1:
        outputs["items_per_trace"] = per
    return CheckRecord("duality", {}, outputs, PASS if holds else FAIL)
