"""Individual certification checks and the verify-all sequence.

Each check takes a :class:`CurveContext` plus options and returns a
:class:`CheckRecord`.  :func:`run_check` adds the hybrid policy: a failing or
undecided verdict over a prime field is recomputed over QQ.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import ivhs, jacring, sigma
from .bipoly import BiDegree, euler_defect
from .fields import QQ, PrimeField
from .jacring import CurveContext
from .report import FAIL, PASS, UNDECIDED, VACUOUS, CertReport, CheckRecord


@dataclass(frozen=True)
class CheckOptions:
    trials: int = 20
    seed: int = 0
    height: int = 100
    cap: tuple[int, int] | None = None
    mu_probes: int = 10
    twist_min: int = -2
    twist_max: int = 3
    workers: int = 1


def _not_applicable(name: str, reason: str) -> CheckRecord:
    return CheckRecord(name, {}, {"applicable": False, "reason": reason}, VACUOUS)


def check_smooth(ctx: CurveContext, opts: CheckOptions) -> CheckRecord:
    v = jacring.certify_smooth(ctx, opts.cap)
    # A grid witness is diagnostic only; anything short of a certificate is
    # reported as undecided so exit code 3 covers every non-certified curve.
    verdict = PASS if v.smooth else UNDECIDED
    cap = opts.cap or (4 * ctx.d, 4 * ctx.e)
    return CheckRecord("smooth", {"cap": list(cap)}, v.to_dict(), verdict)


def check_euler(ctx: CurveContext, opts: CheckOptions) -> CheckRecord:
    ex, ey = euler_defect(ctx.F)
    ok = ex.is_zero() and ey.is_zero()
    return CheckRecord("euler", {}, {"x_defect": str(ex), "y_defect": str(ey)}, PASS if ok else FAIL)


def check_oracle(ctx: CurveContext, opts: CheckOptions) -> CheckRecord:
    rng = range(opts.twist_min, opts.twist_max + 1)
    results = []
    for a in rng:
        for b in rng:
            ok = sigma.oracle_equiv(ctx, (a, b))
            results.append(
                {
                    "twist": [a, b],
                    "sections": len(sigma.sigma_sections(a, b)),
                    "dim_J": jacring.hilbert(ctx, (a + ctx.d, b + ctx.e))[1],
                    "equal": ok,
                }
            )
    ok = all(r["equal"] for r in results)
    return CheckRecord(
        "oracle",
        {"twist_range": [opts.twist_min, opts.twist_max]},
        {"sweep": results},
        PASS if ok else FAIL,
    )


def check_top(ctx: CurveContext, opts: CheckOptions) -> CheckRecord:
    if min(ctx.d, ctx.e) < 2:
        return _not_applicable("top", "needs d, e >= 2")
    dim, ok = ivhs.top_piece_check(ctx)
    outputs = {"degree": list(ivhs.top_degree(ctx)), "dim_R": dim}
    if min(ctx.d, ctx.e) == 2:
        outputs["note"] = "recorded, not asserted for d or e = 2"
        return CheckRecord("top", {}, outputs, VACUOUS)
    return CheckRecord("top", {}, outputs, PASS if ok else FAIL)


def check_duality(ctx: CurveContext, opts: CheckOptions) -> CheckRecord:
    if min(ctx.d, ctx.e) < 2:
        return _not_applicable("duality", "needs d, e >= 2")
    return ivhs.duality_report(ctx)


def check_ramification(ctx: CurveContext, opts: CheckOptions) -> CheckRecord:
    expected = jacring.ramification_degree(ctx.d, ctx.e)
    res = jacring.scheme_length(jacring.ramification_generators(ctx), opts.cap)
    outputs = {
        "length": res.length,
        "stabilized": res.stabilized,
        "expected": expected,
        "trace": [[list(deg), c] for deg, c in res.trace],
    }
    if not res.stabilized:
        verdict = UNDECIDED
    else:
        verdict = PASS if res.length == expected else FAIL
    return CheckRecord("ramification", {"cap": list(opts.cap) if opts.cap else None}, outputs, verdict)


def check_mu(ctx: CurveContext, opts: CheckOptions) -> CheckRecord:
    if min(ctx.d, ctx.e) < 3:
        return _not_applicable("mu", "needs d, e >= 3")
    probes = []
    for i in range(opts.mu_probes):
        s = ivhs.derive_seed(opts.seed, 10_000 + i)
        G = ivhs.random_jacobian_element(ctx, s, opts.height)
        try:
            k = ivhs.mu_kernel_dim(ctx, G)
        except ValueError:
            probes.append({"seed": s, "kernel_dim": None, "rejected": "proportional to F"})
            continue
        probes.append({"seed": s, "kernel_dim": k})
    dims = [p["kernel_dim"] for p in probes if p["kernel_dim"] is not None]
    if not dims:
        verdict = UNDECIDED
    else:
        verdict = PASS if all(k == 0 for k in dims) else FAIL
    return CheckRecord(
        "mu",
        {"probes": opts.mu_probes, "seed": opts.seed, "height": opts.height},
        {"domain_dim": 2 * BiDegree(ctx.d - 4, ctx.e - 4).dim, "probes": probes},
        verdict,
    )


def check_ivhs(ctx: CurveContext, opts: CheckOptions) -> CheckRecord:
    if min(ctx.d, ctx.e) < 2:
        return _not_applicable("ivhs", "rational curve: genus 0, nothing to vary")
    return ivhs.certify_max_ivhs(ctx, opts.trials, opts.seed, opts.height, opts.workers)


def check_kernel_square(ctx: CurveContext, opts: CheckOptions, ivhs_record: CheckRecord | None = None) -> CheckRecord:
    if min(ctx.d, ctx.e) < 2 or ivhs_record is None or not ivhs_record.outputs.get("trace_unique"):
        return _not_applicable("kernel-square", "needs a unique trace and an IVHS witness")
    tau = ivhs.witness_tau(ivhs_record, ctx)
    maximal = ivhs_record.outputs["max_rank"] == ctx.genus
    return ivhs.kernel_square_check(ctx, tau, maximal=maximal)


def check_bounds(ctx: CurveContext, opts: CheckOptions) -> CheckRecord:
    if min(ctx.d, ctx.e) < 3:
        return _not_applicable("bounds", "needs d, e >= 3")
    rep = ivhs.bounds_report(ctx.d, ctx.e, ctx)
    d, e = ctx.d, ctx.e
    ok = (
        rep["lower"] == d * e - d - e
        and rep["upper"] == d * e - d - e - 4
        and rep["contradiction"]
        and rep["dims_equal"]
    )
    return CheckRecord("bounds", {"d": d, "e": e}, rep, PASS if ok else FAIL)


CHECKS = {
    "smooth": check_smooth,
    "euler": check_euler,
    "oracle": check_oracle,
    "top": check_top,
    "duality": check_duality,
    "ramification": check_ramification,
    "mu": check_mu,
    "ivhs": check_ivhs,
    "bounds": check_bounds,
}

VERIFY_ORDER = ("smooth", "euler", "oracle", "top", "duality", "ramification", "mu", "ivhs", "bounds")
NEEDS_SMOOTH = {"top", "duality", "ramification", "mu", "ivhs", "bounds"}


def run_check(name: str, ctx: CurveContext, opts: CheckOptions, hybrid: bool = False, **kw) -> CheckRecord:
    fn = CHECKS.get(name, None) if name != "kernel-square" else check_kernel_square
    rec = fn(ctx, opts, **kw)
    if hybrid and isinstance(ctx.field, PrimeField) and rec.verdict in (FAIL, UNDECIDED):
        first = rec
        rec = fn(ctx.with_field(QQ), opts, **kw)
        rec.outputs = dict(rec.outputs)
        rec.outputs["escalated_from"] = {"field": ctx.field.descriptor(), "verdict": first.verdict}
    rec.inputs = dict(rec.inputs)
    rec.inputs["field"] = (QQ if "escalated_from" in rec.outputs else ctx.field).descriptor()
    return rec


def verify_all(ctx: CurveContext, opts: CheckOptions, hybrid: bool = False, config: dict | None = None) -> CertReport:
    """Run every check in order; checks needing smoothness are skipped
    (recorded as undecided) when the curve is not certified smooth."""
    report = CertReport(config or {}, ctx.descriptor())
    smooth = True
    ivhs_rec = None
    for name in VERIFY_ORDER:
        if name in NEEDS_SMOOTH and not smooth:
            report.checks.append(
                CheckRecord(name, {}, {"skipped": "curve not certified smooth"}, UNDECIDED)
            )
            continue
        rec = run_check(name, ctx, opts, hybrid)
        report.checks.append(rec)
        if name == "smooth":
            smooth = rec.verdict == PASS
        if name == "ivhs":
            ivhs_rec = rec
    if smooth:
        report.checks.append(run_check("kernel-square", ctx, opts, hybrid, ivhs_record=ivhs_rec))
    return report
