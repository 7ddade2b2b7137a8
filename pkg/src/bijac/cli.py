"""Command-line front end.

Settings resolve in the order defaults < config file (key=value) <
environment (BIJAC_<FLAG>) < command-line flags.  Exit codes: 0 pass, 1 fail,
2 input error, 3 undecided.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
from dataclasses import asdict, dataclass
from pathlib import Path

from . import jacring, pipeline
from .bipoly import parse_bipoly
from .fields import DEFAULT_PRIME, QQ, PrimeField
from .jacring import CurveContext
from .report import EXIT_INPUT, EXIT_PASS, UNDECIDED, CertReport, CheckRecord, dumps

log = logging.getLogger("bijac")

ENV_PREFIX = "BIJAC_"
SUBCOMMANDS = ("dims", "smooth", "oracle", "top", "duality", "ramification", "mu", "ivhs", "bounds", "verify-all")


@dataclass
class RunConfig:
    subcommand: str = "verify-all"
    d: int = 3
    e: int = 3
    curve: str | None = None
    curve_seed: int | None = None
    field: str = "p"
    prime: int = DEFAULT_PRIME
    trials: int = 20
    seed: int = 0
    height: int = 100
    cap_a: int | None = None
    cap_b: int | None = None
    mu_probes: int = 10
    a_min: int = 0
    a_max: int | None = None
    b_min: int = 0
    b_max: int | None = None
    workers: int = 1
    json: str | None = None
    verbosity: int = 0

    def report_config(self) -> dict:
        """Everything that determines the results (not output or scheduling)."""
        out = asdict(self)
        for k in ("json", "verbosity", "workers"):
            out.pop(k)
        return out


_TYPES = {
    "d": int, "e": int, "curve": str, "curve_seed": int, "field": str, "prime": int,
    "trials": int, "seed": int, "height": int, "cap_a": int, "cap_b": int,
    "mu_probes": int, "a_min": int, "a_max": int, "b_min": int, "b_max": int,
    "workers": int, "json": str,
}


class InputError(ValueError):
    pass


def read_config_file(path: str) -> dict:
    values = {}
    for n, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise InputError(f"{path}:{n}: expected key=value")
        key, val = (s.strip() for s in line.split("=", 1))
        key = key.replace("-", "_")
        if key not in _TYPES:
            raise InputError(f"{path}:{n}: unknown key {key!r}")
        values[key] = val
    return values


def _convert(key: str, raw):
    try:
        return _TYPES[key](raw)
    except (TypeError, ValueError):
        raise InputError(f"invalid value {raw!r} for {key}") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    g = common.add_argument_group("common options")
    g.add_argument("--d", type=int, help="first bidegree (default 3)")
    g.add_argument("--e", type=int, help="second bidegree (default 3)")
    src = g.add_mutually_exclusive_group()
    src.add_argument("--curve", help="polynomial literal, or a file containing one")
    src.add_argument("--curve-seed", type=int, help="derive F from (d, e, seed, height)")
    g.add_argument("--field", choices=("p", "Q", "hybrid"), help="prime field, rationals, or prime with QQ escalation")
    g.add_argument("--prime", type=int, help=f"modulus for the prime field (default {DEFAULT_PRIME})")
    g.add_argument("--trials", type=int, help="tau samples for the IVHS search (default 20)")
    g.add_argument("--seed", type=int, help="master seed (default 0)")
    g.add_argument("--height", type=int, help="coefficient bound for random polynomials (default 100)")
    g.add_argument("--cap-a", type=int, help="escalation cap, first degree (default 4d)")
    g.add_argument("--cap-b", type=int, help="escalation cap, second degree (default 4e)")
    g.add_argument("--mu-probes", type=int, help="number of random G in J_{d,e} (default 10)")
    g.add_argument("--workers", type=int, help="threads for independent trials (default 1)")
    g.add_argument("--json", help="write the JSON report here ('-' for stdout)")
    g.add_argument("--config", help="key=value file mirroring the flags")
    g.add_argument("-v", "--verbose", action="count", default=0)

    parser = argparse.ArgumentParser(prog="bijac", description="Jacobian rings and IVHS of curves in P1 x P1")
    sub = parser.add_subparsers(dest="subcommand", required=True)
    for name in SUBCOMMANDS:
        p = sub.add_parser(name, parents=[common])
        if name == "dims":
            p.add_argument("--a-min", type=int)
            p.add_argument("--a-max", type=int)
            p.add_argument("--b-min", type=int)
            p.add_argument("--b-max", type=int)
    return parser


def resolve_config(args: argparse.Namespace, environ=None) -> RunConfig:
    environ = os.environ if environ is None else environ
    values: dict = {}
    if args.config:
        values.update(read_config_file(args.config))
    for key in _TYPES:
        env = environ.get(ENV_PREFIX + key.upper())
        if env is not None:
            values[key] = env
    for key in _TYPES:
        v = getattr(args, key, None)
        if v is not None:
            values[key] = v
    if args.curve is not None:
        values.pop("curve_seed", None)
    elif args.curve_seed is not None:
        values.pop("curve", None)
    cfg = RunConfig(subcommand=args.subcommand, verbosity=args.verbose)
    for key, raw in values.items():
        setattr(cfg, key, _convert(key, raw))
    if cfg.field not in ("p", "Q", "hybrid"):
        raise InputError(f"unknown field mode {cfg.field!r}")
    if cfg.curve is None and cfg.curve_seed is None:
        cfg.curve_seed = cfg.seed
    if cfg.d < 1 or cfg.e < 1:
        raise InputError("d and e must be positive")
    if cfg.trials < 1:
        raise InputError("trials must be at least 1")
    if cfg.height < 1:
        raise InputError("height must be positive")
    return cfg


def working_field(cfg: RunConfig):
    return QQ if cfg.field == "Q" else PrimeField(cfg.prime)


def load_curve(cfg: RunConfig) -> tuple[CurveContext, dict]:
    field = working_field(cfg)
    if cfg.curve is not None:
        text = cfg.curve
        source = {"kind": "literal"}
        if Path(text).is_file():
            text = Path(text).read_text(encoding="utf-8")
            source = {"kind": "file", "path": cfg.curve}
        F = parse_bipoly(text.strip(), (cfg.d, cfg.e))
    else:
        F = jacring.curve_from_seed(cfg.d, cfg.e, cfg.curve_seed, cfg.height)
        source = {"kind": "seed", "seed": cfg.curve_seed, "height": cfg.height}
    if F.is_zero():
        raise InputError("curve polynomial is zero")
    ctx = CurveContext(F, field)
    desc = {"d": ctx.d, "e": ctx.e, "F": str(F), "genus": ctx.genus}
    desc["source"] = source
    return ctx, desc


def check_options(cfg: RunConfig) -> pipeline.CheckOptions:
    cap = None
    if cfg.cap_a is not None or cfg.cap_b is not None:
        cap = (cfg.cap_a or 4 * cfg.d, cfg.cap_b or 4 * cfg.e)
    return pipeline.CheckOptions(
        trials=cfg.trials, seed=cfg.seed, height=cfg.height, cap=cap,
        mu_probes=cfg.mu_probes, workers=cfg.workers,
    )


def cmd_dims(cfg: RunConfig) -> tuple[dict, int]:
    ctx, curve = load_curve(cfg)
    opts = check_options(cfg)
    a_max = cfg.a_max if cfg.a_max is not None else max(3 * cfg.d - 4, 0)
    b_max = cfg.b_max if cfg.b_max is not None else max(3 * cfg.e - 4, 0)
    smooth = pipeline.check_smooth(ctx, opts)
    rows = []
    for a in range(cfg.a_min, a_max + 1):
        for b in range(cfg.b_min, b_max + 1):
            rows.append({"degree": [a, b], "dims": list(jacring.hilbert(ctx, (a, b)))})
    out = {
        "config": cfg.report_config(),
        "curve": curve,
        "smoothness": smooth.outputs["status"],
        "table": rows,
        "verdict": "pass",
    }
    return out, EXIT_PASS


def _single(cfg: RunConfig, name: str) -> CertReport:
    ctx, curve = load_curve(cfg)
    opts = check_options(cfg)
    hybrid = cfg.field == "hybrid"
    report = CertReport(cfg.report_config(), curve)
    if name in pipeline.NEEDS_SMOOTH:
        smooth = pipeline.run_check("smooth", ctx, opts, hybrid)
        report.checks.append(smooth)
        if smooth.verdict != "pass":
            report.checks.append(CheckRecord(name, {}, {"skipped": "curve not certified smooth"}, UNDECIDED))
            return report
    report.checks.append(pipeline.run_check(name, ctx, opts, hybrid))
    return report


def cmd_ivhs(cfg: RunConfig) -> tuple[dict, int]:
    report = _single(cfg, "ivhs")
    return report.to_dict(), report.exit_code


def cmd_verify_all(cfg: RunConfig) -> tuple[dict, int]:
    ctx, curve = load_curve(cfg)
    report = pipeline.verify_all(ctx, check_options(cfg), cfg.field == "hybrid", cfg.report_config())
    report.curve = curve
    return report.to_dict(), report.exit_code


def run(cfg: RunConfig) -> tuple[dict, int]:
    if cfg.subcommand == "dims":
        return cmd_dims(cfg)
    if cfg.subcommand == "verify-all":
        return cmd_verify_all(cfg)
    if cfg.subcommand == "ivhs":
        return cmd_ivhs(cfg)
    report = _single(cfg, cfg.subcommand)
    return report.to_dict(), report.exit_code


def format_table(result: dict) -> str:
    lines = []
    c = result["curve"]
    lines.append(f"curve ({c['d']},{c['e']}) genus {c['genus']}: {c['F']}")
    if "table" in result:
        lines.append(f"smoothness: {result['smoothness']}")
        lines.append(f"{'(a,b)':>10}  {'dim S':>6} {'dim J':>6} {'dim R':>6}")
        for row in result["table"]:
            a, b = row["degree"]
            s, j, r = row["dims"]
            lines.append(f"{f'({a},{b})':>10}  {s:>6} {j:>6} {r:>6}")
        return "\n".join(lines)
    for chk in result["checks"]:
        lines.append(f"{chk['name']:<14} {chk['verdict']:<13} {_summary(chk)}")
    lines.append(f"{'overall':<14} {result['verdict']}")
    return "\n".join(lines)


def _summary(chk: dict) -> str:
    o = chk["outputs"]
    name = chk["name"]
    if "skipped" in o:
        return o["skipped"]
    if o.get("applicable") is False:
        return o["reason"]
    if name == "smooth":
        return f"certifying degree {o['certifying_degree']}"
    if name == "oracle":
        return f"{sum(r['equal'] for r in o['sweep'])}/{len(o['sweep'])} twists agree"
    if name == "top":
        return f"dim R_{tuple(o['degree'])} = {o['dim_R']}"
    if name == "duality":
        return ", ".join(f"{k}: rank {v['rank']}" for k, v in o["items"].items())
    if name == "ramification":
        return f"length {o['length']} (expected {o['expected']}, stabilized={o['stabilized']})"
    if name == "mu":
        return f"kernel dims {[p['kernel_dim'] for p in o['probes']]}"
    if name == "ivhs":
        return f"{o['status']}: max rank {o['max_rank']} of g = {o['genus']}"
    if name == "bounds":
        return f"lower {o['lower']} > upper {o['upper']}"
    if name == "kernel-square":
        return f"kernel dim {o['kernel_dim']}"
    return ""


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.WARNING - 10 * min(args.verbose, 2), format="%(message)s")
    try:
        cfg = resolve_config(args)
        result, code = run(cfg)
    except (ValueError, OSError) as exc:
        print(f"bijac: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    text = dumps(result)
    if cfg.json == "-":
        sys.stdout.write(text)
    else:
        if cfg.json:
            Path(cfg.json).write_text(text, encoding="utf-8")
        print(format_table(result))
    return code


if __name__ == "__main__":
    sys.exit(main())
