from __future__ import annotations

import json
import os
import subprocess
import sys

import pytest

from bijac import cli
from bijac.report import EXIT_FAIL, EXIT_INPUT, EXIT_PASS, EXIT_UNDECIDED


def run_json(capsys, *argv):
    code = cli.main([*argv, "--json", "-"])
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip() else None), out


@pytest.fixture(autouse=True)
def _clean_env(monkeypatch):
    for key in list(os.environ):
        if key.startswith(cli.ENV_PREFIX):
            monkeypatch.delenv(key)


def test_verify_all_seed42_passes(capsys):
    code, rep, _ = run_json(capsys, "verify-all", "--seed", "42")
    assert code == EXIT_PASS
    assert rep["verdict"] == "pass"
    names = [c["name"] for c in rep["checks"]]
    assert names == [
        "smooth", "euler", "oracle", "top", "duality", "ramification", "mu", "ivhs", "bounds", "kernel-square",
    ]
    assert set(rep) == {"config", "curve", "checks", "verdict"}
    for chk in rep["checks"]:
        assert set(chk) == {"name", "inputs", "outputs", "verdict"}


def test_singular_curve_exits_undecided(capsys):
    code, rep, _ = run_json(capsys, "verify-all", "--curve", "x0^3*y0^3")
    assert code == EXIT_UNDECIDED
    by_name = {c["name"]: c for c in rep["checks"]}
    assert by_name["smooth"]["verdict"] == "undecided"
    for name in ("top", "duality", "ramification", "mu", "ivhs", "bounds"):
        assert by_name[name]["outputs"]["skipped"]
    assert "kernel-square" not in by_name


def test_ivhs_subcommand(capsys):
    code, rep, _ = run_json(capsys, "ivhs", "--d", "2", "--e", "4", "--trials", "10")
    assert code == EXIT_PASS
    ivhs_rec = rep["checks"][-1]
    assert ivhs_rec["outputs"]["status"] == "SUCCESS"
    assert ivhs_rec["outputs"]["max_rank"] == 3


@pytest.mark.parametrize(
    "argv",
    [
        ["ivhs", "--trials", "0"],
        ["smooth", "--curve", "x0*y0"],
        ["smooth", "--curve", "x0^3*y0^3 +"],
        ["smooth", "--d", "0"],
        ["smooth", "--field", "R"],
        ["smooth", "--curve", "0"],
    ],
)
def test_input_errors_exit_2(argv, capsys):
    try:
        code = cli.main(argv)
    except SystemExit as exc:  # argparse rejections
        code = exc.code
    assert code == EXIT_INPUT


def test_fail_exit_code_for_mismatch(monkeypatch, capsys):
    from bijac import pipeline
    from bijac.report import FAIL, CheckRecord

    monkeypatch.setitem(pipeline.CHECKS, "bounds", lambda ctx, opts: CheckRecord("bounds", {}, {}, FAIL))
    code = cli.main(["bounds", "--json", "-"])
    capsys.readouterr()
    assert code == EXIT_FAIL


def test_dims_table(capsys):
    code, rep, _ = run_json(capsys, "dims", "--a-min", "-1", "--a-max", "5", "--b-max", "5")
    assert code == EXIT_PASS
    table = {tuple(r["degree"]): tuple(r["dims"]) for r in rep["table"]}
    assert table[(1, 1)] == (4, 0, 4)
    assert table[(5, 5)] == (36, 35, 1)
    assert table[(-1, 3)] == (0, 0, 0)
    assert rep["smoothness"] == "certified-smooth"


def test_dims_nonsmooth_still_reports(capsys):
    code, rep, _ = run_json(capsys, "dims", "--curve", "x0^3*y0^3")
    assert code == EXIT_PASS
    assert rep["smoothness"] != "certified-smooth"
    assert len(rep["table"]) == 36


def test_dims_default_rectangle(capsys):
    _, rep, _ = run_json(capsys, "dims", "--d", "2", "--e", "3")
    degs = [tuple(r["degree"]) for r in rep["table"]]
    assert degs[0] == (0, 0) and degs[-1] == (2, 5)


def test_report_bytes_stable_across_runs_and_workers(tmp_path):
    outs = []
    for workers in ("1", "1", "4"):
        path = tmp_path / f"r{len(outs)}.json"
        cli.main(["verify-all", "--d", "3", "--e", "4", "--seed", "7", "--trials", "8", "--workers", workers, "--json", str(path)])
        outs.append(path.read_bytes())
    assert outs[0] == outs[1] == outs[2]


def test_config_precedence(tmp_path, monkeypatch, capsys):
    conf = tmp_path / "run.conf"
    conf.write_text("# comment\ntrials = 3\nseed=5\nheight = 40\n")
    monkeypatch.setenv("BIJAC_SEED", "6")
    _, rep, _ = run_json(capsys, "smooth", "--config", str(conf), "--height", "30")
    cfg = rep["config"]
    assert cfg["trials"] == 3  # file
    assert cfg["seed"] == 6  # env beats file
    assert cfg["height"] == 30  # flag beats everything
    assert cfg["curve_seed"] == 6  # follows the seed by default
    assert cfg["prime"] == 2147483647 and cfg["field"] == "p"


def test_config_file_errors(tmp_path, capsys):
    bad = tmp_path / "bad.conf"
    bad.write_text("colour = blue\n")
    assert cli.main(["smooth", "--config", str(bad)]) == EXIT_INPUT
    assert cli.main(["smooth", "--config", str(tmp_path / "missing.conf")]) == EXIT_INPUT


def test_curve_from_file(tmp_path, capsys):
    f = tmp_path / "curve.txt"
    f.write_text("x0^2*y0^2 + x1^2*y1^2 + x0*x1*y0*y1 - 2*x0^2*y1^2 + 3*x1^2*y0^2\n")
    code, rep, _ = run_json(capsys, "smooth", "--d", "2", "--e", "2", "--curve", str(f))
    assert rep["curve"]["source"] == {"kind": "file", "path": str(f)}
    assert code in (EXIT_PASS, EXIT_UNDECIDED)


def test_hybrid_escalates_on_prime_trouble(capsys):
    # mod 3 the cubes have vanishing derivatives, so no certificate exists there
    code, rep, _ = run_json(
        capsys, "smooth", "--field", "hybrid", "--prime", "3", "--curve", "x0^3*y0^3 + x1^3*y1^3 + x0*x1^2*y0^2*y1"
    )
    rec = rep["checks"][0]
    assert rec["inputs"]["field"] == {"kind": "QQ"}
    assert rec["outputs"]["escalated_from"]["field"] == {"kind": "GF", "p": 3}


def test_human_table(capsys):
    assert cli.main(["top", "--seed", "3"]) == EXIT_PASS
    out = capsys.readouterr().out
    assert "top" in out and "overall" in out and "pass" in out


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "bijac", "bounds", "--d", "4", "--e", "5", "--json", "-"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    rec = json.loads(proc.stdout)["checks"][-1]
    assert (rec["outputs"]["lower"], rec["outputs"]["upper"]) == (11, 7)
