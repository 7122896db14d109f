"""Command line behavior: output formats, config handling, exit codes."""

import json
import math

import pytest

from driftspec import cli, verification
from driftspec.verification import CheckResult


def run_cli(*argv):
    return cli.main(list(argv))


def test_taylor_output(capsys):
    assert run_cli("taylor", "--order", "2") == 0
    out = capsys.readouterr().out.splitlines()
    assert out[0] == "lambda_0 = 1 = 1"
    assert out[1].startswith("lambda_1 = pi^2/12 - 1/2 = 0.322467033424")
    assert out[2].startswith("lambda_2 = pi^4/720 - 5*pi^2/48 + 7/8 = ")


def test_eig_drift_output(capsys):
    assert run_cli("eig-drift", "--a", "1", "--D", str(math.pi)) == 0
    out = capsys.readouterr().out
    assert "lambda_bar(a=1, D=3.14159265359) = 1.5795219125" in out
    assert "fd_oracle" in out and "cross_check_diff" in out


def test_eig_weber_output(capsys):
    assert run_cli("eig-weber", "--b", "1", "--D", str(math.pi)) == 0
    assert "lambda_hat(b=1, D=3.14159265359) = 1.30574169068" in capsys.readouterr().out


def test_diameter_output(capsys):
    assert run_cli("diameter", "--a", "1") == 0
    out = capsys.readouterr().out
    assert "basic_bound = 2.56509966032" in out
    assert "improved_bound = 2.61385945562" in out


def test_config_supplies_and_flags_override(tmp_path, capsys):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"a": 1.0, "D": math.pi}))
    assert run_cli("eig-drift", "--config", str(cfg)) == 0
    out1 = capsys.readouterr().out
    assert "lambda_bar(a=1, D=3.14159265359)" in out1
    # explicit flag wins over the config value
    assert run_cli("eig-drift", "--config", str(cfg), "--a", "0") == 0
    assert "lambda_bar(a=0, D=3.14159265359) = 1" in capsys.readouterr().out


def test_sharpness_sweep_row_frozen(tmp_path, capsys):
    out = tmp_path / "s.csv"
    assert run_cli("sharpness", "--r-list", "0.1", "--out", str(out)) == 0
    capsys.readouterr()
    lines = out.read_text().splitlines()
    assert lines[0] == "r,delta,min_rcf_margin,diameter,lambda_sym,lower_sandwich,upper_sandwich"
    assert lines[1] == "0.1,0.01,0,3.14159265359,1.67944917014,1.5795219125,1.81603884106"


def test_sharpness_sweep_deterministic(tmp_path, capsys):
    out1, out2 = tmp_path / "a.csv", tmp_path / "b.csv"
    assert run_cli("sharpness", "--r-list", "0.2,0.1", "--out", str(out1)) == 0
    assert run_cli("sharpness", "--r-list", "0.2,0.1", "--out", str(out2), "--jobs", "2") == 0
    capsys.readouterr()
    assert out1.read_bytes() == out2.read_bytes()


def test_profile_report_from_config(tmp_path, capsys):
    cfg = tmp_path / "spec.json"
    cfg.write_text(json.dumps({"n": 3, "r": 0.1, "delta": 0.01, "D": math.pi,
                               "a": 1.0, "grid_points": 256}))
    out = tmp_path / "profile.csv"
    assert run_cli("sharpness", "--config", str(cfg), "--out", str(out)) == 0
    capsys.readouterr()
    lines = out.read_text().splitlines()
    assert lines[0] == "s,k,y,yprime,f,fprime,rcf_radial,rcf_tangential"
    first = lines[1].split(",")
    assert first[0] == "0" and first[2] == "0"   # pole row: s = 0, y = 0
    assert len(lines) > 100


def test_verify_subset_and_list(capsys):
    assert run_cli("verify", "--list") == 0
    names = capsys.readouterr().out.split()
    assert "series.exact_coefficients" in names
    assert run_cli("verify", "series.exact_coefficients") == 0
    out = capsys.readouterr().out
    assert "PASS  series.exact_coefficients" in out
    assert "1/1 checks passed" in out


def test_verify_failure_exit_code(capsys):
    verification.CHECKS["test.forced"] = lambda: CheckResult(
        "test.forced", False, 1.0, 0.0, "forced")
    try:
        assert run_cli("verify", "test.forced") == 1
    finally:
        del verification.CHECKS["test.forced"]
    captured = capsys.readouterr()
    assert "FAIL  test.forced" in captured.out
    assert "1 check(s) failed" in captured.err


@pytest.mark.parametrize("argv", [
    ("eig-drift", "--a", "1"),                         # missing required option
    ("eig-weber", "--b", "-2", "--D", "3"),            # invalid parameter
    ("taylor", "--order", "99"),                       # order above the cap
    ("sharpness", "--r-list", "0.2", "--D", "0.5"),    # cap does not fit
    ("verify", "no.such.check"),                       # unknown check name
    ("no-such-command",),
])
def test_invalid_arguments_exit_2(argv, capsys):
    assert run_cli(*argv) == 2
    capsys.readouterr()


def test_bad_config_exits_2(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run_cli("eig-drift", "--config", str(bad)) == 2
    unknown = tmp_path / "u.json"
    unknown.write_text(json.dumps({"a": 1.0, "D": 3.0, "bogus": 1}))
    assert run_cli("eig-drift", "--config", str(unknown)) == 2
    err = capsys.readouterr().err
    assert "unknown config keys: bogus" in err


def test_solver_failure_exits_3(capsys):
    # the weight underflows to zero at this drift strength
    assert run_cli("eig-drift", "--a", "1e6", "--D", "5") == 3
    assert "solver failure" in capsys.readouterr().err


def test_jobs_validation_fails_before_any_work(monkeypatch, tmp_path, capsys):
    out = str(tmp_path / "f.csv")
    monkeypatch.setenv("DRIFTSPEC_JOBS", "0")
    assert run_cli("figure1", "--out", out) == 2
    monkeypatch.delenv("DRIFTSPEC_JOBS")
    assert run_cli("figure1", "--out", out, "--jobs", "0") == 2
    capsys.readouterr()


def test_help_exits_zero(capsys):
    assert run_cli("--help") == 0
    assert "figure1" in capsys.readouterr().out
