import json
import math
import re
import subprocess
import sys

import pytest

from barneszeta import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_eval_series(capsys):
    code, out, _ = run(capsys, "eval", "--r", "2", "--w", "1,1", "--a", "1", "--s", "3")
    rec = json.loads(out)
    assert code == 0
    assert rec["method"] == "series"
    assert rec["value"] == pytest.approx(math.pi**2 / 6, rel=1e-13)


def test_eval_strip(capsys):
    code, out, _ = run(capsys, "eval", "--r", "2", "--w", "1,1", "--a", "0.5", "--s", "1.5")
    assert code == 0
    assert json.loads(out)["method"] == "strip2"


def test_eval_pole(capsys):
    code, out, err = run(capsys, "eval", "--r", "2", "--w", "1,1", "--a", "0.5", "--s", "2")
    assert code == 2
    assert out == ""
    assert "pole at s=2" in err


def test_eval_complex_point(capsys):
    code, out, _ = run(capsys, "eval", "--w", "1,2", "--a", "0.5", "--s", "0.5+3j")
    rec = json.loads(out)
    assert code == 0 and rec["method"] == "general" and "value_imag" in rec


def test_eval_tolerance_breach_surfaces(capsys):
    code, out, err = run(capsys, "eval", "--w", "1,1", "--a", "0.5", "--s", "0.5", "--tol", "1e-30")
    assert code == 3
    assert "exceeds tolerance" in err
    assert json.loads(out)["err_est"] > 1e-30


@pytest.mark.parametrize("argv", [
    ["eval", "--r", "3", "--w", "1,1", "--a", "0.5", "--s", "1.5"],
    ["eval", "--w", "1,-1", "--a", "0.5", "--s", "1.5"],
    ["eval", "--w", "1,1", "--a", "0", "--s", "1.5"],
    ["eval", "--w", "1,1", "--a", "0.5", "--s", "1.5", "--lambda", "9"],
    ["zero", "--w", "1,1,1", "--a", "0.5"],
    ["bernoulli", "--w", "1,1", "--K", "40", "--exact"],
])
def test_domain_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert err.strip()


def test_usage_errors_exit_nonzero(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["eval", "--w", "1,x", "--a", "1", "--s", "3"])
    assert exc.value.code != 0
    with pytest.raises(SystemExit) as exc:
        cli.main(["zero", "--w", "1,1", "--a", "0.5", "--output", "csv"])
    assert exc.value.code != 0


def test_zero_commands(capsys):
    code, out, _ = run(capsys, "zero", "--w", "1,1", "--a", "0.5")
    rec = json.loads(out)
    assert code == 0 and rec["exists"] is True and 1 < rec["zero"] < 2
    code, out, _ = run(capsys, "zero", "--w", "1,1", "--a", "1.2")
    rec = json.loads(out)
    assert code == 0 and rec["exists"] is False
    assert rec["criterion"] == pytest.approx(1 - 1.2)


def test_beta_curve_csv(capsys):
    code, out, _ = run(capsys, "beta-curve", "--w", "1,2", "--a-values", "0.2,1,1.6", "--output", "csv")
    lines = out.splitlines()
    assert code == 0
    assert lines[0] == "a,beta,error"
    assert len(lines) == 4
    assert lines[3].split(",")[1] == ""


def test_beta_curve_json(capsys):
    code, out, _ = run(capsys, "beta-curve", "--w", "1,1", "--a-values", "0.2,0.6")
    rec = json.loads(out)
    assert code == 0 and rec["decreasing"] is True and len(rec["points"]) == 2


def test_scan_outputs(capsys):
    code, out, err = run(capsys, "scan", "--w", "1", "--a", "0.35", "--N", "0")
    rec = json.loads(out)
    assert code == 0 and rec["inconclusive"] is True and "not proven" in err
    code, out, _ = run(capsys, "scan", "--w", "1", "--a", "0.1", "--N", "0", "--output", "csv")
    lines = out.splitlines()
    assert lines[0] == "sigma,sign"
    assert {row.split(",")[1] for row in lines[1:]} == {"1", "-1"}


def test_bernoulli(capsys):
    code, out, _ = run(capsys, "bernoulli", "--w", "1,2", "--K", "2", "--exact")
    rec = json.loads(out)
    assert code == 0
    assert rec["exact_coeffs"][2] == ["11/12", "-3/2", "1/2"]
    code, out, _ = run(capsys, "bernoulli", "--w", "1", "--K", "2", "--x", "0.25")
    assert json.loads(out)["values"][1] == pytest.approx(0.25)


def test_seventeen_digits(capsys):
    _, out, _ = run(capsys, "eval", "--w", "1", "--a", "1", "--s", "2")
    text = re.search(r'"value": ([0-9.eE+-]+)', out).group(1)
    assert len(text.replace(".", "").lstrip("0")) == 17
    assert float(text) == pytest.approx(math.pi**2 / 6, rel=1e-15)


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "--seed", "7")
    lines = out.splitlines()
    assert code == 0
    assert len(lines) == 18 and all(line.startswith("PASS") for line in lines)
    assert any("kernel:" in line for line in lines)


def test_verify_failure_exit(capsys, monkeypatch):
    from barneszeta import verify
    monkeypatch.setattr(verify, "CHECKS", verify.CHECKS + [("x", "always fails", lambda rng: (False, "forced"))])
    code, out, _ = run(capsys, "verify", "--seed", "1")
    assert code == 1
    assert "FAIL" in out


def test_deterministic_output():
    argv = [sys.executable, "-m", "barneszeta", "verify", "--seed", "3", "--output", "json"]
    first = subprocess.run(argv, capture_output=True, check=True).stdout
    second = subprocess.run(argv, capture_output=True, check=True).stdout
    assert first == second
    argv = [sys.executable, "-m", "barneszeta", "scan", "--w", "1,1", "--a", "0.3", "--N", "1"]
    assert subprocess.run(argv, capture_output=True).stdout == subprocess.run(argv, capture_output=True).stdout
