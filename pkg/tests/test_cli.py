import json
import subprocess
import sys

import pytest

from chctransfer.cli import main, parse_angle


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_transfer_u11(capsys):
    code, out, _ = run(capsys, "transfer", "--p", "1", "--q", "1", "--lambda=1/2,-1/2")
    rep = json.loads(out)
    assert code == 0
    assert (rep["r"], rep["s"], rep["match"]) == (2, 0, True)
    assert rep["lambda_prime"] == ["1/2", "-1/2"] and rep["tau"] == [1, 2]
    assert list(rep) == sorted(rep)


def test_transfer_compact(capsys):
    code, out, _ = run(capsys, "transfer", "--p", "0", "--q", "1", "--lambda", "1/2")
    rep = json.loads(out)
    assert code == 0 and (rep["r"], rep["s"], rep["match"]) == (0, 1, True)


@pytest.mark.parametrize("text,name", [("1,-1", "NonHalfInteger"), ("1/3,-1/2", "NonHalfInteger"),
                                       ("-1/2,1/2,3/2", "InvalidParameter")])
def test_transfer_invalid(capsys, text, name):
    code, out, err = run(capsys, "transfer", "--p", "1", "--q", "1", f"--lambda={text}")
    assert code == 2 and out == "" and name in err


def test_verify_small(capsys):
    code, out, err = run(capsys, "verify", "--max-n", "1")
    lines = out.split("\n")
    assert code == 0
    assert lines[0] == "p,q,lambda,a,b,r,s,terms,match,zero_elsewhere,orbit_ok"
    assert len(lines) == 1 + 6 + 1 and "\r" not in out


def test_verify_parallel_is_byte_identical(capsys):
    _, one, _ = run(capsys, "verify", "--max-n", "3")
    code, four, _ = run(capsys, "verify", "--max-n", "3", "--jobs", "2")
    assert code == 0 and one == four
    assert all(line.endswith("true,true,true") for line in one.strip().split("\n")[1:])


def test_verify_guard(capsys):
    code, _, err = run(capsys, "verify", "--max-n", "9")
    assert code == 2 and "InvalidBound" in err


def test_eval_value(capsys):
    code, out, _ = run(capsys, "eval", "--p", "1", "--q", "1", "--lambda=1/2,-1/2", "--theta", "pi,0")
    row = out.strip().split("\n")[1].split(",")
    assert code == 0 and abs(float(row[1]) + 0.5) < 1e-12 and abs(float(row[2])) < 1e-12


def test_eval_singular(capsys):
    code, _, err = run(capsys, "eval", "--p", "1", "--q", "1", "--lambda=1/2,-1/2", "--theta", "1,1")
    assert code == 2 and "SingularPointError" in err


def test_eval_scan_bounded(capsys, monkeypatch):
    monkeypatch.setenv("CHC_SEED", "5")
    code, out, _ = run(capsys, "eval", "--p", "2", "--q", "1", "--lambda=3/2,-1/2,1/2",
                       "--scan", "100")
    vals = [float(line.split(",")[3]) for line in out.strip().split("\n")[1:]]
    assert code == 0 and len(vals) == 100 and max(vals) <= 2.0 + 1e-12
    _, again, _ = run(capsys, "eval", "--p", "2", "--q", "1", "--lambda=3/2,-1/2,1/2",
                      "--scan", "100")
    assert again == out


def test_eval_lift(capsys):
    code, out, _ = run(capsys, "eval", "--p", "1", "--q", "1", "--lambda=1/2,-1/2",
                       "--theta", "pi/2,0", "--lift")
    assert code == 0 and len(out.strip().split("\n")) == 2


def test_parse_angle():
    assert parse_angle("pi") == pytest.approx(3.141592653589793)
    assert parse_angle("-pi/2") == pytest.approx(-1.5707963267948966)
    assert parse_angle("3pi/4") == pytest.approx(2.356194490192345)
    assert parse_angle("0.25") == 0.25


def test_oracle_small_grid_reports_failure(capsys):
    code, out, _ = run(capsys, "oracle", "--N", "64", "--omega-samples", "50", "--grid", "128")
    rep = json.loads(out)
    assert code == 1 and not rep["circle"]["ok"] and rep["circle"]["max_abs_error"] > 1e-8
    assert set(rep) == {"circle", "slices", "omega", "seed", "ok"}


def test_oracle_defaults_deterministic(capsys):
    code, out, _ = run(capsys, "oracle", "--omega-samples", "100", "--points", "2")
    rep = json.loads(out)
    assert code == 0 and rep["circle"]["max_abs_error"] <= 1e-8
    assert rep["slices"]["residuals_monotone"]
    _, again, _ = run(capsys, "oracle", "--omega-samples", "100", "--points", "2")
    assert again == out


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "chctransfer", "transfer", "--p", "0", "--q", "1",
                          "--lambda", "-1/2"], capture_output=True, text=True)
    assert res.returncode == 0 and json.loads(res.stdout)["match"]
