import json
import subprocess
import sys

import pytest

from malcev.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_zero(capsys):
    assert run(capsys, "zero", "J(x,y,x z) - J(x,y,z) x")[:2] == (0, "true\n")
    assert run(capsys, "zero", "J(x,y,z)")[:2] == (0, "false\n")
    assert run(capsys, "zero", "--mode", "randomized", "x y + y x")[:2] == (0, "true\n")


def test_zero_parse_error(capsys):
    code, _, err = run(capsys, "zero", "(x y")
    assert code == 2 and err.startswith("error:")


def test_zero_rejects_other_letters(capsys):
    assert run(capsys, "zero", "a b")[0] == 2


def test_dim(capsys):
    code, out, _ = run(capsys, "dim", "1", "1", "1")
    assert code == 0
    assert json.loads(out) == {"dim_M": 3, "lie_dim": 2, "witt_dim": 2, "dim_J": 1}
    assert run(capsys, "dim", "0", "0", "0")[0] == 2


def test_basis(capsys):
    code, out, _ = run(capsys, "basis", "2", "2", "1")
    rep = json.loads(out)
    assert code == 0 and rep["count"] == 2 and rep["independent"] and rep["spanning"]


def test_usage_errors(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["dim", "1", "x", "1"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["verify-paper", "--params", "3..1"])
    assert exc.value.code == 2


def _spec(tmp_path, items):
    p = tmp_path / "spec.json"
    p.write_text(json.dumps(items))
    return str(p)


def test_check_identity_pass_and_fail(tmp_path, capsys):
    good = _spec(tmp_path, [{"id": "malcev", "checks": [{"lhs": "J(x,y,x z)", "rhs": "J(x,y,z) x"}]}])
    code, out, _ = run(capsys, "check-identity", "--spec", good)
    assert code == 0 and json.loads(out)["items"][0]["status"] == "proved-consequence"
    bad = _spec(tmp_path, [{"id": "jacobi", "checks": [{"lhs": "J(a,b,c)"}]}])
    code, out, _ = run(capsys, "check-identity", "--spec", bad)
    assert code == 1 and json.loads(out)["summary"]["failed"] == 1


def test_check_identity_bad_files(tmp_path, capsys):
    assert run(capsys, "check-identity", "--spec", str(tmp_path / "missing.json"))[0] == 2
    broken = _spec(tmp_path, [{"id": "b", "checks": [{"lhs": "J(x,y"}]}])
    assert run(capsys, "check-identity", "--spec", broken)[0] == 2
    nokeys = _spec(tmp_path, [{"checks": [{"lhs": "x"}]}])
    assert run(capsys, "check-identity", "--spec", nokeys)[0] == 2


def test_out_file_and_jobs_env(tmp_path, capsys, monkeypatch):
    spec = _spec(tmp_path, [{"id": f"i{k}", "checks": [{"lhs": "x y", "rhs": "-y x"}]}
                            for k in range(3)])
    monkeypatch.setenv("MALCEV_JOBS", "2")
    out = tmp_path / "report.json"
    code, text, _ = run(capsys, "check-identity", "--spec", spec, "--out", str(out))
    assert code == 0 and "3 items" in text
    first = out.read_bytes()
    run(capsys, "check-identity", "--spec", spec, "--out", str(out), "--jobs", "1")
    assert out.read_bytes() == first


def test_console_script_entry():
    res = subprocess.run([sys.executable, "-m", "malcev.cli", "dim", "2", "1", "1"],
                         capture_output=True, text=True, check=True)
    assert json.loads(res.stdout)["dim_M"] == 4
