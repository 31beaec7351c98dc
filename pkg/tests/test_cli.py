import json
import shutil
import subprocess
import sys

import pytest

from wittlab.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, json.loads(out)


def test_tables(capsys):
    code, data = run(capsys, "tables", "--S", "1,2", "--pretty")
    assert code == 0 and data["add"]["2"] == "X2+Y2-X1*Y1"
    code, data = run(capsys, "tables", "--S", "1,2")
    assert code == 0 and data["variables"] == ["X1", "X2", "Y1", "Y2"]


def test_galois_iso_table(capsys):
    code, data = run(capsys, "galois", "iso", "--p", "2", "--k", "1", "--n", "2")
    assert code == 0 and data["bijective"]
    assert data["table"]["[3]"] == [[1], [1]]


def test_factorization(capsys):
    code, data = run(capsys, "factorization", "count", "--p", "2", "--m", "3")
    assert code == 0 and (data["representable"], data["total"]) == (4, 8)
    code, data = run(capsys, "zannier", "factor", "--p", "2", "--m", "3", "--q", "1+t+t^3")
    assert code == 0 and data["verified"]
    code, data = run(capsys, "zannier", "factor", "--p", "3", "--k", "2", "--m", "2", "--coeffs", "[[1,1],[0,2]]")
    assert code == 0 and data["verified"]
    code, data = run(capsys, "factorization", "factor", "--p", "2", "--m", "3")
    assert code == 2 and data["error"] == "UsageError"


def test_eval_ghost_fromghost(capsys):
    code, data = run(capsys, "eval", "--S", "1,2,4", "--expr", "teich(3) + V(2, teich(5))")
    assert code == 0 and data["components"] == [3, 5, 0] and data["kind"] == "witt"
    code, data = run(capsys, "ghost", "--S", "1,2,4", "--coords", "3,1,2")
    assert data["components"] == [3, 11, 91]
    code, data = run(capsys, "fromghost", "--S", "1,2,4", "--ghost", "3,11,91")
    assert data["components"] == [3, 1, 2]
    ring = json.dumps({"kind": "FiniteField", "p": 2, "k": 2})
    code, data = run(capsys, "ghost", "--ring", ring, "--S", "1,2", "--coords", '[[0,1],[1,0]]')
    assert code == 0 and len(data["components"]) == 2


def test_series_commands(capsys):
    F7 = json.dumps({"kind": "PrimeField", "p": 7})
    code, data = run(capsys, "series", "to", "--ring", F7, "--coords", "1,2,3")
    assert data["coefficients"] == [6, 5, 6]
    code, data = run(capsys, "series", "from", "--ring", F7, "--coeffs", "6,5,6")
    assert data["components"] == [1, 2, 3]
    code, data = run(capsys, "series", "versch", "--k", "2", "--coeffs", "1,2")
    assert data["coefficients"] == [0, 1, 0, 2]
    code, data = run(capsys, "series", "root", "--l", "2", "--ring", F7, "--coeffs", "2,1")
    assert code == 0 and data["m"] == 2
    code, data = run(capsys, "series", "frob", "--k", "2", "--coeffs", "0,0,0,1")
    assert code == 0 and data["m"] == 2


def test_semigroup_commands(capsys):
    code, data = run(capsys, "semigroup", "iso", "--p", "2", "--k", "2", "--n", "2")
    assert code == 0 and data["index"] == 16
    code, data = run(capsys, "semigroup", "ideal", "--p", "2", "--n", "2")
    assert data["index"] == 4
    code, data = run(capsys, "semigroup", "In", "--p", "3", "--n", "2")
    assert code == 0 and data["n"] == 2


def test_drw_verify(capsys):
    code, data = run(capsys, "drw", "verify", "--S", "1,2,4", "--vars", "2", "--samples", "1")
    assert code == 0 and data["pass"]


@pytest.mark.parametrize("argv,code,error", [
    (["eval", "--S", "1,2,4", "--expr", "V(7, teich(1))"], 1, "TypeError"),
    (["eval", "--S", "1,2", "--expr", "teich(3"], 1, "SyntaxError"),
    (["ghost", "--S", "1,2,6", "--coords", "1,2,3"], 1, "NotDivisorClosed"),
    (["fromghost", "--S", "1,2", "--ghost", "1,0"], 1, "NotInGhostImage"),
    (["semigroup", "In", "--n", "2", "--ring", '{"kind":"QuotientRing","m":2,"modulus":[0,1,0,1]}'],
     1, "FrobeniusNotInjective"),
    (["eval", "--ring", '{"kind":"Nope"}', "--S", "1", "--expr", "1"], 1, "InvalidRing"),
    (["tables"], 2, "UsageError"),
    (["eval", "--ring", "not json", "--S", "1", "--expr", "1"], 2, "UsageError"),
    (["frobnicate"], 2, "UsageError"),
    (["verify", "all", "--criteria", "99"], 2, "UsageError"),
])
def test_errors(capsys, argv, code, error):
    got, data = run(capsys, *argv)
    assert got == code and data["error"] == error and data["detail"]


def test_console_script_is_installed():
    exe = shutil.which("wittlab")
    cmd = [exe] if exe else [sys.executable, "-m", "wittlab.cli"]
    proc = subprocess.run(cmd + ["zannier", "count", "--p", "2", "--m", "3"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["representable"] == 4
    proc = subprocess.run(cmd + ["tables"], capture_output=True, text=True)
    assert proc.returncode == 2
