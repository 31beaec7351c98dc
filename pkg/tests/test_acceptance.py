"""Acceptance criteria 1-12, one test per criterion.

Each test prints a single PASS/FAIL line; the same lines are repeated in the
terminal summary (see conftest.py) so they survive output capture.
"""

import io
import json
import random
from contextlib import redirect_stdout

import pytest

from wittlab.cli import main
from wittlab.expr import parse, random_expression, to_text
from wittlab.suite import CRITERIA, CheckResult, run_criterion

SUMMARY: list = []


def _report(result: CheckResult) -> None:
    line = result.line()
    SUMMARY.append(line)
    print(line)


def _check(number: int) -> CheckResult:
    result = run_criterion(number)
    _report(result)
    return result


@pytest.mark.parametrize("number", [n for n in sorted(CRITERIA) if n != 10])
def test_criterion(number):
    result = _check(number)
    assert result.passed, json.dumps(result.details, default=str)[:2000]


@pytest.mark.xfail(
    strict=True,
    reason="F_2[u]/(u^3+u) is not reduced; Ker alpha_2 has index 64 while I_2 has index 16",
)
def test_criterion_10_kernel_equals_I2():
    result = _check(10)
    assert result.passed, json.dumps(result.details["kernel"])


def test_criterion_10_derivation_laws():
    checks = run_criterion(10).details["checks"]
    laws = {k: v for k, v in checks.items() if k.startswith("delta")}
    assert len(laws) == 3
    assert all(v["passed"] == v["total"] == (500 if "I^n" not in k else 1500) for k, v in laws.items())


def _verify_all(argv):
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = main(["verify", "all", *argv])
    return code, json.loads(buf.getvalue())


def test_criterion_12_cli():
    rng = random.Random(2024)
    corpus = [random_expression(rng, depth=4) for _ in range(1000)]
    round_trip = sum(parse(to_text(e)) == e for e in corpus)

    code, report = _verify_all([])
    per = {r["criterion"]: r["passed"] for r in report["results"]}
    expected = {n: run_criterion(n).passed for n in CRITERIA}
    consistent = per == expected and (code == 0) == all(expected.values()) and report["passed"] == (code == 0)

    sub_code, sub = _verify_all(["--criteria", "1,2,3"])
    subset_ok = sub_code == 0 and all(r["passed"] for r in sub["results"])

    ok = round_trip == 1000 and consistent and subset_ok
    result = CheckResult(12, "CLI round trip and verify-all exit status", ok, 0.0, None,
                         {"round_trip": round_trip, "verify_all_exit": code, "per_criterion": per})
    _report(result)
    assert round_trip == 1000
    assert consistent, (code, per, expected)
    assert subset_ok
