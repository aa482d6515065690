import json
import os
import subprocess
import sys

from conjchern.report import Check, VerificationReport

SCHEMA_KEYS = {"suite", "params", "checks", "overall", "seed", "version"}
CHECK_KEYS = {"name", "status", "detail", "elapsed_ms"}


def run_cli(*args, env_extra=None):
    env = dict(os.environ)
    env.setdefault("NO_COLOR", "1")
    if env_extra:
        env.update(env_extra)
    return subprocess.run(
        [sys.executable, "-m", "conjchern", *args],
        capture_output=True,
        text=True,
        env=env,
    )


def validate_schema(data):
    assert set(data) == SCHEMA_KEYS
    assert isinstance(data["params"], dict)
    assert data["overall"] in ("pass", "fail")
    assert isinstance(data["seed"], int)
    assert isinstance(data["version"], str)
    for check in data["checks"]:
        assert set(check) == CHECK_KEYS
        assert check["status"] in ("pass", "fail", "skipped")
        assert isinstance(check["elapsed_ms"], int)


# -- report object ----------------------------------------------------------------


def test_report_roundtrip():
    report = VerificationReport(
        suite="signs",
        params={"p": 3},
        checks=[Check("a", "pass", "fine", 0), Check("b", "skipped", "guard", 0)],
        seed=9,
    )
    again = VerificationReport.from_json(report.to_json())
    assert again.to_json() == report.to_json()
    assert again.overall == "pass"


def test_report_overall_fail():
    report = VerificationReport(
        suite="x", params={}, checks=[Check("a", "fail", "boom", 1)]
    )
    assert report.overall == "fail"


def test_promote_skips():
    report = VerificationReport(
        suite="x", params={}, checks=[Check("a", "skipped", "guard", 1)]
    )
    report.promote_skips()
    assert report.overall == "fail"


def test_json_is_sorted_and_lf():
    report = VerificationReport(suite="x", params={"b": 1, "a": 2}, checks=[])
    text = report.to_json()
    assert "\r" not in text
    assert text.index('"checks"') < text.index('"overall"') < text.index('"params"')


# -- CLI behavior -------------------------------------------------------------------


def test_signs_suite_exits_zero():
    proc = run_cli("--suite", "signs")
    assert proc.returncode == 0
    assert "overall: PASS" in proc.stdout


def test_non_prime_p_is_usage_error():
    proc = run_cli("--suite", "chern", "--p", "4")
    assert proc.returncode == 2


def test_odd_only_suites_reject_two():
    proc = run_cli("--suite", "rep", "--p", "2")
    assert proc.returncode == 2


def test_unknown_suite_rejected():
    proc = run_cli("--suite", "nope")
    assert proc.returncode == 2


def test_json_schema_and_determinism_small():
    args = ("--suite", "vistoli", "--p", "3", "--seed", "1", "--format", "json")
    first = run_cli(*args)
    second = run_cli(*args)
    assert first.returncode == 0
    assert first.stdout == second.stdout
    data = json.loads(first.stdout)
    validate_schema(data)
    assert data["suite"] == "vistoli"
    assert all(c["elapsed_ms"] == 0 for c in data["checks"])


def test_out_file(tmp_path):
    target = tmp_path / "report.json"
    proc = run_cli(
        "--suite", "signs", "--format", "json", "--out", str(target)
    )
    assert proc.returncode == 0
    data = json.loads(target.read_text())
    validate_schema(data)


def test_relations_suite_skips_at_p5():
    proc = run_cli("--suite", "relations", "--p", "5", "--format", "json")
    assert proc.returncode == 0
    data = json.loads(proc.stdout)
    statuses = {c["name"]: c["status"] for c in data["checks"]}
    assert any(s == "skipped" for s in statuses.values())


def test_strict_promotes_skips_to_failure():
    proc = run_cli("--suite", "relations", "--p", "5", "--strict")
    assert proc.returncode == 1


def test_all_at_p2_runs_only_prime_agnostic_suites():
    proc = run_cli("--suite", "all", "--p", "2", "--format", "json")
    assert proc.returncode == 0
    data = json.loads(proc.stdout)
    prefixes = {c["name"].split("/")[0] for c in data["checks"]}
    assert prefixes == {"dickson", "signs"}


def test_dickson_suite_with_parameters():
    proc = run_cli(
        "--suite", "dickson", "--p", "3", "--n", "3",
        "--trials", "5", "--seed", "3", "--format", "json",
    )
    assert proc.returncode == 0
    data = json.loads(proc.stdout)
    assert data["params"]["n"] == 3
    assert data["overall"] == "pass"


def test_threads_flag_accepted():
    proc = run_cli("--suite", "signs", "--threads", "auto", "--format", "json")
    assert proc.returncode == 0
    proc = run_cli("--suite", "signs", "--threads", "0")
    assert proc.returncode == 2
