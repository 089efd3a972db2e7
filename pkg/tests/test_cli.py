import json
import subprocess
import sys

import pytest

from sternpoly.cli import main


def run_cli(*argv):
    return subprocess.run(
        [sys.executable, "-m", "sternpoly", *argv],
        capture_output=True,
        timeout=600,
    )


def test_poly_output(capsys):
    assert main(["poly", "11"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload == {"n": 11, "coeffs": [1, 3, 1], "degree": 2}


def test_poly_zero_index(capsys):
    assert main(["poly", "0"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload == {"n": 0, "coeffs": [], "degree": None}


def test_eval_negative_fraction_token(capsys):
    assert main(["eval", "95", "-1/2"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["value"] == {"num": "-5", "den": "32"}


def test_degree_command(capsys):
    assert main(["degree", "49"]) == 0
    assert json.loads(capsys.readouterr().out) == {"n": 49, "degree": 4}


def test_roots_members(capsys):
    assert main(["roots", "members", "-a", "-1/2", "--max", "50"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["members"] == [0, 5, 10, 20, 35, 40, 45]


def test_roots_scan(capsys):
    assert main(["roots", "scan", "--max", "2048"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["outcome"] == "pass"


def test_density_csv(capsys):
    assert main(["roots", "density", "-a", "0", "--imax", "3", "--format", "csv"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "i,numerator,denominator"
    assert lines[1:] == ["0,1,1", "1,1,2", "2,1,2", "3,1,2"]


def test_verify_subcommands(capsys):
    assert main(["verify", "ineq1", "--kmin", "4", "--kmax", "5", "--max", "500"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert len(out) == 2
    assert all(json.loads(line)["outcome"] == "pass" for line in out)
    assert main(["verify", "closure", "-a", "-1/3", "--max", "2048"]) == 0
    capsys.readouterr()
    assert main(["verify", "degrees-pair", "--max", "4096"]) == 0
    capsys.readouterr()
    assert main(["verify", "theorem6", "--nmax", "1", "--kmax", "20"]) == 0
    capsys.readouterr()


def test_automaton_analyze(capsys):
    assert main(["automaton", "--p", "7", "--target", "-1/2", "--analyze"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["reachable_count"] == 48
    assert payload["strongly_connected"] is True


def test_automaton_dot(capsys):
    assert main(["automaton", "--p", "5", "--target", "-1/2", "--emit", "dot"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("digraph dfao {")
    assert out.rstrip().endswith("}")


def test_failure_exit_code(capsys):
    # the mod-7 shadow of -1/3 is periodic, so the search reports a violation
    code = main(
        ["automaton", "--p", "7", "--target", "-1/3", "--period-search", "64", "64", "512"]
    )
    assert code == 1
    payload = json.loads(capsys.readouterr().out)
    assert payload["outcome"] == "fail"
    assert payload["witness"]["period"] == 7


def test_usage_error_exit_code():
    assert main(["roots", "scan"]) == 2  # missing --max
    assert main(["automaton", "--p", "9", "--target", "-1/2", "--analyze"]) == 2


def test_out_file(tmp_path):
    path = tmp_path / "out.json"
    assert main(["poly", "7", "--out", str(path)]) == 0
    assert json.loads(path.read_text()) == {"n": 7, "coeffs": [1, 1, 1], "degree": 2}


def test_verify_all_smoke_deterministic_across_jobs():
    first = run_cli("verify", "all", "--profile", "smoke", "--jobs", "4")
    second = run_cli("verify", "all", "--profile", "smoke", "--jobs", "1")
    assert first.returncode == 0, first.stderr.decode()
    assert second.returncode == 0
    assert first.stdout == second.stdout
    reports = [json.loads(line) for line in first.stdout.splitlines()]
    assert all(r["outcome"] == "pass" for r in reports)
    claims = [r["claim"] for r in reports]
    assert "rational-roots-classified" in claims
    assert "periodic-shadow-detected(p=7,t=-1/3)" in claims
