import json
import subprocess
import sys

import jsonschema
import pytest

from tambara_koszul.cli import EXIT_MISMATCH, EXIT_OK, EXIT_USAGE, main
from tambara_koszul.report import render_text, report_schema, validate


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def orders_by_exponent(doc):
    levels = sorted(doc["presentation"]["levels"], key=lambda level: level["exponent"])
    return [level["orders"] for level in levels]


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--format", "json")
    doc = json.loads(out)
    jsonschema.validate(doc, report_schema())
    return code, doc


def test_help_and_version(capsys):
    code, out, _ = run(capsys, "--help")
    assert code == EXIT_OK
    for command in ("tor", "verify", "lewis", "resolution"):
        assert command in out
    code, out, _ = run(capsys, "--version")
    assert code == EXIT_OK and "version" in out


def test_tor_text_and_json_agree(capsys):
    code, out, _ = run(capsys, "tor", "-p", "3", "-n", "1")
    assert code == EXIT_OK
    assert "Tor_3 = Zbar" in out
    code, doc = run_json(capsys, "tor", "-p", "3", "-n", "1")
    assert code == EXIT_OK
    assert [row["label"] for row in doc["rows"][:4]] == ["A", "A{C3/e} + I", "A{C3/e}", "Zbar"]
    assert all(block["certificate"] for row in doc["rows"] for block in row["blocks"])
    assert render_text(doc) == out.rstrip("\n")


def test_tor_max_degree_zero(capsys):
    code, doc = run_json(capsys, "tor", "-p", "3", "-n", "1", "--max-degree", "0")
    assert code == EXIT_OK
    assert len(doc["rows"]) == 1
    assert doc["rows"][0]["summands"] == {"A": 1}


@pytest.mark.parametrize(
    "argv",
    [
        ("tor", "-p", "4", "-n", "1"),
        ("tor", "-p", "2", "-n", "1"),
        ("tor", "-p", "3", "-n", "1", "--gen-level", "5"),
        ("resolution", "-p", "9", "-n", "1"),
        ("lewis", "nope"),
        ("lewis", "tor:x"),
        ("verify", "no-such-case"),
        ("frobnicate",),
        ("tor", "-p", "3"),
    ],
)
def test_usage_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == EXIT_USAGE
    assert err


def test_lewis_diagrams(capsys):
    code, out, _ = run(capsys, "lewis", "A", "-p", "3", "-n", "1")
    assert code == EXIT_OK and out.startswith("A")
    code, doc = run_json(capsys, "lewis", "Zbar", "-p", "3", "-n", "2")
    assert orders_by_exponent(doc) == [[0], [0], [0]]
    code, doc = run_json(capsys, "lewis", "L")
    assert orders_by_exponent(doc) == [[], [3, 3, 3], [3]]
    code, out, _ = run(capsys, "lewis", "A_e", "-p", "3", "-n", "1")
    assert "also known as" not in out.splitlines()[0]


def test_lewis_of_a_computed_tor(capsys):
    code, doc = run_json(capsys, "lewis", "tor:3", "-p", "3", "-n", "1")
    assert code == EXIT_OK
    assert orders_by_exponent(doc) == [[0], [0]]


def test_resolution_description(capsys):
    code, doc = run_json(capsys, "resolution", "-p", "3", "-n", "2")
    assert code == EXIT_OK
    assert doc["length"] == 13
    assert doc["exactness"] is None
    assert doc["positions"][0]["degree"] == 0


def test_resolution_exactness(capsys):
    code, doc = run_json(capsys, "resolution", "-p", "3", "-n", "1", "--check-exactness", "--cutoff", "6")
    assert code == EXIT_OK
    assert doc["exactness"]["certified"]
    code, doc = run_json(capsys, "resolution", "-p", "3", "-n", "1", "--check-exactness", "--cutoff", "0")
    assert code == EXIT_OK
    assert {entry["degree"] for entry in doc["exactness"]["entries"]} == {0}


def test_verify_exit_codes(capsys):
    code, out, _ = run(capsys, "verify", "cp-tor-3")
    assert code == EXIT_OK and "PASS" in out
    code, doc = run_json(capsys, "verify", "green-fixed-c2")
    assert code == EXIT_OK and doc["passed"] and doc["first_failure"] is None


def test_verify_mismatch_exits_1(capsys):
    code, doc = run_json(capsys, "verify", "cp-tor-5")
    assert code == EXIT_MISMATCH
    assert not doc["passed"]
    assert doc["first_failure"]["name"] == "C5 Tor degree 3"


def test_thread_variable_does_not_change_output(capsys, monkeypatch):
    monkeypatch.setenv("TAMBARA_KOSZUL_THREADS", "2")
    code, threaded = run_json(capsys, "resolution", "-p", "3", "-n", "1", "--check-exactness", "--cutoff", "4")
    monkeypatch.setenv("TAMBARA_KOSZUL_THREADS", "1")
    code, serial = run_json(capsys, "resolution", "-p", "3", "-n", "1", "--check-exactness", "--cutoff", "4")
    assert threaded == serial


def test_schema_rejects_malformed_documents():
    with pytest.raises(jsonschema.ValidationError):
        validate({"schema": "tambara-koszul/report", "version": 1, "kind": "tor"})
    with pytest.raises(jsonschema.ValidationError):
        validate({"schema": "something else", "version": 1, "kind": "lewis"})


def test_console_entry_point_runs_as_module():
    proc = subprocess.run(
        [sys.executable, "-m", "tambara_koszul", "tor", "-p", "3", "-n", "1", "--max-degree", "1"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == EXIT_OK
    assert "Tor_1 = A{C3/e} + I" in proc.stdout
    proc = subprocess.run([sys.executable, "-m", "tambara_koszul", "tor", "-p", "6", "-n", "1"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == EXIT_USAGE
