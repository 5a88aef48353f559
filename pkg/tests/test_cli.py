import csv
import io
import json
import shutil
import subprocess

import pytest

from betabranch.branching import Cardinality, Kind
from betabranch.cli import SWEEP_HEADER, main, parse_base, sweep_row
from betabranch.errors import ParseError

RIGHT = "fe:(1+q^3)/(q^4-1)"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_constants(capsys):
    code, out, _ = run(capsys, "constants")
    assert code == 0 and "q_aleph0" in out and "1.645" in out
    code, out, _ = run(capsys, "constants", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert {r["name"] for r in rows} >= {"golden", "q_2", "q_f", "q_aleph0", "r1", "r5"}
    code, out, _ = run(capsys, "constants", "--format", "json")
    assert any(r["name"] == "q_f" and r["computed"] == "1.75488" for r in json.loads(out))


def test_expand(capsys):
    assert run(capsys, "expand", "--base", "golden", "--x", "fe:1", "--digits", "5")[1].strip() == "11000"
    code, out, _ = run(capsys, "expand", "--base", "golden", "--x", "fe:1", "--digits", "5",
                       "--mode", "lazy", "--format", "json")
    assert json.loads(out) == {"mode": "lazy", "digits": "01111"}


def test_classify_round_trip(capsys):
    code, out, _ = run(capsys, "classify", "--base", "q_aleph0", "--x", RIGHT, "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["complete"] and doc["states"] < 500
    assert Cardinality.from_dict(doc).kind is Kind.COUNTABLY_INFINITE
    code, out, _ = run(capsys, "classify", "--base", "golden", "--x", "fe:1/2")
    assert code == 0 and out.startswith("Uncountable")


def test_unknown_exit_code(capsys):
    code, out, _ = run(capsys, "classify", "--base", "3/2", "--x", "fe:1", "--max-states", "300",
                       "--format", "json")
    doc = json.loads(out)
    assert code == 3 and doc["classification"] == "Unknown" and not doc["complete"]
    code, _, err = run(capsys, "tree", "--base", "3/2", "--x", "fe:1", "--max-states", "100", "--mode", "infinite")
    assert code == 3 and err


@pytest.mark.parametrize("argv", [
    ("classify", "--base", "golden"),
    ("classify", "--base", "nope", "--x", "fe:1"),
    ("classify", "--base", "golden", "--x", "fe:1+"),
    ("classify", "--base", "golden", "--x", "fe:3"),
    ("classify", "--base", "2", "--x", "fe:1"),
    ("expand", "--base", "golden", "--x", "fe:1", "--mode", "sideways"),
    ("verify",),
    ("membership", "--base", "golden"),
    ("classify", "--base", "golden", "--x", "fe:1", "--max-states", "0"),
    ("tree", "--base", "golden", "--x", "fe:1", "--format", "csv"),
])
def test_usage_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and err.startswith("betabranch")


def test_unique_and_null_infinite(capsys):
    code, out, _ = run(capsys, "unique", "--base", "q_f", "--x", "word:1|10", "--format", "json")
    assert code == 0 and json.loads(out)["status"] == "Unique"
    code, out, _ = run(capsys, "unique", "--base", "golden", "--x", "fe:1")
    assert out.startswith("NotUnique")
    code, out, _ = run(capsys, "null-infinite", "--base", "q_aleph0", "--x", "word:|0110")
    assert code == 0 and out.strip() == "Yes"
    code, out, _ = run(capsys, "null-infinite", "--base", "golden", "--x", "fe:1/2", "--format", "json")
    assert json.loads(out) == {"null_infinite": "No"}


def test_tree(capsys, tmp_path):
    code, out, _ = run(capsys, "tree", "--base", "golden", "--x", "fe:1/2", "--mode", "continuum", "--depth", "3")
    assert code == 0 and out.startswith("digraph")
    target = tmp_path / "t.json"
    code, out, _ = run(capsys, "tree", "--base", "golden", "--x", "fe:1/2", "--mode", "continuum",
                       "--depth", "3", "--format", "json", "--out", str(target))
    doc = json.loads(target.read_text())
    assert out == "" and doc["mode"] == "continuum"
    assert sum(1 for n in doc["tree"] if not n["children"]) == 8


def test_membership(capsys):
    code, out, _ = run(capsys, "membership", "--base", "q_aleph0", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["membership"] == "In" and doc["checked"]
    code, _, err = run(capsys, "membership", "--base", "poly:3x^2-8")
    assert code == 2 and "outside" in err


def test_verify(capsys, tmp_path):
    path = tmp_path / "transcript.json"
    code, out, _ = run(capsys, "verify", "--item", "branching-points", "--transcript", str(path))
    lines = out.strip().splitlines()
    assert code == 0 and lines[1].split() == ["branching-points.2", "q_aleph0", "EqualityBoundary"]
    doc = json.loads(path.read_text())
    assert len(doc) == 4 and doc[1]["comparisons"][1]["sign"] == 0
    code, out, _ = run(capsys, "verify", "--item", "first-half", "--base", "q_2")
    assert "Fails" in out


def test_verify_all(capsys):
    code, out, _ = run(capsys, "verify", "--all", "--format", "json")
    items = {r["item"] for r in json.loads(out)}
    assert {"second-half", "alpha-family.first", "first-half.12"} <= items


def test_sweep(capsys):
    code, out, _ = run(capsys, "sweep", "--bases", "golden", "q_aleph0", "--points", "fe:0", RIGHT)
    rows = list(csv.DictReader(io.StringIO(out)))
    assert out.splitlines()[0] == ",".join(SWEEP_HEADER)
    assert code == 0 and len(rows) == 4
    assert rows[0]["classification"] == "Finite" and rows[0]["k"] == "1"
    assert rows[3]["classification"] == "CountablyInfinite" and rows[3]["null_infinite"] == "Yes"
    # the right endpoint at golden is outside the switch region but still in range
    assert rows[1]["error"] == ""


def test_sweep_records_errors_and_unknowns(capsys):
    code, out, _ = run(capsys, "sweep", "--bases", "3/2", "golden", "--points", "fe:1", "fe:7",
                       "--max-states", "200", "--jobs", "2")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 3
    assert rows[0]["classification"] == "Unknown" and rows[0]["complete"] == "false"
    assert rows[1]["error"].startswith("OutOfRange")
    assert sweep_row("nope", "fe:1", None)["error"].startswith("UsageError")


def test_parse_base():
    assert parse_base("poly:x^2-x-1").approx(4) == "1.6180"
    assert parse_base("poly:x^2-x-1@3/2,2").approx(4) == "1.6180"
    assert parse_base("alpha_4").label == "alpha_4"
    with pytest.raises(ParseError):
        parse_base("poly:x^2-x-1@2,3")


def test_console_script():
    exe = shutil.which("betabranch")
    if exe is None:
        pytest.skip("console script not installed")
    res = subprocess.run([exe, "classify", "--base", "golden", "--x", "fe:1"], capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.startswith("CountablyInfinite")
