import csv
import json
import subprocess
import sys

import pytest

from betabounds.cli import main
from betabounds.records import read_records

TINY = "intervals: [[0, 1]]\np: [1]\nq: [1, 2]\nalpha: [1]\nm: [1]\nk: [2]\nl: [1]\n"


@pytest.fixture
def grid_file(tmp_path):
    path = tmp_path / "grid.yaml"
    path.write_text(TINY)
    return str(path)


def records(capsys):
    out = capsys.readouterr().out
    return [json.loads(line) for line in out.splitlines() if line.strip()]


def test_catalog(capsys):
    assert main(["catalog"]) == 0
    recs = records(capsys)
    ids = [r["id"] for r in recs]
    assert "identity" in ids and "neg_bump" in ids
    assert all({"id", "domain", "claims"} <= set(r) for r in recs)


def test_certify_pass_and_fail(capsys):
    assert main(["certify", "--spec", "square", "--class", "convex", "--n", "32"]) == 0
    assert records(capsys)[0]["verdict"] == "pass"
    assert main(["certify", "--spec", "neg_bump", "--class", "quasi_convex", "--n", "32"]) == 1
    rec = records(capsys)[0]
    assert rec["witness"] == [0, 1, 0.5] and rec["max_violation"] == 0.25


@pytest.mark.parametrize("argv", [
    ["verify", "--spec", "identity", "--theorem", "T21", "--a", "0", "--b", "1", "--p", "1",
     "--q", "1", "--alpha", "0", "--m", "1"],
    ["verify", "--spec", "identity", "--theorem", "T22", "--a", "0", "--b", "1", "--p", "1",
     "--q", "1", "--alpha", "1", "--m", "1", "--k", "1"],
    ["verify", "--spec", "identity", "--theorem", "T21", "--a", "0", "--b", "1", "--p", "1",
     "--q", "1", "--alpha", "1"],
    ["certify", "--spec", "nope", "--class", "convex"],
    ["sweep", "--theorems", "T99"],
    ["sweep", "--max-cases", "5"],
    ["sweep", "--grid", "/nonexistent/grid.yaml"],
    ["certify", "--spec", "square", "--class", "convex", "--n", "4"],
])
def test_usage_errors_exit_2(argv, capsys):
    assert main(argv) == 2
    assert "error" in capsys.readouterr().err


@pytest.mark.parametrize("argv", [["sweep", "--tol", "0"], ["sweep", "--jobs", "0"], ["bogus"]])
def test_argparse_errors(argv):
    with pytest.raises(SystemExit) as info:
        main(argv)
    assert info.value.code == 2


def test_verify_equality_case(capsys):
    code = main(["verify", "--spec", "identity", "--theorem", "T21", "--a", "0", "--b", "1",
                 "--p", "1", "--q", "1", "--alpha", "1", "--m", "1"])
    assert code == 0
    rec = records(capsys)[0]
    assert rec["verdict"] == "pass" and abs(rec["slack"]) <= 1e-9


def test_sweep_with_grid_file(grid_file, tmp_path, capsys):
    out = tmp_path / "r.ndjson"
    table = tmp_path / "s.csv"
    assert main(["sweep", "--grid", grid_file, "--out", str(out), "--summary-csv", str(table)]) == 0
    with open(out) as fh:
        recs = read_records(fh)
    with open(table) as fh:
        rows = list(csv.DictReader(fh))
    assert list(rows[0]) == ["theorem", "cases", "passes", "fails", "skips", "min_slack"]
    assert sum(int(r["cases"]) for r in rows) == len(recs)
    assert all(r["fails"] == "0" for r in rows)
    assert "min_slack" in capsys.readouterr().err


def test_sweep_is_byte_identical(grid_file, tmp_path):
    paths = [tmp_path / "a.ndjson", tmp_path / "b.ndjson"]
    for path in paths:
        assert main(["sweep", "--grid", grid_file, "--out", str(path)]) == 0
    assert paths[0].read_bytes() == paths[1].read_bytes()
    assert main(["sweep", "--grid", grid_file, "--jobs", "2", "--out", str(paths[1])]) == 0
    assert paths[0].read_bytes() == paths[1].read_bytes()


def test_lemma_and_reduce(grid_file, capsys):
    assert main(["lemma-check", "--grid", grid_file, "--specs", "identity,square"]) == 0
    recs = records(capsys)
    assert recs and all(r["verdict"] == "pass" for r in recs)
    assert main(["reduce-check", "--grid", grid_file]) == 0
    assert all(r["verdict"] == "pass" for r in records(capsys))


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "betabounds", "catalog"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert "identity" in proc.stdout
