import io
import json
import subprocess
import sys

import pytest

from fingeo.cli import run
from fingeo.incidence import read_alist, read_matrixmarket


def call(*argv):
    out = io.StringIO()
    code = run(list(argv), stdout=out)
    return code, out.getvalue()


def test_rank_examples():
    assert call("rank", "--p", "2", "--e", "2", "--n", "3", "--kset", "hyperoval", "--char", "3") == \
        (0, '{"rank":46,"h_k":15,"dual_zero":46}\n')
    code, text = call("rank", "--p", "2", "--e", "1", "--n", "2", "--kset", "full", "--char", "3")
    assert code == 0 and json.loads(text)["rank"] == 4


def test_rank_over_rationals():
    code, text = call("rank", "--p", "3", "--n", "3", "--kset", "rnc", "--char", "0")
    assert code == 0 and json.loads(text)["rank"] == 19


def test_wenger_example():
    assert call("wenger", "--n", "3", "--q", "2", "--char", "3") == \
        (0, '{"matrix_rank":6,"formula":6,"rootless":2,"consistent":true}\n')


def test_dims_and_minweight():
    code, text = call("dims", "--p", "2", "--n", "3", "--kset", "rnc", "--char", "3")
    assert json.loads(text) == {"char": 3, "length_C": 8, "dim_C": 2, "length_D": 8, "dim_D": 2}
    code, text = call("minweight", "--p", "2", "--n", "3", "--kset", "rnc", "--char", "3", "--code", "C")
    data = json.loads(text)
    assert code == 0 and data["min_weight"] == 4 and data["exact"]


def test_budget_env(monkeypatch):
    monkeypatch.setenv("FINGEO_BUDGET", "5")
    code, text = call("minweight", "--p", "2", "--n", "3", "--kset", "rnc", "--char", "3", "--code", "C")
    assert json.loads(text)["method"] != "enumeration"
    monkeypatch.setenv("FINGEO_BUDGET", "lots")
    assert call("minweight", "--p", "2", "--n", "3", "--code", "C")[0] == 2


@pytest.mark.parametrize("kind,count", [("plane", 9), ("capacitor", 8), ("dcap", 8)])
def test_words(tmp_path, kind, count):
    out = tmp_path / "w.jsonl"
    code, text = call("words", "--p", "3", "--n", "3", "--kset", "rnc", "--kind", kind, "--char", "2",
                      "--out", str(out))
    data = json.loads(text)
    assert code == 0 and data["all_codewords"] and data["count"] == count
    assert len(out.read_text().splitlines()) == count


def test_words_verify_span_and_kgon():
    code, text = call("words", "--p", "3", "--n", "3", "--kset", "rnc", "--kind", "capacitor", "--char", "2",
                      "--verify-span")
    assert code == 0 and json.loads(text)["equal"]
    code, text = call("words", "--p", "7", "--n", "2", "--kset", "line:1,0;0,1;1,1;1,6", "--kind", "kgon",
                      "--char", "0")
    assert code == 0 and json.loads(text)["weights"] == [8]


def test_export(tmp_path):
    for fmt, reader in (("alist", read_alist), ("mtx", read_matrixmarket)):
        path = tmp_path / f"n.{fmt}"
        code, text = call("export", "--p", "2", "--e", "2", "--n", "3", "--kset", "hyperoval",
                          "--format", fmt, "--orient", "NT", "--out", str(path))
        assert code == 0 and reader(path).shape == (96, 64)


def test_decode_and_csv(tmp_path):
    csv = tmp_path / "d.csv"
    code, text = call("decode", "--p", "5", "--n", "2", "--code", "D", "--errors", "3", "--trials", "100",
                      "--seed", "1", "--csv", str(csv))
    data = json.loads(text)
    assert code == 0 and data["success_rate"] == 1.0
    assert csv.read_text().splitlines()[1] == "D,2,5,6,3,100,100"


def test_charlemma():
    code, text = call("charlemma", "--p", "3", "--aux", "7")
    assert code == 0 and json.loads(text)["ok"]
    assert call("charlemma", "--p", "3", "--aux", "5")[0] == 2


def test_verify_small_grid_and_table():
    code, text = call("verify", "--max-q", "3", "--max-n", "2", "--random", "1")
    data = json.loads(text)
    assert code == 0 and data["checks"] == data["passed"] > 0
    code, table = call("verify", "--max-q", "2", "--max-n", "2", "--random", "1", "--table")
    assert code == 0 and table.strip().endswith("checks passed")


def test_threads_do_not_change_output():
    args = ("verify", "--max-q", "3", "--max-n", "3", "--random", "1")
    assert call(*args, "--threads", "1") == call(*args, "--threads", "3")


@pytest.mark.parametrize("argv", [
    ["rank", "--p", "3", "--n", "3", "--kset", "hyperoval"],
    ["rank", "--p", "6", "--n", "2"],
    ["rank", "--p", "2", "--n", "2", "--char", "4"],
    ["rank", "--n", "2"],
    ["bogus"],
    ["minweight", "--p", "2", "--n", "2"],
    ["words", "--p", "3", "--n", "3", "--kind", "plane", "--verify-span", "--char", "3"],
    ["decode", "--p", "2", "--n", "2", "--code", "D", "--errors", "9"],
    ["wenger", "--n", "3", "--q", "4", "--char", "2"],
    ["verify", "--threads", "0"],
])
def test_usage_errors_exit_2(argv, capsys):
    assert call(*argv)[0] == 2


def test_table_format():
    code, text = call("rank", "--p", "2", "--n", "2", "--table")
    assert code == 0 and text.splitlines()[0].split() == ["rank", "4"]


def test_module_entry_point_is_byte_stable():
    cmd = [sys.executable, "-m", "fingeo", "rank", "--p", "2", "--e", "2", "--n", "3", "--kset", "hyperoval", "--char", "3"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b == b'{"rank":46,"h_k":15,"dual_zero":46}\n'
