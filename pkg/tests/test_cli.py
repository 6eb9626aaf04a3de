import json
import subprocess
import sys

import pytest

from prodbase.cli import FIXTURE_DEFAULTS, Budget, load_fixtures, main, run_fixture
from prodbase.constructions.groupfile import load_group_file


def run_json(capsys, *argv):
    code = main([*argv, "--json"])
    out = capsys.readouterr().out
    return code, json.loads(out)


def test_json_schema_key_order(capsys):
    code, doc = run_json(capsys, "base-size", "--group", "pgl2:7/pairs")
    assert code == 0
    assert list(doc) == ["group", "results", "methods", "elapsed_ms"]
    assert doc["results"]["b"] == 2
    assert doc["results"]["witness"] == [0, 1]


def test_json_round_trip_is_stable(capsys):
    _, a = run_json(capsys, "tm", "--group", "a:5@6", "--m", "3")
    _, b = run_json(capsys, "tm", "--group", "a:5@6", "--m", "3")
    a.pop("elapsed_ms"), b.pop("elapsed_ms")
    assert a == b
    assert json.loads(json.dumps(a)) == a
    assert a["results"]["t"] == 10


def test_wreath_verify(capsys):
    code, doc = run_json(capsys, "wreath-verify", "--L", "psl2:11/cosets:N(C6)", "--P", "c:2")
    assert code == 0
    assert doc["results"]["formula_r"] == doc["results"]["brute_r"] == 1


def test_text_output(capsys):
    assert main(["info", "--group", "m10"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("group: m10")
    assert "720" in out


def test_construct_writes_loadable_file(tmp_path, capsys):
    path = tmp_path / "g.json"
    assert main(["construct", "--group", "psl2:7", "--out", str(path)]) == 0
    assert load_group_file(path).order() == 168


def test_bad_input_exits_1(capsys):
    assert main(["info", "--group", "bogus:3"]) == 1
    assert "error" in capsys.readouterr().err


def test_budget_exits_2(capsys):
    code = main(["base-size", "--group", "wr:s:5|c:3", "--max-points", "100"])
    assert code == 2


def test_unknown_subcommand_is_usage_error():
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2


def test_prodtype_extras(capsys):
    code, doc = run_json(capsys, "prodtype", "--L", "m10/cosets:N(C5)", "--P", "s:2", "--extra", "a,a")
    assert code == 0
    assert (doc["results"]["b"], doc["results"]["tau"]) == (3, 0)


def test_saxl_command(capsys, tmp_path):
    dot = tmp_path / "g.dot"
    code, doc = run_json(capsys, "saxl", "--group", "a:5@10", "--diameter", "--stars", "--dot", str(dot))
    assert code == 0
    assert doc["results"]["eulerian"] == (doc["results"]["valency"] % 2 == 0)
    assert dot.read_text().startswith("graph")


@pytest.mark.parametrize("row", [r for r in load_fixtures() if r["kind"] not in ("prodtype", "wreath-verify")],
                         ids=lambda r: r["name"])
def test_fixture_rows(row):
    ok, got = run_fixture(row, Budget(10**7, 5 * 10**6))
    assert ok, got


def test_fixture_defaults_cover_kinds():
    kinds = {r["kind"] for r in load_fixtures()}
    assert {"regular", "reg", "prodtype", "saxl"} <= kinds
    assert set(FIXTURE_DEFAULTS) <= set(kinds) | {"base-size", "tm", "dist"}


def test_console_entry_point():
    res = subprocess.run([sys.executable, "-m", "prodbase.cli", "dist", "--group", "s:4", "--json"],
                         capture_output=True, text=True, check=True)
    assert json.loads(res.stdout)["results"]["D"] == 4
