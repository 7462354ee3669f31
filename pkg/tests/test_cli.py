from __future__ import annotations

import io
import json
import subprocess
import sys

import jsonschema
import pytest

from fdecomp.cli import run
from fdecomp.schemas import SCHEMAS, validate_output


def cli(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def ok_json(*argv):
    code, out, err = cli(*argv, "--format", "json")
    assert code == 0, err
    doc = json.loads(out)
    validate_output(argv[0], doc)
    return doc


def test_seq_csv_golden():
    code, out, _ = cli("seq", "--rule", "constant:1", "--count", "10", "--format", "csv")
    assert code == 0
    fib = [1, 2, 3, 5, 8, 13, 21, 34, 55, 89]
    assert out == "index,value\n" + "".join(f"{i},{v}\n" for i, v in enumerate(fib))


def test_seq_plain_and_start():
    code, out, _ = cli("seq", "--rule", "bbin:3", "--count", "3", "--start", "10")
    assert code == 0
    assert out == "97\n153\n209\n"


def test_seq_json_big_terms_are_strings():
    doc = ok_json("seq", "--rule", "constant:1", "--count", "3", "--start", "500")
    assert all(isinstance(t, str) for t in doc["terms"])
    assert len(doc["terms"][0]) > 100


def test_decomp_golden():
    code, out, _ = cli("decomp", "--rule", "bbin:3", "--x", "100", "--format", "json")
    assert code == 0
    assert out == '{"x":"100","indices":[10,2],"summands":["97","3"]}\n'


def test_decomp_other_formats():
    assert cli("decomp", "--rule", "constant:1", "--x", "100", "--format", "plain")[1] == "100 = 89 + 8 + 3\n"
    assert cli("decomp", "--rule", "constant:1", "--x", "0", "--format", "plain")[1] == "0 = 0\n"
    assert cli("decomp", "--rule", "constant:1", "--x", "100", "--format", "csv")[1] == (
        "index,summand\n9,89\n4,8\n2,3\n"
    )


@pytest.mark.parametrize("rule", ["constant:1", "bbin:3", "factorial"])
def test_check_unique_success(rule):
    doc = ok_json("check-unique", "--rule", rule, "--x-max", "2000")
    assert doc["ok"] is True
    assert doc["checked"] == 2001
    assert doc["counterexample"] is None


def test_check_unique_counterexample_exit_2():
    code, out, err = cli("check-unique", "--rule", "constant:1", "--x-max", "20", "--index-cap", "3", "--format", "json")
    assert code == 2
    doc = json.loads(out)
    validate_output("check-unique", doc)
    assert doc["ok"] is False
    assert doc["counterexample"]["x"] == 8
    assert "verification failed" in err


def test_check_unique_budget_exit_2(monkeypatch):
    monkeypatch.setenv("FDECOMP_ORACLE_BUDGET", "2")
    code, out, err = cli("check-unique", "--rule", "bbin:3", "--x-max", "500", "--format", "json")
    assert code == 2
    doc = json.loads(out)
    validate_output("check-unique", doc)
    assert doc["ok"] is False
    assert doc["checked"] < 501
    assert "exceeded" in doc["error"]


def test_recurrence_three_bin():
    doc = ok_json("recurrence", "--rule", "bbin:3")
    assert doc["coefficients"] == ["0", "0", "4", "0", "0", "-1"]
    assert doc["valid_from"] == 6
    assert doc["order"] == 6
    assert doc["nonneg_feasible"] == "unknown_beyond_30"


def test_recurrence_fibonacci_nonneg():
    doc = ok_json("recurrence", "--rule", "constant:1")
    assert doc["coefficients"] == ["1", "1"]
    assert doc["nonneg_feasible"] is True


def test_recurrence_unminimized():
    doc = ok_json("recurrence", "--rule", "bbin:3", "--no-minimize")
    assert doc["order"] == 18


def test_recurrence_plain():
    code, out, _ = cli("recurrence", "--rule", "bbin:3", "--format", "plain")
    assert code == 0
    assert out.splitlines()[0] == "a(n) = 4*a(n-3) - a(n-6) for n >= 6"


def test_recurrence_unsupported_rule_exit_1():
    code, _, err = cli("recurrence", "--rule", "factorial")
    assert code == 1
    assert "periodic" in err


@pytest.mark.parametrize("emit", ["table", "moments", "ks"])
@pytest.mark.parametrize("system", ["bbin:3", "factorial"])
def test_stats_json(system, emit):
    doc = ok_json("stats", "--system", system, "--n", "6", "--emit", emit)
    assert doc["emit"] == emit


def test_stats_csv_table():
    code, out, _ = cli("stats", "--system", "bbin:3", "--n", "2")
    assert code == 0
    assert out == "n,k,count\n0,0,1\n1,0,1\n1,1,3\n2,0,1\n2,1,6\n2,2,8\n"


def test_stats_moments_exact():
    doc = ok_json("stats", "--system", "bbin:3", "--n", "2", "--emit", "moments")
    assert doc["rows"][1] == {"n": 1, "mean": "3/4", "variance": "3/16"}
    assert doc["rows"][2]["mean"] == "22/15"


def test_stats_bad_system():
    assert cli("stats", "--system", "bbin:2", "--n", "3")[0] == 1
    assert cli("stats", "--system", "fibonacci", "--n", "3")[0] == 1


def test_nonneg():
    doc = ok_json("nonneg", "--poly", "1,0,0,-4,0,0,1", "--max-degree", "30")
    assert doc["feasible"] is False
    assert doc["degree"] is None
    doc = ok_json("nonneg", "--poly", "1,-1,-1", "--max-degree", "10")
    assert doc["feasible"] is True
    assert doc["degree"] == 2
    assert doc["recurrence"] == ["1", "1"]
    doc = ok_json("nonneg", "--rule", "constant:1")
    assert doc["charpoly"] == ["1", "-1", "-1"]


@pytest.mark.parametrize(
    "argv",
    [
        ["seq"],
        ["seq", "--rule", "constant:1", "--count", "-3"],
        ["seq", "--rule", "nope"],
        ["decomp", "--rule", "constant:1"],
        ["nonneg"],
        ["nonneg", "--poly", "1,x"],
        ["nonneg", "--poly", "1,-1", "--rule", "constant:1"],
        ["nonneg", "--poly", "1,-1,-1", "--max-degree", "1"],
        ["bogus"],
        [],
    ],
)
def test_usage_errors_exit_1(argv):
    code, out, err = cli(*argv)
    assert code == 1
    assert out == ""
    assert err


def test_help_exits_0(capsys):
    assert run(["--help"]) == 0
    assert "seq" in capsys.readouterr().out


def test_rule_file(tmp_path):
    path = tmp_path / "rule.json"
    path.write_text('{"kind": "periodic", "pattern": [0, 1, 2, 3]}')
    code, out, _ = cli("seq", "--rule", str(path), "--count", "12")
    assert code == 0
    assert out.split() == "1 2 3 4 5 10 15 20 25 50 75 100".split()
    bad = tmp_path / "bad.json"
    bad.write_text('{"kind": "periodic", "pattern": []}')
    code, _, err = cli("seq", "--rule", str(bad))
    assert code == 1
    assert "pattern" in err


def test_deterministic_output():
    argv = ["stats", "--system", "factorial", "--n", "30", "--emit", "ks", "--format", "json"]
    assert cli(*argv)[1] == cli(*argv)[1]
    argv = ["recurrence", "--rule", "bbin:4", "--format", "json"]
    assert cli(*argv)[1] == cli(*argv)[1]


def test_schemas_reject_loose_documents():
    with pytest.raises(jsonschema.ValidationError):
        validate_output("decomp", {"x": 100, "indices": [10, 2], "summands": ["97", "3"]})
    with pytest.raises(jsonschema.ValidationError):
        validate_output("decomp", {"x": "100", "indices": [10, 2], "summands": ["97", "3"], "extra": 1})
    assert set(SCHEMAS) == {"seq", "decomp", "check-unique", "recurrence", "stats", "nonneg"}


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "fdecomp", "decomp", "--rule", "constant:1", "--x", "100"],
        capture_output=True,
        text=True,
        check=False,
        timeout=60,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["indices"] == [9, 4, 2]
