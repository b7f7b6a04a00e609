import csv
import io
import json
from importlib import resources

import jsonschema
import pytest

from trigzeta.cli import run


def _run(argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(argv, stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def _schema(name):
    return json.loads(resources.files("trigzeta").joinpath(f"schemas/{name}.json").read_text())


@pytest.fixture
def classical(tmp_path):
    p = tmp_path / "classical.json"
    p.write_text(json.dumps({"coefficients": [3, 4, 1]}))
    return str(p)


def test_check_classical(classical):
    code, out, _ = _run(["check", classical])
    assert code == 0
    d = json.loads(out)
    jsonschema.validate(d, _schema("check"))
    assert d["admissible"] and d["ratio"] == 0.75


def test_check_exact_prints_rationals(classical):
    d = json.loads(_run(["check", classical, "--exact"])[1])
    assert d["ratio"] == "3/4" and d["exponents"] == ["3/4", "1/4"]


def test_check_failure_exit_one(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text(json.dumps({"coefficients": ["3", "41/10", "1"]}))
    code, out, _ = _run(["check", str(p)])
    assert code == 1
    assert json.loads(out)["nonneg"]["verdict"] == "negative-witness"


def test_check_unreadable_file(tmp_path):
    code, _, err = _run(["check", str(tmp_path / "missing.json")])
    assert code == 1 and "cannot read" in err


def test_optimize_round_trips_into_check(tmp_path):
    code, out, _ = _run(["optimize", "--degree", "4", "--emit-trace", str(tmp_path / "t.csv")])
    assert code == 0
    d = json.loads(out)
    jsonschema.validate(d, _schema("optimize"))
    assert d["coefficients"] == ["1", "4/3", "1/3"] and d["ratio"] == 0.75
    assert (tmp_path / "t.csv").read_text().startswith("round,grid_size,objective")
    p = tmp_path / "opt.json"
    p.write_text(out)
    assert _run(["check", str(p)])[0] == 0


def test_lemma(tmp_path):
    code, out, _ = _run(["lemma", "--degree", "6", "--exact"])
    d = json.loads(out)
    jsonschema.validate(d, _schema("lemma"))
    assert code == 0 and d["maximum"] == "1/3" and d["support"] == [2]


def test_bound_and_compare(classical):
    code, out, _ = _run(["bound", "--poly", classical, "--sigma", "1.5", "--t", "10"])
    assert code == 0
    jsonschema.validate(json.loads(out), _schema("bound"))
    code, out, _ = _run(["compare", "--poly", classical, "--sigma", "1.0723", "--t", "1e6"])
    d = json.loads(out)
    jsonschema.validate(d, _schema("compare"))
    assert code == 0 and d["superior"] is True


def test_domain_error_exit_one(classical):
    code, _, err = _run(["bound", "--poly", classical, "--sigma", "1", "--t", "10"])
    assert code == 1 and "sigma" in err


def test_contract_error_exit_one(tmp_path):
    p = tmp_path / "p.json"
    p.write_text(json.dumps({"coefficients": [3, 1, 1]}))
    assert _run(["compare", "--poly", str(p), "--sigma", "1.5", "--t", "10"])[0] == 1


def test_scan_csv_and_json(classical):
    argv = ["scan", "--poly", classical, "--t-min", "1e3", "--t-max", "1e4", "--points", "3",
            "--delta-rule", "inv_log"]
    code, out, _ = _run(argv + ["--literature"])
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["t", "sigma", "trivial_inv", "trig_inv", "superior", "factor_0", "factor_2", "lit_1_it"]
    assert len(rows) == 4
    code, out, _ = _run(argv + ["--format", "json"])
    d = json.loads(out)
    jsonschema.validate(d, _schema("scan"))
    assert len(d["rows"]) == 3 and "trig_radius" in d["rows"][0]


def test_scan_fixed_delta(classical):
    code, out, _ = _run(["scan", "--poly", classical, "--t-min", "10", "--t-max", "10", "--points", "1",
                         "--delta-rule", "fixed:0.5"])
    assert code == 0 and out.splitlines()[1].startswith("10,1.5,")


def test_text_format(classical):
    code, out, _ = _run(["check", classical, "--format", "text"])
    assert code == 0 and "admissible: True" in out


def test_output_is_deterministic(classical):
    argv = ["compare", "--poly", classical, "--sigma", "1.2", "--t", "50"]
    assert _run(argv)[1] == _run(argv)[1]


@pytest.mark.parametrize("argv", [[], ["frobnicate"], ["lemma"], ["lemma", "--degree", "x"],
                                  ["check", "a.json", "--bogus"],
                                  ["scan", "--poly", "p", "--t-min", "1", "--t-max", "2", "--points", "2",
                                   "--delta-rule", "sqrt"]])
def test_usage_errors_exit_two(argv, capsys):
    code, _, _ = _run(argv)
    assert code == 2
    assert "usage" in capsys.readouterr().err


def test_csv_only_for_scan(classical):
    assert _run(["check", classical, "--format", "csv"])[0] == 2
