import csv
import io
import json
import shutil
import subprocess
import sys
from fractions import Fraction as Fr
from pathlib import Path

import pytest

from genalg import cli, corpus
from genalg.associativity import build_generated_op
from genalg.semigroups import SUM

from helpers import IDENTITY, T_LUK

FIXTURES = Path(corpus.__file__).with_name("fixtures")


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def identity_file(tmp_path):
    path = tmp_path / "identity.json"
    path.write_text(json.dumps(IDENTITY.to_json()))
    return str(path)


def test_check_assoc_on_fixture(capsys):
    code, out, _ = run_cli(capsys, "--generator", str(FIXTURES / "FIX-6.1a.json"), "--cmd", "check-assoc")
    assert code == cli.EXIT_OK
    rep = json.loads(out)["check-assoc"]
    assert rep["verdict"] == "ASSOCIATIVE" and rep["grid_agrees"] and rep["grid_witness"] is None


def test_sample_grid_max(capsys, identity_file):
    code, out, _ = run_cli(capsys, "sample-grid", "--generator", identity_file, "--semigroup", "max", "--grid-n", "2")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 4
    for r in rows:
        assert Fr(r["T"]) == max(Fr(r["x"]), Fr(r["y"]))
        assert float(r["T_decimal"]) == float(Fr(r["T"]))


def test_sample_grid_threads_match_serial():
    g = build_generated_op(IDENTITY, SUM)
    serial = cli.grid_rows(g, 70, workers=1)
    assert len(serial) == 4900
    assert cli.grid_rows(g, 70, workers=4) == serial


def test_out_directory(tmp_path, capsys, identity_file):
    out = tmp_path / "reports"
    code, stdout, _ = run_cli(
        capsys, "--generator", identity_file, "--cmd", "inspect,range,sample-grid", "--out", str(out), "--grid-n", "3"
    )
    assert code == 0 and stdout == ""
    assert sorted(p.name for p in out.iterdir()) == ["grid.csv", "inspect.json", "range.json"]
    assert json.loads((out / "range.json").read_text())["range"]


def test_positional_and_flag_commands_deduplicate(capsys, identity_file):
    code, out, _ = run_cli(capsys, "range", "inspect", "--generator", identity_file, "--cmd", "range")
    assert code == 0
    # one JSON document per command, in first-seen order
    docs = [json.loads(d) for d in out.replace("}\n{", "}\n\x00{").split("\x00")]
    assert [list(d) for d in docs] == [["range"], ["inspect"]]


@pytest.mark.parametrize(
    "argv",
    [
        ["sample-grid", "--grid-n", "1"],
        ["sample-grid", "--grid-n", "10001"],
        ["bogus"],
        [],
        ["inspect", "--semigroup", "nonsense"],
    ],
)
def test_parse_errors(capsys, identity_file, argv):
    code, _, err = run_cli(capsys, *argv, "--generator", identity_file)
    assert code == cli.EXIT_PARSE
    assert "genalg: error" in err


def test_missing_and_malformed_generator(capsys, tmp_path):
    code, _, _ = run_cli(capsys, "inspect", "--generator", str(tmp_path / "nope.json"))
    assert code == cli.EXIT_PARSE
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"direction": "non_decreasing", "segments": [["0", True, "1/2", True, "AFFINE", ["1", "0"]]]}))
    code, _, _ = run_cli(capsys, "inspect", "--generator", str(bad))
    assert code == cli.EXIT_PARSE
    code, _, _ = run_cli(capsys, "inspect")
    assert code == cli.EXIT_PARSE


def test_precondition_exit(capsys):
    code, out, err = run_cli(capsys, "decompose", "range", "--generator", str(FIXTURES / "FIX-S7.json"))
    assert code == cli.EXIT_PRECONDITION
    assert "precondition" in err
    # the other command still reports
    assert "range" in json.loads(out)


def test_check_props_marks_inapplicable(capsys, tmp_path):
    path = tmp_path / "luk.json"
    path.write_text(json.dumps(T_LUK.to_json()))
    code, out, _ = run_cli(capsys, "check-props", "invert", "--generator", str(path), "--mode", "norm")
    assert code == 0
    text = out.replace("}\n{", "}\n\x00{").split("\x00")
    props = json.loads(text[0])["check-props"]
    assert all("not_applicable" in v for v in props.values())
    inv = json.loads(text[1])["invert"]
    assert "not_applicable" in inv["quasi_inverse_bounds"]


def test_check_props_on_fixture(capsys):
    code, out, _ = run_cli(capsys, "check-props", "--generator", str(FIXTURES / "FIX-LIM-2.json"))
    assert code == 0
    props = json.loads(out)["check-props"]
    assert props["limit_property"]["verdict"] == "FAILS"


def test_reports_are_deterministic(capsys):
    argv = ["--generator", str(FIXTURES / "FIX-6.1c.json"), "--cmd", "check-assoc,check-props,invert,decompose"]
    first = run_cli(capsys, *argv)
    second = run_cli(capsys, *argv)
    assert first == second


def test_fixtures_dir_override(monkeypatch, tmp_path, capsys):
    shutil.copy(FIXTURES / "FIX-LIM-1.json", tmp_path)
    monkeypatch.setenv(corpus.ENV_VAR, str(tmp_path))
    code, out, _ = run_cli(capsys, "fixtures")
    assert code == 0
    rep = json.loads(out)["fixtures"]
    assert [f["id"] for f in rep["fixtures"]] == ["FIX-LIM-1"]
    assert rep["summary"]["failed"] == 0


def test_module_entry_point(identity_file):
    proc = subprocess.run(
        [sys.executable, "-m", "genalg", "range", "--generator", identity_file],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["range"]
