import io
import json
import os
import subprocess
import sys
from pathlib import Path

import jsonschema
import pytest

from qsym.cli import RunConfig, default_order, main

SCHEMAS = Path(__file__).resolve().parents[1] / "schemas"


def run(*argv):
    s = io.StringIO()
    code = main(list(argv), s)
    return code, s.getvalue()


def run_json(*argv):
    code, out = run(*argv)
    return code, json.loads(out)


def schema(name):
    return json.loads((SCHEMAS / f"{name}.json").read_text())


def validate(data, name):
    jsonschema.Draft202012Validator(schema(name)).validate(data)


def test_rmatrix_su2():
    code, out = run_json("rmatrix", "--group", "SU", "--N", "2")
    assert code == 0
    assert out["R"]["dim"] == 4 and out["R"]["entries"][0][0] == "q^(1/2)"
    validate(out, "rmatrix")


def test_rmatrix_odd_sp_is_invalid():
    code, out = run_json("rmatrix", "--group", "Sp", "--N", "3")
    assert code == 2 and out["error"] == "validation"
    validate(out, "error")


def test_rmatrix_yb_check():
    code, out = run_json("rmatrix", "--group", "SO", "--N", "3", "--check", "yb")
    assert code == 0 and out["holds"] is True
    validate(out, "rmatrix")


@pytest.mark.parametrize("argv", [["--family", "AI", "--n", "2"], ["--family", "CII", "--n", "4", "--l", "1"]])
def test_reflect_holds(argv):
    code, out = run_json("reflect", *argv)
    assert code == 0 and out["holds"] is True
    validate(out, "reflect")


def test_reflect_zero_override():
    code, out = run_json("reflect", "--family", "AI", "--n", "2", "--override", "a1=1,a2=0")
    assert code == 2 and out["exit_code"] == 2
    validate(out, "error")


def test_macdonald_c1():
    code, out = run_json("macdonald", "--system", "C", "--rank", "1", "--mult", "1", "--mu", "2")
    assert code == 0
    (p,) = out["polynomials"]
    assert p["mu"] == [2] and p["expansion"][0] == {"nu": [2], "coeff": "1"}
    validate(out, "macdonald")
    code, out = run_json("macdonald", "--system", "C", "--rank", "1", "--mult", "1", "--mu", "0")
    assert out["polynomials"][0]["expansion"] == [{"nu": [0], "coeff": "1"}]


def test_macdonald_ortho_report():
    code, out = run_json("macdonald", "--system", "C", "--rank", "2", "--mult", "1,1", "--base", "4",
                         "--verify", "ortho", "--Q", "12", "--degree", "3")
    assert code == 0 and out["holds"] is True
    validate(out, "macdonald")


def test_spherical_case7_echoes_tuple():
    code, out = run_json("spherical", "--case", "7", "--n", "5", "--lambda", "1,1,0,0,0")
    assert code == 0
    assert out["parameters"]["tuple"] == "(q^3,q^3,-q,-q;q^2,q^4)"
    assert out["mu"] == ["1", "0"]
    validate(out, "spherical")


def test_spherical_outside_lattice():
    code, out = run_json("spherical", "--case", "3", "--n", "2", "--lambda", "1,0")
    assert code == 2 and out["error"] == "lattice"
    validate(out, "error")


def test_spherical_type_a_unimplemented(capsys):
    code, out = run_json("spherical", "--case", "1", "--n", "3", "--lambda", "0,0,0")
    assert code == 3 and out["error"] == "unimplemented"
    assert "unimplemented: type-A cases" in capsys.readouterr().err
    validate(out, "error")


def test_output_is_byte_identical():
    argv = ["macdonald", "--system", "B", "--rank", "2", "--mult", "1,2", "--degree", "2", "--verify", "adjoint",
            "--seed", "5", "--Q", "8"]
    assert run(*argv) == run(*argv)


def test_config_round_trip(tmp_path):
    code, first = run_json("spherical", "--case", "5", "--n", "4", "--lambda", "1,1,0,0", "--Q", "9")
    assert RunConfig.from_json(first["config"]).to_json() == first["config"]
    path = tmp_path / "run.json"
    path.write_text(json.dumps(first["config"]))
    code, again = run_json("spherical", "--config", str(path))
    assert again == first
    validate(first["config"], "runconfig")


def test_config_rejects_unknown_keys(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"command": "rmatrix", "colour": "red"}))
    code, out = run_json("rmatrix", "--config", str(path))
    assert code == 2


def test_order_from_environment(monkeypatch):
    monkeypatch.delenv("QSYM_ORDER", raising=False)
    assert default_order() == 12
    monkeypatch.setenv("QSYM_ORDER", "7")
    assert default_order() == 7
    monkeypatch.setenv("QSYM_ORDER", "seven")
    code, out = run_json("macdonald", "--system", "C", "--rank", "1", "--mult", "1", "--mu", "1",
                         "--verify", "ortho")
    assert code == 2


def test_text_and_latex_formats():
    code, text = run("macdonald", "--system", "C", "--rank", "1", "--mult", "1", "--mu", "2", "--format", "text")
    assert code == 0 and text.startswith("P(2) = ")
    code, latex = run("macdonald", "--system", "C", "--rank", "1", "--mult", "1", "--mu", "2", "--format", "latex")
    assert code == 0 and latex.startswith("P_{2} = m_{2}")
    code, latex = run("rmatrix", "--group", "SU", "--N", "2", "--format", "latex")
    assert "\\begin{pmatrix}" in latex


def test_module_entry_point():
    env = dict(os.environ, QSYM_ORDER="10")
    res = subprocess.run([sys.executable, "-m", "qsym", "rmatrix", "--group", "Sp", "--N", "3"],
                         capture_output=True, text=True, env=env)
    assert res.returncode == 2
    assert json.loads(res.stdout)["error"] == "validation"
