import csv
import io
import json
import os
import subprocess
import sys

import pytest

from heckegrade import temperley_lieb as tl
from heckegrade.cli import load_config, main
from heckegrade.coxeter import CoxeterSystem
from heckegrade.errors import ConfigError
from heckegrade.hecke import HeckeAlgebra, HeckeElement, ParameterMap, bott_samelson

CONFIGS = os.path.join(os.path.dirname(__file__), os.pardir, "configs")


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def cfg(name):
    return os.path.join(CONFIGS, name)


def test_binom_table(capsys):
    code, out, _ = run(capsys, "binom", "--max-n", "8", "--format", "csv")
    assert code == 0
    rows = {(int(r["n"]), int(r["k"])): int(r["value"]) for r in csv.DictReader(io.StringIO(out))}
    assert rows[(8, 4)] == 6 and rows[(5, 3)] == -2 and rows[(4, 1)] == 0


def test_binom_char_p(capsys):
    code, out, _ = run(capsys, "binom", "--max-n", "5", "--char", "3", "--format", "json")
    assert code == 0
    vals = {(r["n"], r["k"]): r["value"] for r in json.loads(out)}
    assert vals[(5, 3)] == 1


@pytest.mark.parametrize("argv", [
    ["binom", "--bogus"], ["binom", "--char", "4"], ["binom", "--max-n", "-1"], [], ["nope"],
    ["jw"], ["grading-check", "--config", "/nonexistent.json"],
])
def test_usage_errors(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_jw_json_roundtrip(capsys):
    code, out, _ = run(capsys, "jw", "--n", "5", "--format", "json")
    assert code == 0
    assert tl.TLElement.from_json(json.loads(out)) == tl.jw_at_zero(5, 0)


def test_jw_two_step_matches(capsys):
    _, a, _ = run(capsys, "jw", "--n", "7", "--method", "two-step", "--format", "json")
    _, b, _ = run(capsys, "jw", "--n", "7", "--format", "json")
    assert json.loads(a) == json.loads(b)


@pytest.mark.parametrize("n,p,code", [(3, 0, 0), (4, 0, 3), (5, 3, 0), (7, 3, 3)])
def test_jw_existence_exit_codes(capsys, n, p, code):
    assert run(capsys, "jw", "--n", str(n), "--char", str(p))[0] == code


def test_jw_homogeneity(capsys):
    code, out, _ = run(capsys, "jw", "--n", "5", "--char", "3", "--check-homogeneity")
    assert code == 0
    assert out.splitlines()[-1] == "verdict: homogeneous"


@pytest.mark.parametrize("name,code", [
    ("bigrading_i2_4.json", 0), ("p_adapted_i2_4_char2.json", 0), ("unbalanced_roots_i2_3.json", 1),
    ("invalid_realization_i2_4.json", 1), ("infinite_dihedral_double0.json", 0),
])
def test_grading_check_configs(capsys, name, code):
    got, out, _ = run(capsys, "grading-check", "--config", cfg(name))
    assert got == code
    assert "verdict" in out


def test_schema_rejects(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"coxeter_matrix": [[1, 3], [3, 1]], "grading": {"preset": "nope"}}))
    assert run(capsys, "grading-check", "--config", str(bad))[0] == 2
    with pytest.raises(ConfigError):
        load_config({"coxeter_matrix": "x"})


def test_hecke_expansion(capsys):
    code, out, _ = run(capsys, "hecke", "--expression", "s1,s2", "--format", "json")
    assert code == 0
    data = json.loads(out)
    alg = HeckeAlgebra(ParameterMap.free(CoxeterSystem.dihedral("inf")))
    assert HeckeElement.from_json(alg, data["expansion"]) == bott_samelson(alg, (0, 1))


def test_hecke_limits(capsys):
    assert run(capsys, "hecke", "--expression", ",".join(["s1"] * 23))[0] == 3
    assert run(capsys, "hecke", "--system", "dihedral:3", "--expression", "s3")[0] == 2
    code, out, _ = run(capsys, "hecke", "--system", "symmetric:3", "--expression", "s1,s2,s1", "--format", "csv")
    assert code == 0 and len(out.strip().splitlines()) == 1 + 6


def test_double0_outputs_are_deterministic(capsys):
    _, a, _ = run(capsys, "double0", "--max-length", "6")
    _, b, _ = run(capsys, "double0", "--max-length", "6")
    assert a == b
    assert a.splitlines()[0] == "basis,delta,coefficient"


def test_double0_verify_and_cells(capsys):
    code, out, err = run(capsys, "double0", "--max-length", "12", "--verify", "--cells", "--format", "text")
    assert code == 0
    assert "all checks pass" in err
    assert "right cell 5" in out


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "heckegrade", "binom", "--max-n", "2"],
                         capture_output=True, text=True)
    assert res.returncode == 0
    assert res.stdout.strip()
