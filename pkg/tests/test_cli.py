import io
import json
import shlex
import subprocess
import sys

import pytest

from cohsite import spectrum
from cohsite.cli import run

from cli_cases import CASES
from conftest import ROOT

GOLDEN = ROOT / "tests" / "golden"
EXPECTED_EXIT = {
    "cover_pair_zar": 1, "descent_trunc3": 1, "affine_p1": 1, "affine_lattices": 0, "affine_z4": 0,
    "vanish_z6_mod2": 1, "vanish_z6_zero": 0, "error_missing_file": 2, "error_bad_element": 2, "guard_f1xy": 3,
}


def invoke(argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(shlex.split(argv) if isinstance(argv, str) else argv, stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


@pytest.mark.parametrize("name", sorted(CASES))
def test_golden(name, examples_dir):
    code, out, err = invoke(CASES[name])
    assert f"exit: {code}\n{out}{err}" == (GOLDEN / f"{name}.txt").read_text()
    if name in EXPECTED_EXIT:
        assert code == EXPECTED_EXIT[name]


def test_doc_output_is_json(examples_dir):
    code, out, _ = invoke("descent --algebra z6.json --elements 2,3")
    doc = json.loads(out)
    assert code == 0 and doc["exact"] is True and doc["equalizer_size"] == 6


def test_dot_output_shape(examples_dir):
    code, out, _ = invoke("spec --algebra z6.json --out dot")
    assert code == 0 and out.startswith("digraph") and out.rstrip().endswith("}")


def test_output_file(examples_dir, tmp_path):
    target = tmp_path / "spec.json"
    code, out, _ = invoke(["spec", "--algebra", "z6.json", "--output", str(target)])
    assert code == 0 and out == ""
    assert json.loads(target.read_text())


@pytest.mark.parametrize("argv", [
    "frobnicate",
    "spec",
    "spec --algebra z6.json --topology etale",
    "cover-check --algebra z6.json --elements 2,,3",
    "vanish --module z6.json",
])
def test_input_errors_exit_2(argv, examples_dir):
    code, _, err = invoke(argv)
    assert code == 2 and err


def test_budget_is_restored(examples_dir):
    before = (spectrum.OMEGA_BUDGET, spectrum.IDEAL_BUDGET)
    assert invoke("spec --algebra f1xy.json --budget 3")[0] == 3
    assert invoke("spec --algebra f1xy.json --budget 100000")[0] == 0
    assert (spectrum.OMEGA_BUDGET, spectrum.IDEAL_BUDGET) == before


def test_console_script_runs(examples_dir):
    proc = subprocess.run([sys.executable, "-m", "cohsite.cli", "cover-check", "--algebra", "z6.json",
                           "--elements", "2,3"], capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["cover"] is True
