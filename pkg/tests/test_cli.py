import json
import subprocess
import sys

import pytest

from boxsubdiv.boxspline import box_symbol
from boxsubdiv.cli import decimal_string, run
from boxsubdiv.mask import Mask


def call(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_analyze_butterfly(capsys):
    code, out, _ = call(capsys, "analyze", "butterfly")
    assert code == 0
    assert "sum-rule order: 4" in out and "interpolatory: yes" in out


def test_generators_dim3(capsys):
    code, out, _ = call(capsys, "generators", "--dim", "3", "--order", "1")
    assert code == 0 and "count: 16" in out
    code, out, _ = call(capsys, "generators", "--dim", "2", "--order", "4", "--json")
    data = json.loads(out)
    assert len(data["result"]["generators"]) == 7


def test_certify_gp(capsys):
    code, out, _ = call(capsys, "certify", "gp-combination", "--max-iter", "8")
    assert code == 0 and "verdict: certified" in out and "norm: " in out


def test_decompose_interp(capsys):
    code, out, _ = call(capsys, "decompose", "interp4pt2d", "--order", "4")
    assert code == 0 and "verified: yes" in out and "sum of weights: 1 " in out
    code, out, _ = call(capsys, "decompose", "interp4pt2d", "--order", "4", "--json")
    assert json.loads(out)["result"]["verified"] is True


def test_decompose_precondition_is_validation_error(capsys):
    code, _, err = call(capsys, "decompose", "butterfly", "--order", "5")
    assert code == 2 and "Z_5" in err


def test_solver_incomplete_exit_code(capsys, monkeypatch):
    from boxsubdiv import cli
    from boxsubdiv.decompose import SolverIncomplete

    def give_up(*args, **kwargs):
        raise SolverIncomplete(1, 0)

    monkeypatch.setattr(cli, "decompose", give_up)
    code, _, err = call(capsys, "decompose", "butterfly", "--order", "1")
    assert code == 3 and "no decomposition" in err


def test_mask_files_and_bad_input(capsys, tmp_path):
    path = tmp_path / "m.json"
    Mask(box_symbol(1, 1, 1, normalized=False)).save(path)
    code, out, _ = call(capsys, "analyze", str(path))
    assert code == 0 and "sum-rule order: 2" in out
    dup = tmp_path / "dup.json"
    dup.write_text('{"dim": 1, "denominator": 1, "coeffs": [{"idx": [0], "num": 1}, {"idx": [0], "num": 1}]}')
    assert call(capsys, "analyze", str(dup))[0] == 2
    zero = tmp_path / "zero.json"
    zero.write_text('{"dim": 1, "denominator": 0, "coeffs": []}')
    assert call(capsys, "analyze", str(zero))[0] == 2
    assert call(capsys, "analyze", str(tmp_path / "missing.json"))[0] == 2
    assert call(capsys, "frobnicate")[0] == 2
    assert call(capsys, "certify", "butterfly", "--max-iter", "0")[0] == 2


def test_catalog_names_shadow_files(capsys, tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    (tmp_path / "butterfly").write_text("not a mask")
    code, out, _ = call(capsys, "analyze", "butterfly")
    assert code == 0 and "catalog:butterfly" in out


def test_refine_text_and_file_data(capsys, tmp_path):
    code, out, _ = call(capsys, "refine", "bspline-2", "--steps", "2")
    lines = out.splitlines()
    assert code == 0 and "level: 2" in lines
    assert "3\t1\t1.000000000000" in lines
    data = tmp_path / "d.json"
    data.write_text('{"dim": 1, "denominator": 2, "coeffs": [{"idx": [0], "num": 1}, {"idx": [1], "num": 3}]}')
    code, out, _ = call(capsys, "refine", "bspline-2", "--steps", "1", "--data", str(data), "--json")
    result = json.loads(out)["result"]
    assert code == 0 and result["level"] == 1 and result["denominator"] == 4


def test_catalog_commands(capsys):
    code, out, _ = call(capsys, "catalog", "list")
    assert code == 0 and "butterfly" in out
    code, out, _ = call(capsys, "catalog", "show", "interp4pt2d")
    assert code == 0 and "denominator 32" in out and '"denominator": 32' in out
    assert call(capsys, "catalog", "show", "nope")[0] == 2
    assert call(capsys, "catalog", "show")[0] == 2


def test_reports_are_deterministic(capsys):
    first = call(capsys, "decompose", "butterfly", "--order", "4")[1]
    second = call(capsys, "decompose", "butterfly", "--order", "4")[1]
    assert first == second


def test_verify_subset(capsys):
    code, out, _ = call(capsys, "verify-paper", "--only", "1", "2", "5")
    assert code == 0 and out.count("[PASS]") == 3


def test_decimal_formatting():
    from fractions import Fraction

    assert decimal_string(Fraction(1, 3)) == "0.333333333333"
    assert decimal_string(Fraction(-2, 3)) == "-0.666666666667"
    assert decimal_string(Fraction(10 ** 30, 7)) == "142857142857142857142857142857.142857142857"


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "boxsubdiv", "analyze", "interp4pt2d"], capture_output=True, text=True)
    assert proc.returncode == 0 and "sum-rule order: 4" in proc.stdout
