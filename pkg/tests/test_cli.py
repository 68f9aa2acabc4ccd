import json
import subprocess
import sys

import pytest

import golden
from marksmith.cli import run
from marksmith.matrices import LabeledMatrix


def test_tom_text():
    code, out = run(["tom", "S3", "--format", "text"])
    assert code == 0
    lines = out.splitlines()
    assert lines[2] == "1 | 6 . . ."
    assert lines[5] == "G | 1 1 1 1"


def test_tom_json_roundtrip():
    code, out = run(["tom", "S3", "--format", "json"])
    assert code == 0
    assert LabeledMatrix.from_json(out) == golden.labelled(golden.TOM_S3)


def test_tom_oracle_method_agrees():
    assert run(["tom", "A4", "--method", "oracle", "--threads", "2"]) == run(["tom", "A4"])


def test_tom_product_both():
    code, out = run(["tom-product", "S3", "S3", "--method", "both", "--format", "json"])
    assert code == 0
    assert LabeledMatrix.from_json(out) == golden.product_matrix(golden.TOM)


def test_tom_product_explicit_generators():
    code, out = run(["tom-product", "perm:3:(1,2,3);(1,2)", "C2", "--format", "csv"])
    assert code == 0
    assert out.splitlines()[0].startswith(",L1,L2")


def test_sections_and_morphisms():
    code, out = run(["sections", "S3", "--cim", "prime", "--format", "json"])
    assert code == 0
    m = LabeledMatrix.from_json(out)
    assert m.permuted(golden.labelled(golden.SECTIONS_PRIME).rows) == golden.labelled(golden.SECTIONS_PRIME)
    code, out = run(["sections", "S3"])
    assert code == 0 and len(out.splitlines()) == 9
    code, out = run(["morphisms", "A5", "--type", "C3", "--cim", "--format", "json"])
    assert LabeledMatrix.from_json(out).as_lists() == golden.A5_C3_MORPHISMS
    code, out = run(["morphisms", "A5", "--type", "C3", "--collapse", "--format", "json"])
    assert LabeledMatrix.from_json(out).as_lists() == golden.A5_C3_SECTIONS


def test_classes_table():
    code, out = run(["classes", "S3", "S3", "--format", "json"])
    rows = json.loads(out)
    assert len(rows) == 22
    assert rows[16]["class"] == "L17" and rows[16]["left_section"] == "(2,1)"
    assert rows[21]["type"] == "S3" and rows[21]["normalizer_index"] == "1"


def test_dbr_commands():
    code, out = run(["dbr", "--beta", "22", "--format", "json"])
    assert code == 0
    m = LabeledMatrix.from_json(out)
    assert m == LabeledMatrix.identity(m.rows)
    code, out = run(["dbr", "--check-hom", "--format", "json"])
    rep = json.loads(out)
    assert code == 0 and rep["failures"] == [] and rep["injective"]
    code, out = run(["dbr", "--radical", "--format", "json"])
    assert code == 0 and json.loads(out)["quotient_dimension"] == 12
    code, out = run(["dbr", "--mprime", "--format", "csv"])
    assert code == 0 and len(out.splitlines()) == 23


@pytest.mark.parametrize("argv", [
    ["tom"],
    ["tom", "Z5"],
    ["nonsense"],
    ["sections", "S3", "--cim", "xyz"],
    ["morphisms", "S3", "--type", "A5"],
    ["dbr"],
    ["dbr", "--beta", "40"],
    ["tom", "S3", "--threads", "0"],
    ["tom", "perm:3:(1,4)"],
])
def test_parse_errors_exit_2(argv):
    code, out = run(argv)
    assert code == 2 and out.startswith("error:")


def test_bound_exit_3(monkeypatch):
    monkeypatch.setenv("MARKSMITH_MAX_ORDER", "20")
    code, out = run(["tom", "S4"])
    assert code == 3


def test_out_file(tmp_path):
    target = tmp_path / "m.json"
    code, out = run(["tom", "S3", "--format", "json", "--out", str(target)])
    assert code == 0 and out == ""
    assert LabeledMatrix.from_json(target.read_text()) == golden.labelled(golden.TOM_S3)


def test_module_entry_point_is_deterministic():
    cmd = [sys.executable, "-m", "marksmith", "tom-product", "S3", "C3", "--format", "json"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b and a


def test_mismatch_exit_1(monkeypatch):
    import marksmith.marks as marks

    real = marks.oracle_tom_product

    def broken(prod, threads=1):
        m = real(prod, threads)
        rows = m.as_lists()
        rows[0][0] += 1
        return LabeledMatrix.square(m.rows, rows)

    monkeypatch.setattr(marks, "oracle_tom_product", broken)
    code, out = run(["tom-product", "C2", "C2", "--method", "both"])
    assert code == 1 and "mismatch at L1,L1" in out
