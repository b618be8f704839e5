from __future__ import annotations

import io
import json
import subprocess
import sys

import pytest

from _util import FIXTURES
from hermself import cli
from hermself.fileformat import load_code

F13 = str(FIXTURES / "code13_7_f4.code")
F15 = str(FIXTURES / "code15_5_f9.code")


def run(*argv):
    out = io.StringIO()
    code = cli.main(list(argv), out=out)
    return code, out.getvalue()


def test_analyze_json_schema_is_stable():
    code, text = run("analyze", F13, "--format", "json")
    assert code == 0
    data = json.loads(text)
    assert sorted(data) == [
        "classification",
        "conditions_imposed",
        "dim_HF",
        "dim_P",
        "dim_check",
        "dual_distance",
        "extension_points",
        "field_order",
        "k",
        "n",
        "projective",
        "q",
        "rank_M",
    ]
    assert data["dim_HF"] == 36 and data["dim_P"] == 0
    assert data["classification"] == "EXTENDS"
    assert run("analyze", F13, "--format", "json")[1] == text


def test_puncture_report():
    code, text = run("puncture", F15, "--format", "json")
    assert code == 0
    data = json.loads(text)
    assert data["dim_P"] == 2
    assert data["weights"] == {"9": 4, "12": 2, "15": 2}
    assert len(data["basis"]) == 2


def test_puncture_dim_zero_has_empty_table():
    code, text = run("puncture", F13, "--format", "json")
    assert code == 0
    assert json.loads(text)["weights"] == {}


def test_zeros_and_extend(tmp_path):
    code, text = run("zeros", F13, "--format", "json")
    assert code == 0
    data = json.loads(text)
    assert data["common_zeros"] == 14
    assert data["outside_columns"] == ["(0,1,0,e+1,1,e+1,e+1)"]
    code, text = run("extend", F13, "--out-dir", str(tmp_path), "--format", "json")
    assert code == 0
    ext = json.loads(text)["extensions"]
    assert len(ext) == 1 and ext[0]["dim_P"] == 1 and ext[0]["hermitian_self_orthogonal"]
    E = load_code(ext[0]["file"]).build()
    assert (E.n, E.k) == (14, 7) and E.is_hermitian_self_orthogonal()


def test_quantum_command():
    code, text = run("quantum", F15, "--all", "--format", "json")
    assert code == 0
    rows = json.loads(text)["codes"]
    assert [r["code"] for r in rows] == ["[[9,1,5]]_3", "[[12,2,5]]_3", "[[15,5,5]]_3"]
    assert rows[0]["singleton_gap"] == 0
    code, text = run("quantum", F15, "--weight", "12")
    assert code == 0 and "[[12,2,5]]_3" in text
    code, text = run("quantum", F15, "--weight", "10", "--format", "json")
    assert code == 0 and json.loads(text)["codes"] == []


def test_cyclic_command_writes_loadable_file(tmp_path):
    out = tmp_path / "c.code"
    code, _ = run(
        "cyclic", "--n", "73", "--p", "3", "--mod2", "x^2-x-1",
        "--g", "x^7 + e x^6 + e^6x^5 + e^3x^4 + e^7x^3 + e^2x^2 + e^5x + 2",
        "--dual", "--truncate", "61..73", "-o", str(out),
    )
    assert code == 0
    C = load_code(out).build()
    assert (C.n, C.k) == (60, 7)


def test_exit_code_parse_error(tmp_path, capsys):
    bad = tmp_path / "bad.code"
    bad.write_text("code n=3 k=1\nfield p=2 h=1\n1 e zz\n")
    code, _ = run("analyze", str(bad))
    assert code == 2
    assert "'zz'" in capsys.readouterr().err
    assert run("analyze", str(tmp_path / "missing.code"))[0] == 2
    assert run("cyclic", "--n", "5", "--p", "2", "--g", "x^2+x+1")[0] == 2
    with pytest.raises(SystemExit) as info:
        cli.main(["frobnicate"])
    assert info.value.code == 2


def test_exit_code_cap_exceeded():
    assert run("zeros", F13, "--cap-points", "100")[0] == 3
    assert run("quantum", F15, "--all", "--cap-words", "5")[0] == 3


def test_exit_code_verification_failure(monkeypatch):
    monkeypatch.setattr(cli, "hf_basis", lambda X: [])
    assert run("analyze", F13)[0] == 1


def test_module_entry_point():
    res = subprocess.run(
        [sys.executable, "-m", "hermself", "puncture", F15],
        capture_output=True,
        text=True,
        check=False,
    )
    assert res.returncode == 0
    assert "dim_P: 2" in res.stdout
