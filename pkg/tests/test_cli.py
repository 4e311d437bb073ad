import json
import os
from pathlib import Path

from gpdact.cli import main

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"

TWO_STATE_BITS = {
    "objects": [0, 1],
    "morphisms": [["00", 0, 0], ["11", 0, 0], ["01", 1, 1], ["10", 1, 1]],
    "compose": [
        ["00", "00", "00"], ["00", "11", "11"], ["11", "00", "11"], ["11", "11", "00"],
        ["01", "01", "01"], ["01", "10", "10"], ["10", "01", "10"], ["10", "10", "01"],
    ],
}


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_encrypt_command(capsys):
    code, out = run(capsys, "encrypt", "Z2", "--plaintext", "1", "--key", "1")
    assert code == 0
    assert "ciphertext delta(0)" in out
    assert "heat 1" in out


def test_encrypt_json_fields(capsys):
    code, out = run(capsys, "--format", "json", "encrypt", "Z2",
                    "--plaintext", "1", "--key", "1")
    assert code == 0
    payload = json.loads(out)
    assert payload["schema"] == 1
    assert payload["status"] == "pass"
    assert any("ciphertext" in c["name"] for c in payload["checks"])


def test_check_axioms_on_two_state_file(tmp_path, capsys):
    p = tmp_path / "bits.json"
    p.write_text(json.dumps(TWO_STATE_BITS), encoding="utf-8")
    code, out = run(capsys, "check-axioms", str(p))
    assert code == 0
    assert out.count("PASS") == 6


def test_validate_rejects_bad_file(tmp_path, capsys):
    p = tmp_path / "bad.json"
    bad = dict(TWO_STATE_BITS)
    bad["compose"] = bad["compose"][:-1]
    p.write_text(json.dumps(bad), encoding="utf-8")
    code, out = run(capsys, "validate", str(p))
    assert code == 1
    assert "FAIL" in out


def test_json_reports_are_byte_identical(capsys):
    _, a = run(capsys, "--format", "json", "--seed", "3", "check-q", "Z2", "--pairs", "5")
    _, b = run(capsys, "--format", "json", "--seed", "3", "check-q", "Z2", "--pairs", "5")
    assert a == b


def test_teleport_command(capsys):
    code, out = run(capsys, "teleport", "2", "--state", "1,0")
    assert code == 0
    assert "max infidelity" in out


def test_dense_code_span_command(capsys):
    code, out = run(capsys, "dense-code-span", "Z2")
    assert code == 0
    assert "splitting equation" in out


def test_check_complementary_command(capsys):
    code, out = run(capsys, "check-complementary", "Z3")
    assert code == 0
    assert "partial transpose unitary" in out


def test_quantize_span_file(tmp_path, capsys):
    span = {
        "src": {"kind": "hom", "groupoid": "Z2"},
        "tgt": {"kind": "hom", "groupoid": "Z2"},
        "entries": [
            [["*", "*"], 0, 0, 1],
            [["*", "*"], 1, 1, 1],
        ],
    }
    p = tmp_path / "span.json"
    p.write_text(json.dumps(span), encoding="utf-8")
    code, out = run(capsys, "quantize", str(p))
    assert code == 0
    assert "matrix 2x2" in out


def test_shipped_fixture_files(capsys):
    code, out = run(capsys, "validate", str(FIXTURES / "two-state-bits.json"))
    assert code == 0
    assert "morphisms: 4" in out
    code, out = run(capsys, "quantize", str(FIXTURES / "swap-span-z2.json"))
    assert code == 0
    assert "matrix 2x2" in out


def test_report_dir_writes_csv_and_figures(tmp_path, capsys):
    code, _ = run(capsys, "--report-dir", str(tmp_path), "distribution", "Z3",
                  "--plaintext", "1")
    assert code == 0
    names = sorted(os.listdir(tmp_path))
    assert any(n.endswith("-checks.csv") for n in names)
    assert any(n.endswith(".png") for n in names)
    csv_file = [n for n in names if n.endswith(".csv")][0]
    body = (tmp_path / csv_file).read_text(encoding="utf-8")
    assert "check,pass,witness" in body.splitlines()[0]
