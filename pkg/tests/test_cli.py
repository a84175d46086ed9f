import json
import subprocess
import sys

import pytest

from schurlab.cli import main


def run_cli(args, capsys):
    code = main(args)
    out, err = capsys.readouterr()
    return code, out, err


def test_alpha(capsys):
    code, out, _ = run_cli(["alpha", "--m", "3", "--n", "4"], capsys)
    assert code == 0
    assert out.strip() == "36"


def test_tables(capsys):
    code, out, _ = run_cli(["tables"], capsys)
    assert code == 0
    assert "Table I" in out and "DISCREPANCY" in out


def test_multiplier_command(capsys):
    code, out, _ = run_cli(
        ["multiplier", "--group", "heisenberg_3", "--method", "both"], capsys
    )
    assert code == 0
    assert "[3, 3]" in out


def test_cover_command(capsys):
    code, out, _ = run_cli(
        ["cover", "--group", "dihedral_8", "--print-presentation"], capsys
    )
    assert code == 0
    assert "order 16" in out
    assert "pow" in out or "comm" in out


def test_identities_single_check(capsys):
    code, out, _ = run_cli(["identities", "--check", "L3.8", "--n-max", "10"], capsys)
    assert code == 0
    assert "L3.8: pass" in out


def test_identities_unknown_id(capsys):
    code, _, err = run_cli(["identities", "--check", "L0.0"], capsys)
    assert code == 2
    assert "unknown identity" in err


def test_verify_json(capsys):
    code, out, _ = run_cli(
        ["verify", "--max-order", "16", "--format", "json"], capsys
    )
    assert code == 0
    doc = json.loads(out)
    names = [g["name"] for g in doc["groups"]]
    assert names == sorted(names)
    assert all(g["order"] <= 16 for g in doc["groups"])


def test_verify_rule_selection(capsys):
    code, out, _ = run_cli(
        ["verify", "--max-order", "9", "--rules", "R13", "--format", "csv"], capsys
    )
    assert code == 0
    body = [line for line in out.splitlines()[1:] if line]
    assert body
    assert all(",R13," in line or ",OBS," in line for line in body)


def test_verify_unknown_rule(capsys):
    code, _, err = run_cli(["verify", "--rules", "R99"], capsys)
    assert code == 2
    assert "unknown rules" in err


def test_verify_bad_catalog_path(capsys):
    code, _, err = run_cli(["verify", "--catalog", "/nonexistent.cat"], capsys)
    assert code == 2


def test_verify_corrupt_catalog(tmp_path, capsys):
    path = tmp_path / "bad.cat"
    path.write_text("[group]\nname = broken\nngens = 3\norders = 2 2 3\ncomm 2 1 : g3\n")
    code, _, err = run_cli(["verify", "--catalog", str(path)], capsys)
    assert code == 2
    assert "broken" in err


def test_verify_strict_with_zero_cap(capsys):
    code, out, _ = run_cli(
        ["verify", "--max-order", "8", "--oracle-cap", "0", "--strict"], capsys
    )
    assert code == 3


def test_console_script_runs():
    proc = subprocess.run(
        [sys.executable, "-m", "schurlab.cli", "alpha", "--m", "2", "--n", "4"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout.strip() == "14"
