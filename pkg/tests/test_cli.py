import json
import subprocess
import sys

import pytest

from braidcat.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_act_examples(capsys):
    assert run(capsys, "act", "nakayama", "F1", "P1", "--n", "5")[1].strip() == "[1] P1"
    assert run(capsys, "act", "zigzag", "R2", "Q3", "--n", "4")[1].strip() == "[1] Q2 -> [0] Q3"
    assert run(capsys, "act", "nakayama", "", "P2", "--n", "3")[1].strip() == "[0] P2"


def test_act_json_round_trip(capsys, tmp_path):
    code, out, _ = run(capsys, "act", "nakayama", "F1 F2^-1 F3", "P2", "--n", "3", "--format", "json")
    assert code == 0
    path = tmp_path / "c.json"
    path.write_text(out)
    code, again, _ = run(capsys, "act", "nakayama", "", str(path), "--n", "3", "--format", "json")
    assert code == 0 and again == out


def test_act_errors(capsys):
    code, _, err = run(capsys, "act", "nakayama", "F1 X2", "P1", "--n", "3")
    assert code == 2 and "position 3" in err
    assert run(capsys, "act", "nakayama", "R1", "P1", "--n", "3")[0] == 2
    assert run(capsys, "act", "zigzag", "R1", "P1", "--n", "3")[0] == 2
    assert run(capsys, "act", "nakayama", "F1", "P9", "--n", "3")[0] == 2


def test_wordeq(capsys):
    code, out, _ = run(capsys, "wordeq", "An", "s1 s2 s1", "s2 s1 s2", "--n", "3")
    assert code == 0 and out.startswith("ImagesAgree") and "note:" in out
    code, out, _ = run(capsys, "wordeq", "Kn", "a1", "a2", "--n", "3", "--format", "json")
    data = json.loads(out)
    assert data["verdict"] == "ProvenDistinct" and data["certificate"]["projective"] == "P1"
    code, out, _ = run(capsys, "wordeq", "Kn", "a1 a2 a1", "a2 a1 a2", "--n", "3")
    assert "not faithful" in out


def test_rep(capsys):
    assert run(capsys, "rep", "a1 a2 a1 a4 a1 a2 a1 a4", "v4", "--n", "4")[1].strip() == "(-4, -4, 0, -3)"
    assert run(capsys, "rep", "eta-witness", "v4", "--n", "4")[1].strip() == "(-4, -4, 0, -3)"
    assert run(capsys, "rep", "a1", "v9", "--n", "4")[0] == 2


def test_verify_exit_codes(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "staircase", "--n", "3", "--format", "json")
    assert code == 0 and json.loads(out)["summary"]["fail"] == 0
    code, out, _ = run(capsys, "verify", "--suite", "bn_action", "--n", "3")
    assert code == 1 and "FAIL" in out
    assert run(capsys, "verify", "--n", "9")[0] == 2


def test_prime_field_flag(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "algebra", "--n", "3", "--field", "fp:32003")
    assert code == 0
    assert run(capsys, "verify", "--suite", "algebra", "--n", "3", "--field", "fp:12")[0] == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "braidcat", "rep", "eta-witness", "v4", "--n", "4"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.strip() == "(-4, -4, 0, -3)"
