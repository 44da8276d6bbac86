import hashlib
import subprocess
import sys

import pytest

from mfgenus.cli import main, parse_sigma, UsageError


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def kv(out):
    return dict(line.split(" ", 1) for line in out.splitlines() if " " in line)


def test_sigma_parsing():
    from fractions import Fraction

    assert parse_sigma("2/6") == (Fraction(1, 3), 6)
    for bad in ["0.5", "1/0", "x"]:
        with pytest.raises(UsageError):
            parse_sigma(bad)


def test_validate(capsys, fixtures):
    code, out, _ = run(capsys, "validate", fixtures / "p2.fan", "--format", "machine")
    assert code == 0 and kv(out)["valid"] == "yes"
    assert kv(out)["fan_sha256"] == hashlib.sha256((fixtures / "p2.fan").read_bytes()).hexdigest()[:16]
    code, out, _ = run(capsys, "validate", fixtures / "malformed.fan")
    assert code == 1
    code, out, _ = run(capsys, "validate", fixtures / "dependent.fan", "--format", "machine")
    assert code == 1 and kv(out)["valid"] == "no"


def test_complete(capsys, fixtures):
    code, out, _ = run(capsys, "complete", fixtures / "p3.fan", "--format", "machine")
    assert code == 0 and kv(out)["complete"] == "yes" and kv(out)["degree"] == "1"


def test_genus_ty(capsys, fixtures):
    code, out, _ = run(capsys, "genus", fixtures / "p2.fan", "--kind", "ty")
    assert code == 0 and "1 - y + y^2" in out
    code, out, _ = run(capsys, "genus", fixtures / "p2_211.fan", "--kind", "orbifold-ty", "--format", "machine")
    assert kv(out)["genus"] == "0:1;1:2;2:1"
    code, out, _ = run(capsys, "genus", fixtures / "example1_b3.fan", "--kind", "breve-ty", "--N", "5", "--format", "machine")
    assert kv(out)["genus"] == "N=5;1,1,1,1,1"
    code, _, err = run(capsys, "genus", fixtures / "p2.fan", "--kind", "breve-ty")
    assert code == 1 and "--N" in err


def test_elliptic(capsys, fixtures):
    code, out, _ = run(capsys, "elliptic", fixtures / "p2_211.fan", "--kind", "orbifold", "--sigma", "1/2", "--format", "machine")
    assert code == 0
    d = kv(out)
    assert d["zero"] == "yes" and d["q0_bridge"] == "ok"
    assert out.rstrip().endswith("end")
    code, _, err = run(capsys, "elliptic", fixtures / "p2.fan", "--sigma", "0.5")
    assert code == 1 and "fraction" in err
    code, _, _ = run(capsys, "elliptic", fixtures / "p2.fan", "--sigma", "1/3", "--v", "1,0")
    assert code == 1


def test_divisibility(capsys, fixtures):
    code, out, _ = run(capsys, "divisibility", fixtures / "example2_b2.fan", "--N", "3", "--format", "machine")
    d = kv(out)
    assert code == 0 and d["divisible"] == "yes" and d["t_cartier_divisible"] == "no"
    code, out, _ = run(capsys, "divisibility", fixtures / "p3.fan", "--N", "4", "--format", "machine")
    assert kv(out)["t_cartier_divisible"] == "yes" and kv(out)["u"] == "1 1 1"


def test_classify(capsys, fixtures):
    code, out, _ = run(capsys, "classify", fixtures / "p3_2211.fan", "--format", "machine")
    assert code == 0 and kv(out)["family"] == "CaseB_WeightedProjective"
    code, _, _ = run(capsys, "classify", fixtures / "example2_b2.fan")
    assert code == 1


def test_verify(capsys, fixtures):
    code, out, _ = run(capsys, "verify", fixtures / "p2_211.fan", "--theorem", "hat-vanish", "--sigma", "1/2", "--order", "2")
    assert code == 0 and "zero to order 2" in out
    code, out, _ = run(capsys, "verify", fixtures / "example1_b3.fan", "--theorem", "breve-vanish", "--sigma", "2/5", "--format", "machine")
    assert code == 0 and kv(out)["verified"] == "yes"
    code, out, _ = run(capsys, "verify", fixtures / "c1zero.fan", "--theorem", "c1zero-vanish", "--sigma", "1/3", "--order", "1")
    assert code == 0
    code, out, _ = run(capsys, "verify", fixtures / "p2_211.fan", "--theorem", "hatT-div", "--N", "2", "--format", "machine")
    assert code == 0 and kv(out)["divisible"] == "yes"
    code, _, err = run(capsys, "verify", fixtures / "p2.fan", "--theorem", "hat-vanish", "--sigma", "1/2")
    assert code == 1 and "T-Cartier" in err


def test_theorem_failure_exit(capsys, fixtures, monkeypatch):
    from mfgenus import cli

    class Fake:
        def is_zero(self):
            return False

    monkeypatch.setattr(cli.qseries, "genus_series", lambda *a, **k: Fake())
    code, out, _ = run(capsys, "verify", fixtures / "p2_211.fan", "--theorem", "hat-vanish", "--sigma", "1/2")
    assert code == 2 and "NONZERO" in out


def test_usage_errors(capsys, fixtures):
    assert run(capsys, "frobnicate", fixtures / "p2.fan")[0] == 1
    assert run(capsys, "validate", fixtures / "nope.fan")[0] == 1
    assert run(capsys, "genus", fixtures / "p2.fan", "--jobs", "0")[0] == 1


def test_machine_output_byte_stable(fixtures):
    argv = [sys.executable, "-m", "mfgenus", "elliptic", str(fixtures / "example1_b3.fan"), "--kind", "breve",
            "--sigma", "1/5", "--order", "2", "--format", "machine"]
    a = subprocess.run(argv + ["--jobs", "1"], capture_output=True, check=True).stdout
    b = subprocess.run(argv + ["--jobs", "1"], capture_output=True, check=True).stdout
    c = subprocess.run(argv + ["--jobs", "4"], capture_output=True, check=True).stdout
    assert a == b == c and a
