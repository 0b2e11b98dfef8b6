import json
import subprocess
import sys

import pytest

from ultralevels.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_omega(capsys):
    assert run(capsys, "omega", "8") == (0, "3\n", "")


def test_divides_refuted(capsys):
    code, out, _ = run(capsys, "divides", "principal:4", "principal:6")
    assert code == 1 and out.strip() == "Refuted(6)"


def test_divides_proven(capsys):
    code, out, _ = run(capsys, "divides", "principal:2", "principal:6")
    assert code == 0 and out.startswith("Proven(")


def test_level_and_classes(capsys):
    assert run(capsys, "level", "2", "--bound", "15")[1] == "4 6 9 10 14 15\n"
    assert run(capsys, "classes", "3")[1] == "(3)\n(2,1)\n(1,1,1)\n"
    assert run(capsys, "quotient", "3", "2")[1] == "level(2)\n"
    assert run(capsys, "quotient", "2", "12")[1] == "empty\n"


def test_enum(capsys):
    assert run(capsys, "enum", "quot(level(3),2)", "--bound", "20")[1] == "4 6 9 10 14 15\n"


def test_falpha(capsys):
    code, out, _ = run(capsys, "falpha", "[(base(finite(2,3,5)),^1,x2)]", "--bound", "100")
    assert code == 0
    assert "sigma: 2" in out and "members: 6 10 15" in out


def test_falpha_empty_family(capsys):
    code, _, err = run(capsys, "falpha", "[(2,^1,x2)]")
    assert code == 1 and err.startswith("empty:")


def test_product_and_evidence(capsys):
    assert run(capsys, "product", "principal:2", "principal:3")[1].startswith("principal:6")
    code, out, _ = run(capsys, "evidence", "tails:diag(pow2)", "--max-level", "20")
    assert code == 0 and out.strip() == "NotOnFiniteLevels(checked_up_to=20)"


def test_chain(capsys):
    code, out, _ = run(capsys, "chain", "principal:30")
    lines = out.splitlines()
    assert code == 0
    assert lines[:3] == ["1: principal:2", "2: principal:6", "3: principal:30"]
    code, out, _ = run(capsys, "chain", "tails:diag(pow2)", "--chain-length", "2")
    assert code == 0 and out.count(" ~| ") == 2


@pytest.mark.parametrize(
    "argv",
    [
        ["omega", "0"],
        ["omega"],
        ["enum", "level("],
        ["divides", "principal:x", "principal:2"],
        ["check", "no-such-suite"],
        ["chain", "principal:1"],
        ["falpha", "[(4,^1)]"],
        ["bogus"],
    ],
)
def test_usage_errors_exit_two(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_check_machine_output_deterministic(capsys, tmp_path):
    args = ["check", "level-partition", "--bound", "200", "--format", "machine"]
    code, first, _ = run(capsys, *args)
    assert code == 0
    rec = json.loads(first)
    assert rec["suite"] == "level-partition" and rec["refuted"] == 0
    out = tmp_path / "r.jsonl"
    assert run(capsys, *args, "--out", str(out))[0] == 0
    assert out.read_text() == first


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "ultralevels", "omega", "30"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "3\n"
