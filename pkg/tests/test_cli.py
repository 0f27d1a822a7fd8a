import subprocess
import sys

import pytest

from omegaterms.cli import Config, main
from omegaterms.monoid import from_text, u1, to_text


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_eq(capsys):
    code, out, _ = run(capsys, "eq", "(ab)^w a", "a(ba)^w")
    assert code == 0 and out.startswith("EQUAL\n")
    code, out, _ = run(capsys, "eq", "a", "aa")
    assert code == 1 and out.startswith("DISTINCT at k=2\n")
    code, out, _ = run(capsys, "eq", "a", "a")
    assert code == 0 and out == "EQUAL\na\na\n"


def test_eq_no_witness_message(capsys):
    code, out, _ = run(capsys, "eq", "--kmax", "0", "a", "b")
    assert code == 1 and out.startswith("DISTINCT (no ≡_k witness ≤ 0)")


def test_errors_exit_2(capsys):
    code, out, err = run(capsys, "eq", "a^w", "(b")
    assert code == 2 and out == "" and "position" in err
    code, _, err = run(capsys, "canon", "-A", "a", "ab")
    assert code == 2 and "alphabet" in err
    code, _, err = run(capsys, "quotient", "-A", "ab", "-k", "2", "--cap-monoid", "5")
    assert code == 2 and "exceeds" in err
    code, _, err = run(capsys, "unfold", "(ab)^w", "10", "--cap-word", "5")
    assert code == 2
    code, _, err = run(capsys, "canon", "a", "--cap-dfa", "0")
    assert code == 2 and "positive" in err


def test_quotient(capsys):
    for k, size in [(0, 1), (1, 2), (2, 4)]:
        code, out, _ = run(capsys, "quotient", "-A", "a", "-k", str(k))
        assert code == 0
        assert len(from_text(out)) == size
    code, out, _ = run(capsys, "quotient", "-A", "ab", "-k", "1")
    assert out.startswith("monoid 4\n")


def test_canon_project_unfold(capsys):
    assert run(capsys, "canon", "(ba)^w")[1] == "b(ab)^wa\n"
    code, out, _ = run(capsys, "project", "a^w", "-k", "2")
    assert code == 0 and out.split()[1] == "aaa"
    assert run(capsys, "unfold", "a^w b a^w", "2")[1] == "aabaa\n"
    assert run(capsys, "unfold", "1", "3")[1] == "1\n"


def test_factors_and_regjs(capsys):
    code, out, _ = run(capsys, "factors", "(ab)^w", "--which", "prefix")
    assert out == ("dfa 2 ab\nstate 0 initial accepting\nstate 1 accepting\n"
                   "edge 0 a 1\nedge 1 b 0\n")
    code, out, _ = run(capsys, "factors", "(ab)^w", "--format", "dot")
    assert out.startswith("digraph")
    code, out, _ = run(capsys, "regjs", "(ab)^w(ba)^w c^w")
    assert out == "1\n(ab)^w\nc^w\n"


def test_eval(capsys, tmp_path):
    f = tmp_path / "u1.txt"
    f.write_text(to_text(u1()))
    code, out, _ = run(capsys, "eval", "a^w b", str(f), "a=0,b=1")
    assert code == 0 and out == "1 0\n"
    # labels take precedence over indices: "1" names the identity here
    code, out, _ = run(capsys, "eval", "a^w", str(f), "a=1")
    assert out == "0 1\n"
    code, _, err = run(capsys, "eval", "a^w b", str(f), "a=0")
    assert code == 2 and "assigned" in err
    code, _, err = run(capsys, "eval", "a", str(tmp_path / "missing.txt"), "a=0")
    assert code == 2


def test_eval_warns_on_group(capsys, tmp_path):
    f = tmp_path / "z2.txt"
    f.write_text("monoid 2\nidentity 0\nrow 0: 0 1\nrow 1: 1 0\n")
    code, out, err = run(capsys, "eval", "a^w", str(f), "a=1")
    assert code == 0 and out == "0 0\n" and "not aperiodic" in err


def test_deterministic_output(capsys):
    outs = {run(capsys, "factors", "(a^w b)^w c", "--which", "factor")[1] for _ in range(3)}
    assert len(outs) == 1


def test_config_validation():
    with pytest.raises(ValueError):
        Config(cap_classes=0)
    with pytest.raises(ValueError):
        Config(format="svg")
    assert Config(alphabet="ab").kmax == 4


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "omegaterms", "eq", "a^w a", "a^w"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.startswith("EQUAL")
