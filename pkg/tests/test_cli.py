import subprocess
import sys

import pytest

from test_acceptance import GOLDEN, _reparse, golden_argv, golden_cases, printed_literals, run_cli


@pytest.mark.parametrize("cmd_file", golden_cases(), ids=lambda p: p.stem)
def test_golden(cmd_file):
    argv = golden_argv(cmd_file)
    code, out, err = run_cli(argv)
    assert f"exit={code}\n{out}{err}" == cmd_file.with_suffix(".out").read_text()
    for key, literal in printed_literals(out):
        if key != "check":
            assert _reparse(argv[0], key, literal) == literal


def test_exit_codes(tmp_path):
    assert run_cli(["eval", "--precision", "4", "--term", "D(t^2, t)"])[0] == 0
    assert run_cli(["eval", "--precision", "4", "--term", "D(t^2,"])[0] == 2
    assert run_cli(["eval", "--term", "t"])[0] == 2  # no precision and no registry
    assert run_cli(["eval", "--precision", "4", "--registry", str(GOLDEN / "missing.reg"), "--term", "t"])[0] == 2
    env = tmp_path / "z.env"
    env.write_text("z := 1 + t (mod t^2)\n")
    assert run_cli(["check", "--precision", "2", "--env", str(env), "--formula", "C(z - z)"])[0] == 3
    assert run_cli(["eval", "--precision", "4", "--term", "(1 - t)^-1"])[0] == 2
    assert run_cli(["hensel", "--poly", "-t, 0, 1", "--start", "0", "--precision", "4"])[0] == 2


def test_error_message_has_position():
    code, out, err = run_cli(["check", "--precision", "4", "--formula", "t <<= 1 & foo(t)"])
    assert code == 2 and out == ""
    assert "line 1, column 11" in err


def test_eval_output_shape():
    code, out, _ = run_cli(["eval", "--precision", "4", "--term", "(2*t)^-1 * (1 + t)"])
    assert code == 0
    assert out.splitlines() == ["term: 1/2*t^-1 + 1/2", "value=t^-1*(1/2 + 1/2*t) (mod t^4)"]


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "avkernel", "truncate", "--a", "2*t^{1/2} + t + 3*t^2 (cutoff 4)", "--gamma", "2"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout.strip() == "value=2*t^{1/2} + t (cutoff 4)"
