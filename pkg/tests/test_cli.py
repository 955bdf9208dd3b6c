"""Script language and executable surface: grammar, static analysis,
transcript formats, determinism, and exit codes."""

import re
import shutil
import subprocess

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qstack.cli import (
    CircuitScript,
    Instruction,
    _parseComplex,
    benchCommand,
    groverCommand,
    main,
    parseScript,
    runScript,
)
from qstack.errors import (
    ArityError,
    OutOfRange,
    ParseError,
    UnknownGate,
    UseAfterMeasure,
    UseBeforePush,
    ZeroWeights,
)

SMALLEST = "push q0 1 0\ngate H q0\nmeasure q0\n"


# -- grammar ---------------------------------------------------------------------


def test_smallest_script_parses_to_three_instructions():
    script = parseScript(SMALLEST)
    assert [ins.op for ins in script.instructions] == ["push", "gate", "measure"]
    assert [ins.line for ins in script.instructions] == [1, 2, 3]


def test_comments_and_blank_lines_are_skipped():
    text = "# header\n\npush q 1 0   # trailing words\n   \nmeasure q\n"
    script = parseScript(text)
    assert [ins.op for ins in script.instructions] == ["push", "measure"]
    assert [ins.line for ins in script.instructions] == [3, 5]


@pytest.mark.parametrize(
    "token,expected",
    [
        ("0.6", 0.6 + 0j),
        ("-0.6", -0.6 + 0j),
        (".5", 0.5 + 0j),
        ("1.5e-3", 1.5e-3 + 0j),
        ("2E+2", 200.0 + 0j),
        ("0+1i", 1j),
        ("0.5-0.25i", 0.5 - 0.25j),
        ("1e-1+2e-2i", 0.1 + 0.02j),
        ("-7.07106781e-01-7.07106781e-01i", -0.707106781 - 0.707106781j),
    ],
)
def test_complex_literals_parse(token, expected):
    assert _parseComplex(token, 1) == pytest.approx(expected, abs=1e-12)


@pytest.mark.parametrize("token", ["abc", "1+i", "i", "1i", "--1", "1 + 2i", "0x10"])
def test_bad_complex_literals_rejected(token):
    with pytest.raises(ParseError):
        _parseComplex(token, 3)


@given(st.complex_numbers(max_magnitude=1e6, allow_nan=False, allow_infinity=False))
@settings(max_examples=150, deadline=None)
def test_dump_component_format_round_trips(z):
    token = f"{z.real:.8e}{z.imag:+.8e}i"
    back = _parseComplex(token, 1)
    assert abs(back - z) <= 1e-7 * max(1.0, abs(z))


@pytest.mark.parametrize(
    "spec,m",
    [("X", 1), ("Tinv", 1), ("CNOT", 2), ("TOFF", 3),
     ("P(3.141593)", 1), ("Rx(-0.5)", 1), ("Ry(.5)", 1), ("Rz(1e-2)", 1)],
)
def test_gate_specs_resolve(spec, m):
    names = " ".join(f"q{i}" for i in range(m))
    pushes = "".join(f"push q{i} 1 0\n" for i in range(m))
    script = parseScript(f"{pushes}gate {spec} {names}\n")
    assert script.instructions[-1].gate.m == m
    assert script.instructions[-1].gate_spec == spec


@pytest.mark.parametrize("spec", ["Q", "p(1)", "P(abc)", "Rx()", "Rw(1)", "H2"])
def test_unknown_gate_specs_rejected(spec):
    with pytest.raises(UnknownGate) as exc:
        parseScript(f"push q 1 0\ngate {spec} q\n")
    assert exc.value.line == 2


# -- static analysis -------------------------------------------------------------------


def test_use_before_push_reports_line_one():
    with pytest.raises(UseBeforePush) as exc:
        parseScript("gate P(3.141593) q0\n")
    assert exc.value.line == 1
    assert "line 1" in str(exc.value)


def test_use_after_measure_detected():
    with pytest.raises(UseAfterMeasure) as exc:
        parseScript("push q 1 0\nmeasure q\ngate H q\n")
    assert exc.value.line == 3


def test_repush_after_measure_is_legal():
    script = parseScript("push q 1 0\nmeasure q\npush q 1 0\nmeasure q\n")
    assert len(script.instructions) == 4


def test_push_while_live_rejected():
    with pytest.raises(ParseError) as exc:
        parseScript("push q 1 0\npush q 0 1\n")
    assert exc.value.line == 2


@pytest.mark.parametrize(
    "line,error",
    [
        ("gate CNOT a", ArityError),
        ("gate TOFF a b", ArityError),
        ("gate H", ArityError),
        ("gate CNOT a a", ParseError),
        ("push a 1", ParseError),
        ("prob", ParseError),
        ("measure a b", ParseError),
        ("dump x", ParseError),
        ("frobnicate a", ParseError),
    ],
)
def test_malformed_lines_rejected(line, error):
    text = "push a 1 0\npush b 1 0\n" + line + "\n"
    with pytest.raises(error) as exc:
        parseScript(text)
    assert exc.value.line == 3


def test_controlled_gate_accepts_extra_operands():
    text = "push a 1 0\npush b 1 0\npush c 1 0\ngate X a b c\ngate CNOT a b c\n"
    script = parseScript(text)
    assert len(script.instructions) == 5


# -- runScript -----------------------------------------------------------------------------


def test_prob_transcript_pinned():
    out = runScript(parseScript("push q 0.6 0.8\nprob q\n"), seed=0)
    assert out == "0.36000000 0.64000000\n"


def test_measure_definite_zero_any_seed():
    for seed in (0, 1, 99, 12345):
        out = runScript(parseScript("push q 1 0\nmeasure q\n"), seed=seed)
        assert out == "0\n"


def test_dump_format_shape():
    out = runScript(parseScript("push q 1 1\ndump\n"), seed=0)
    token = r"-?\d\.\d{8}e[+-]\d{2}[+-]\d\.\d{8}e[+-]\d{2}i"
    assert re.fullmatch(rf"{token} {token}\n", out)
    assert out == "7.07106781e-01+0.00000000e+00i 7.07106781e-01+0.00000000e+00i\n"


def test_dump_round_trips_single_qubit_state():
    out = runScript(parseScript("push q 0.6 0.8\ngate T q\ndump\n"), seed=0)
    tokens = out.strip().split()
    weights = [_parseComplex(t, 1) for t in tokens]
    expected = [0.6, 0.8 * np.exp(1j * np.pi / 4)]
    for got, want in zip(weights, expected):
        assert got == pytest.approx(want, abs=1e-7)


def test_empty_script_yields_empty_transcript():
    assert runScript(parseScript("# nothing\n"), seed=0) == ""


def test_transcript_replay_is_byte_identical():
    text = "".join("push q 0.6 0.8\nmeasure q\n" for _ in range(30))
    script = parseScript(text)
    first = runScript(script, seed=31415)
    second = runScript(script, seed=31415)
    assert first == second
    assert set(first.strip().split("\n")) <= {"0", "1"}


def test_transcripts_differ_across_seeds():
    text = "".join("push q 1 1\nmeasure q\n" for _ in range(20))
    script = parseScript(text)
    assert runScript(script, seed=0) != runScript(script, seed=1)


def test_transcripts_agree_across_backends():
    text = ("push a 0.6 0.8\ngate H a\npush b 0 1\ngate CNOT a b\n"
            "prob a\ndump\nmeasure b\nmeasure a\n")
    script = parseScript(text)
    assert runScript(script, seed=7, backend="reference") == \
        runScript(script, seed=7, backend="optimized")


def test_zero_weight_push_fails_at_runtime():
    script = parseScript("push ok 1 0\npush q 0 0\n")
    with pytest.raises(ZeroWeights) as exc:
        runScript(script, seed=0)
    assert "line 2" in str(exc.value)


def test_complex_weights_execute():
    out = runScript(parseScript("push q 0+1i 0\nprob q\nmeasure q\n"), seed=0)
    assert out == "1.00000000 0.00000000\n0\n"


# -- groverCommand ----------------------------------------------------------------------------


def test_grover_command_convergence_transcript():
    out = groverCommand(6, seed=1, show_convergence=True)
    lines = out.strip().split("\n")
    assert len(lines) == 6
    assert lines[-1] == "111101"
    expected = [
        (0.43945313, 0.56054687),
        (0.33325958, 0.66674042),
        (0.20755294, 0.79244706),
        (0.09326882, 0.90673118),
        (0.01853182, 0.98146818),
    ]
    for line, (p0, p1) in zip(lines, expected):
        a, b = (float(t) for t in line.split())
        assert a == pytest.approx(p0, abs=1e-6)
        assert b == pytest.approx(p1, abs=1e-6)


def test_grover_command_plain_transcript():
    out = groverCommand(6, seed=1)
    assert out == "111101\n"


def test_grover_command_single_qubit():
    out = groverCommand(1, seed=0, show_convergence=True)
    assert out in ("0\n", "1\n")


@pytest.mark.parametrize("n", [0, -3, 25, 40])
def test_grover_command_rejects_out_of_range_n(n):
    with pytest.raises(OutOfRange):
        groverCommand(n)


def test_grover_command_rejects_out_of_range_flips():
    with pytest.raises(OutOfRange):
        groverCommand(4, flips=(7,))


# -- benchCommand ------------------------------------------------------------------------------


def test_bench_emits_csv_record():
    out = benchCommand(4, backend="reference")
    header, row = out.strip().split("\n")
    assert header == "backend,qubits,seconds"
    kind, qubits, seconds = row.split(",")
    assert kind == "reference"
    assert int(qubits) == 4
    assert float(seconds) > 0


def test_bench_rejects_out_of_range():
    with pytest.raises(OutOfRange):
        benchCommand(0)


# -- main and exit codes -------------------------------------------------------------------------


def test_main_run_success(tmp_path, capsys):
    path = tmp_path / "s.qs"
    path.write_text(SMALLEST)
    assert main(["run", str(path), "--seed", "5"]) == 0
    out = capsys.readouterr().out
    assert out in ("0\n", "1\n")


def test_main_run_missing_file(capsys):
    assert main(["run", "/nonexistent/x.qs"]) == 1
    assert "error:" in capsys.readouterr().err


def test_main_static_error_exits_one(tmp_path, capsys):
    path = tmp_path / "s.qs"
    path.write_text("gate H nope\n")
    assert main(["run", str(path)]) == 1
    assert "line 1" in capsys.readouterr().err


def test_main_runtime_error_exits_two(tmp_path, capsys):
    path = tmp_path / "s.qs"
    path.write_text("push q 0 0\n")
    assert main(["run", str(path)]) == 2
    assert "line 1" in capsys.readouterr().err


def test_main_grover_out_of_range_exits_one(capsys):
    assert main(["grover", "--n", "99"]) == 1
    assert "error:" in capsys.readouterr().err


def test_main_grover_success(capsys):
    assert main(["grover", "--n", "6", "--seed", "1"]) == 0
    assert capsys.readouterr().out == "111101\n"


def test_main_bench_success(capsys):
    assert main(["bench", "--n", "3"]) == 0
    assert capsys.readouterr().out.startswith("backend,qubits,seconds\n")


def test_console_script_installed():
    exe = shutil.which("qstack")
    assert exe, "qstack entry point not on PATH"
    proc = subprocess.run([exe, "grover", "--n", "2", "--seed", "0"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert re.fullmatch(r"[01]{2}\n", proc.stdout)
