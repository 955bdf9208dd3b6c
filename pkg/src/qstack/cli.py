"""Command-line front end: a line-oriented circuit script language, plus
grover demo and kernel benchmark subcommands.

Script grammar, one instruction per line, # starts a comment:

    push <name> <c> <c>      c: <float>, <float>+<float>i, <float>-<float>i
    gate <SPEC> <name>...    SPEC: builtin name, P(x), Rx(x), Ry(x), Rz(x)
    prob <name>
    measure <name>
    dump

Exit status: 0 success, 1 static error, 2 runtime error.
"""

from __future__ import annotations

import argparse
import pathlib
import re
import sys
import time
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from .backend import getBackend
from .errors import (
    ArityError,
    OutOfRange,
    ParseError,
    SimulatorError,
    StaticScriptError,
    UnknownGate,
    UseAfterMeasure,
    UseBeforePush,
)
from .gates import BUILTIN_GATES, Gate, phaseGate, rotationGate
from .grover import groverSearch, makePlan
from .statevec import applyGate, asVector, measureQubit, newWorkspace, probQubit, pushQubit

_FLOAT = r"(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?"
_COMPLEX_RE = re.compile(rf"^([+-]?{_FLOAT})(?:([+-])({_FLOAT})i)?$")
_PARAM_RE = re.compile(rf"^(P|Rx|Ry|Rz)\(([+-]?{_FLOAT})\)$")


@dataclass(frozen=True)
class Instruction:
    """One parsed script line, with its source line for diagnostics."""

    op: str
    line: int
    names: tuple[str, ...] = ()
    weights: Optional[tuple[complex, complex]] = None
    gate: Optional[Gate] = None
    gate_spec: Optional[str] = None


@dataclass(frozen=True)
class CircuitScript:
    """A statically checked instruction sequence ready to execute."""

    instructions: tuple[Instruction, ...]


def _parseComplex(token: str, line: int) -> complex:
    m = _COMPLEX_RE.match(token)
    if m is None:
        raise ParseError(line, f"bad complex literal {token!r}")
    real = float(m.group(1))
    if m.group(2) is None:
        return complex(real, 0.0)
    imag = float(m.group(3))
    return complex(real, -imag if m.group(2) == "-" else imag)


def _resolveGateSpec(spec: str, line: int) -> Gate:
    if spec in BUILTIN_GATES:
        return BUILTIN_GATES[spec]
    m = _PARAM_RE.match(spec)
    if m is None:
        raise UnknownGate(line, f"unknown gate {spec!r}")
    kind, arg = m.group(1), float(m.group(2))
    if kind == "P":
        return phaseGate(arg)
    return rotationGate(kind[1].upper(), arg)


def parseScript(text: str) -> CircuitScript:
    """Parse and statically check a circuit script.

    Static checks guarantee the script cannot fail on name errors at
    runtime: every qubit is pushed before use, never used after its
    measure, never live twice, and gate arity is satisfied.

    Raises:
        ParseError: malformed line, literal, or duplicate operand.
        UnknownGate: gate spec is neither builtin nor parametric.
        ArityError: fewer operands than the gate acts on.
        UseBeforePush: a name referenced before any push.
        UseAfterMeasure: a name referenced after its measure.
    """
    instructions: list[Instruction] = []
    live: set[str] = set()
    measured: set[str] = set()

    def checkLive(name: str, line: int) -> None:
        if name not in live:
            if name in measured:
                raise UseAfterMeasure(line, f"qubit {name!r} was already measured")
            raise UseBeforePush(line, f"qubit {name!r} was never pushed")

    for line, raw in enumerate(text.splitlines(), start=1):
        code = raw.split("#", 1)[0].strip()
        if not code:
            continue
        tokens = code.split()
        op = tokens[0]
        if op == "push":
            if len(tokens) != 4:
                raise ParseError(line, "push needs a name and two complex weights")
            name = tokens[1]
            if name in live:
                raise ParseError(line, f"qubit {name!r} is already live")
            weights = (_parseComplex(tokens[2], line), _parseComplex(tokens[3], line))
            live.add(name)
            measured.discard(name)
            instructions.append(Instruction("push", line, (name,), weights=weights))
        elif op == "gate":
            if len(tokens) < 2:
                raise ParseError(line, "gate needs a gate spec")
            gate = _resolveGateSpec(tokens[1], line)
            names = tuple(tokens[2:])
            if len(names) < gate.m:
                raise ArityError(
                    line, f"gate {tokens[1]} acts on {gate.m} qubits, got {len(names)}")
            if len(set(names)) != len(names):
                raise ParseError(line, f"duplicate operand names in {list(names)!r}")
            for name in names:
                checkLive(name, line)
            instructions.append(
                Instruction("gate", line, names, gate=gate, gate_spec=tokens[1]))
        elif op in ("prob", "measure"):
            if len(tokens) != 2:
                raise ParseError(line, f"{op} needs exactly one qubit name")
            checkLive(tokens[1], line)
            if op == "measure":
                live.remove(tokens[1])
                measured.add(tokens[1])
            instructions.append(Instruction(op, line, (tokens[1],)))
        elif op == "dump":
            if len(tokens) != 1:
                raise ParseError(line, "dump takes no arguments")
            instructions.append(Instruction("dump", line))
        else:
            raise ParseError(line, f"unknown instruction {op!r}")
    return CircuitScript(tuple(instructions))


def _formatAmplitudes(vec: np.ndarray) -> str:
    # 9 significant digits: stable across backends that differ in the last ulp,
    # and re-parseable as push weights.
    return " ".join(f"{z.real:.8e}{z.imag:+.8e}i" for z in vec)


def runScript(script: CircuitScript, seed: Optional[int] = None,
              backend: str = "reference") -> str:
    """Execute a parsed script and return its transcript.

    measure appends "0" or "1", prob appends "p0 p1" at 8 decimals, dump
    appends the flat amplitude vector. The same (script, seed, backend)
    always yields the same bytes.

    Raises:
        SimulatorError: runtime failure, message prefixed "line N:".
    """
    ws = newWorkspace(seed, backend=getBackend(backend))
    out: list[str] = []
    for ins in script.instructions:
        try:
            if ins.op == "push":
                pushQubit(ws, ins.names[0], list(ins.weights))
            elif ins.op == "gate":
                applyGate(ws, ins.gate, *ins.names)
            elif ins.op == "prob":
                p0, p1 = probQubit(ws, ins.names[0])
                out.append(f"{p0:.8f} {p1:.8f}")
            elif ins.op == "measure":
                out.append(str(measureQubit(ws, ins.names[0])))
            else:
                out.append(_formatAmplitudes(asVector(ws)))
        except SimulatorError as exc:
            raise type(exc)(f"line {ins.line}: {exc}") from exc
    return "\n".join(out) + "\n" if out else ""


def groverCommand(n: int, flips: Optional[Iterable[int]] = None,
                  seed: Optional[int] = None, show_convergence: bool = False,
                  backend: str = "reference") -> str:
    """Run the search demo and return its transcript.

    With show_convergence, one "p0 p1" line per round precedes the
    measured bit string.

    Raises:
        OutOfRange: n outside 1..24, or a flip position outside 0..n-1.
    """
    if not 1 <= n <= 24:
        raise OutOfRange(f"qubit count must be in 1..24, got {n}")
    try:
        plan = makePlan(n, flips)
    except ValueError as exc:
        raise OutOfRange(str(exc)) from None
    ws = newWorkspace(seed, backend=getBackend(backend))
    lines: list[str] = []
    sink = None
    if show_convergence:
        sink = lambda p: lines.append(f"{p[0]:.8f} {p[1]:.8f}")
    lines.append(groverSearch(ws, plan, sink))
    return "\n".join(lines) + "\n"


def benchCommand(n: int, backend: str = "reference", seed: Optional[int] = 0) -> str:
    """Time one full search at n qubits and return one CSV record.

    The backend is warmed up first so one-time compilation stays out of
    the measured interval.

    Raises:
        OutOfRange: n outside 1..24.
    """
    if not 1 <= n <= 24:
        raise OutOfRange(f"qubit count must be in 1..24, got {n}")
    handle = getBackend(backend)
    handle.warmup()
    ws = newWorkspace(seed, backend=handle)
    plan = makePlan(n)
    start = time.perf_counter()
    groverSearch(ws, plan)
    seconds = time.perf_counter() - start
    return f"backend,qubits,seconds\n{handle.kind},{n},{seconds:.6f}\n"


def _parseFlips(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(t) for t in text.split(",") if t.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"flips must be comma-separated integers, got {text!r}") from None


def _buildParser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qstack", description="Stack-machine state-vector qubit simulator.")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="execute a circuit script file")
    run.add_argument("file", help="script path")
    run.add_argument("--seed", type=int, default=None, help="RNG seed (default: entropy)")
    run.add_argument("--backend", choices=("reference", "optimized"), default="reference")

    grover = sub.add_parser("grover", help="run the search demo")
    grover.add_argument("--n", type=int, required=True, help="qubit count, 1..24")
    grover.add_argument("--flips", type=_parseFlips, default=None,
                        help="comma-separated target flip positions (default: 1)")
    grover.add_argument("--seed", type=int, default=None)
    grover.add_argument("--show-convergence", action="store_true",
                        help="print one probability pair per round")
    grover.add_argument("--backend", choices=("reference", "optimized"), default="reference")

    bench = sub.add_parser("bench", help="time one search, emit CSV")
    bench.add_argument("--n", type=int, required=True)
    bench.add_argument("--seed", type=int, default=0)
    bench.add_argument("--backend", choices=("reference", "optimized"), default="reference")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = _buildParser().parse_args(argv)
    try:
        if args.command == "run":
            try:
                text = pathlib.Path(args.file).read_text(encoding="utf-8")
            except OSError as exc:
                print(f"error: {exc}", file=sys.stderr)
                return 1
            transcript = runScript(parseScript(text), args.seed, backend=args.backend)
        elif args.command == "grover":
            transcript = groverCommand(args.n, args.flips, args.seed,
                                       args.show_convergence, backend=args.backend)
        else:
            transcript = benchCommand(args.n, args.backend, args.seed)
    except (StaticScriptError, OutOfRange) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except SimulatorError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(transcript)
    return 0


if __name__ == "__main__":
    sys.exit(main())
