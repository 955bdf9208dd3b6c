"""Grover's search on the stack machine: phase and Boolean oracles, the
Hadamard-sandwiched diffusion step, and the top-level search loop."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable, Optional, Sequence

from .errors import DuplicateName, UnknownName
from .gates import H, X, Z, toffnAncilla
from .statevec import Workspace, applyGate, measureQubit, probQubit, pushQubit

ProbabilitySink = Callable[[tuple[float, float]], None]


@dataclass(frozen=True)
class GroverPlan:
    """Search parameters: qubit count, round count, and the target.

    The target basis state is all-ones except at target_flip_positions,
    so flips {1} over 6 qubits selects the state printed as 111101.
    """

    n: int
    iterations: int
    target_flip_positions: frozenset[int]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"need at least one qubit, got n={self.n}")
        if self.iterations != planIterations(self.n):
            raise ValueError(
                f"iterations must be planIterations({self.n})"
                f" == {planIterations(self.n)}, got {self.iterations}")
        bad = [p for p in self.target_flip_positions if not 0 <= p < self.n]
        if bad:
            raise ValueError(f"flip positions {bad!r} outside 0..{self.n - 1}")


def makePlan(n: int, flips: Optional[Iterable[int]] = None) -> GroverPlan:
    """Build a validated GroverPlan with the optimal iteration count.

    flips defaults to position 1; a 1-qubit search has no position 1 and
    falls back to the plain all-ones target (it runs zero rounds anyway).
    Explicit positions are validated strictly.
    """
    if flips is None:
        flips = (1,) if n >= 2 else ()
    return GroverPlan(n, planIterations(n), frozenset(flips))


def planIterations(n: int) -> int:
    """Optimal Grover round count: floor(pi/4 * sqrt(2^n) - 1/2)."""
    if n < 1:
        raise ValueError(f"need at least one qubit, got n={n}")
    return int(math.floor(math.pi / 4 * math.sqrt(2 ** n) - 0.5))


def _checkOracleOperands(ws: Workspace, qubits: Sequence[str]) -> None:
    if len(set(qubits)) != len(qubits):
        raise DuplicateName(f"duplicate names in {list(qubits)!r}")
    for q in qubits:
        if q not in ws.names:
            raise UnknownName(f"qubit {q!r} is not on the stack")


def zeroBooleanOracle(ws: Workspace, qubits: Sequence[str], result: str) -> Workspace:
    """Set result to result XOR (1 if all qubits are 0 else 0).

    The inputs are X-conjugated around a multi-controlled NOT, so they
    come back unchanged. result must be zero-initialized by the caller
    to read the oracle value directly.
    """
    _checkOracleOperands(ws, qubits)
    for q in qubits:
        applyGate(ws, X, q)
    toffnAncilla(ws, list(qubits), result)
    for q in qubits:
        applyGate(ws, X, q)
    return ws


def zeroPhaseOracle(ws: Workspace, qubits: Sequence[str]) -> Workspace:
    """Negate the amplitude of the all-zeros state, leaving others alone.

    qubits must cover the entire name stack: the sign flip is a Z
    controlled on every other name, so acting on a substack would
    silently condition on qubits the caller never mentioned.
    """
    _checkOracleOperands(ws, qubits)
    if len(qubits) != len(ws.names):
        raise ValueError(
            f"oracle needs the whole stack: got {len(qubits)} of {len(ws.names)} qubits")
    for q in qubits:
        applyGate(ws, X, q)
    applyGate(ws, Z, *qubits)
    for q in qubits:
        applyGate(ws, X, q)
    return ws


def samplePhaseOracle(ws: Workspace, qubits: Sequence[str],
                      plan: GroverPlan) -> Workspace:
    """Negate the amplitude of the plan's target state.

    The target is all-ones except at plan.target_flip_positions; an X on
    each flipped position maps it to all-ones, where a Z controlled on
    every other qubit applies the sign.
    """
    _checkOracleOperands(ws, qubits)
    if len(qubits) != len(ws.names):
        raise ValueError(
            f"oracle needs the whole stack: got {len(qubits)} of {len(ws.names)} qubits")
    flipped = [qubits[p] for p in sorted(plan.target_flip_positions)]
    for q in flipped:
        applyGate(ws, X, q)
    applyGate(ws, Z, *qubits)
    for q in flipped:
        applyGate(ws, X, q)
    return ws


def groverSearch(ws: Workspace, plan: GroverPlan,
                 report: Optional[ProbabilitySink] = None) -> str:
    """Run Grover's search on an empty workspace and return the result.

    Pushes qubits "0" .. str(n-1) in uniform superposition, runs
    plan.iterations rounds of {target oracle; H on all; zero-state
    oracle; H on all}, then measures every qubit in reverse push order.

    Args:
        ws: empty workspace (nothing pushed yet).
        plan: qubit count, round count, and target flip positions.
        report: optional callback receiving probQubit(ws, qubits[0])
            after each round, for convergence tables.

    Returns:
        The measured bits concatenated first-measured-first, so the
        result reads top-of-stack qubit leftmost, e.g. "111101".

    Raises:
        ValueError: the workspace already holds qubits.
    """
    if ws.names:
        raise ValueError(f"workspace must be empty, holds {ws.names!r}")
    qubits = [str(i) for i in range(plan.n)]
    for q in qubits:
        pushQubit(ws, q, [1, 1])
    for _ in range(plan.iterations):
        samplePhaseOracle(ws, qubits, plan)
        for q in qubits:
            applyGate(ws, H, q)
        zeroPhaseOracle(ws, qubits)
        for q in qubits:
            applyGate(ws, H, q)
        if report is not None:
            report(probQubit(ws, qubits[0]))
    return "".join(str(measureQubit(ws, q)) for q in reversed(qubits))
