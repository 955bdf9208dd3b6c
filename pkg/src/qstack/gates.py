"""Gate library: standard matrices, parametric constructors, unitarity
checking, and the circuit-level Toffoli constructions."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import BadShape, DuplicateName, InternalError, NonFinite, UnknownName
from .statevec import Workspace, applyGate, measureQubit, pushQubit


@dataclass(frozen=True, eq=False)
class Gate:
    """A 2^m x 2^m complex matrix acting on the top m qubits of a stack.

    The matrix is stored densely and read-only. Unitarity is the caller's
    contract, checked separately by checkUnitary, so deliberately
    non-unitary matrices can be constructed for testing.
    """

    m: int
    matrix: np.ndarray = field(repr=False)

    def __post_init__(self):
        mat = np.array(self.matrix, dtype=np.complex128, order="C")
        d = 1 << self.m
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
            raise BadShape(f"gate matrix must be square, got shape {mat.shape}")
        if mat.shape[0] != d:
            raise BadShape(f"matrix dimension {mat.shape[0]} is not 2^{self.m}")
        mat.setflags(write=False)
        object.__setattr__(self, "matrix", mat)


_SQRT_HALF = math.sqrt(0.5)

X = Gate(1, [[0, 1],
             [1, 0]])                       # Pauli X, the NOT gate
Y = Gate(1, [[0, -1j],
             [1j, 0]])                      # Pauli Y, equals S H Z H Z S
Z = Gate(1, [[1, 0],
             [0, -1]])                      # Pauli Z, equals H X H
H = Gate(1, np.array([[1, 1],
                      [1, -1]]) * _SQRT_HALF)
S = Gate(1, [[1, 0],
             [0, 1j]])                      # phase gate, T squared
T = Gate(1, [[1, 0],
             [0, np.exp(np.pi / -4j)]])     # equals P(pi/4): pi/-4j == +i*pi/4
TINV = Gate(1, [[1, 0],
                [0, np.exp(np.pi / 4j)]])   # inverse of T
CNOT = Gate(2, [[1, 0, 0, 0],
                [0, 1, 0, 0],
                [0, 0, 0, 1],
                [0, 0, 1, 0]])
CZ = Gate(2, [[1, 0, 0, 0],
              [0, 1, 0, 0],
              [0, 0, 1, 0],
              [0, 0, 0, -1]])
SWAP = Gate(2, [[1, 0, 0, 0],
                [0, 0, 1, 0],
                [0, 1, 0, 0],
                [0, 0, 0, 1]])
TOFF = Gate(3, np.eye(8)[[0, 1, 2, 3, 4, 5, 7, 6]])  # identity with last rows swapped

BUILTIN_GATES: dict[str, Gate] = {
    "X": X, "Y": Y, "Z": Z, "H": H, "S": S, "T": T, "Tinv": TINV,
    "CNOT": CNOT, "CZ": CZ, "SWAP": SWAP, "TOFF": TOFF,
}


def builtinGate(kind: str) -> Gate:
    """Return the builtin gate named by kind (X, Y, Z, H, S, T, Tinv,
    CNOT, CZ, SWAP, or TOFF)."""
    try:
        return BUILTIN_GATES[kind]
    except KeyError:
        raise KeyError(f"no builtin gate named {kind!r}") from None


def phaseGate(phi: float) -> Gate:
    """Return diag(1, e^(i*phi))."""
    if not math.isfinite(phi):
        raise NonFinite(f"phase angle must be finite, got {phi!r}")
    return Gate(1, [[1, 0],
                    [0, np.exp(1j * phi)]])


def rotationGate(axis: str, theta: float) -> Gate:
    """Return the standard single-qubit rotation by theta about X, Y, or Z."""
    if not math.isfinite(theta):
        raise NonFinite(f"rotation angle must be finite, got {theta!r}")
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    if axis == "X":
        return Gate(1, [[c, -1j * s],
                        [-1j * s, c]])
    if axis == "Y":
        return Gate(1, [[c, -s],
                        [s, c]])
    if axis == "Z":
        return Gate(1, [[np.exp(-0.5j * theta), 0],
                        [0, np.exp(0.5j * theta)]])
    raise ValueError(f"rotation axis must be X, Y, or Z, got {axis!r}")


def checkUnitary(g: Gate, tol: float) -> bool:
    """True iff max |(U U^H - I)_ij| <= tol."""
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    u = g.matrix
    resid = u @ u.conj().T - np.eye(u.shape[0])
    return float(np.max(np.abs(resid))) <= tol


def toffEquivCircuit(ws: Workspace, q1: str, q2: str, q3: str) -> Workspace:
    """Apply the 15-gate H/T/Tinv/CNOT sequence whose net effect is a
    Toffoli on (q1, q2, q3): q3 becomes q3 XOR (q1 AND q2)."""
    if len({q1, q2, q3}) != 3:
        raise DuplicateName(f"need three distinct qubits, got {(q1, q2, q3)!r}")
    for q in (q1, q2, q3):
        if q not in ws.names:
            raise UnknownName(f"qubit {q!r} is not on the stack")
    applyGate(ws, H, q3)
    applyGate(ws, CNOT, q2, q3)
    applyGate(ws, TINV, q3)
    applyGate(ws, CNOT, q1, q3)
    applyGate(ws, T, q3)
    applyGate(ws, CNOT, q2, q3)
    applyGate(ws, TINV, q3)
    applyGate(ws, CNOT, q1, q3)
    applyGate(ws, T, q2)
    applyGate(ws, T, q3)
    applyGate(ws, H, q3)
    applyGate(ws, CNOT, q1, q2)
    applyGate(ws, T, q1)
    applyGate(ws, TINV, q2)
    applyGate(ws, CNOT, q1, q2)
    return ws


def toffnAncilla(ws: Workspace, controls: list[str], result: str) -> Workspace:
    """Set result to result XOR AND(controls) using only CNOT and Toffoli.

    Three or more controls recurse through a zero-initialized temp qubit
    ("temp0", "temp1", ..., first name not already on the stack). Each temp
    is uncomputed by a second Toffoli and then measured; the measurement
    must give 0, so the net qubit count is unchanged.

    Raises:
        InternalError: a temp measured 1, meaning the uncompute is broken.
    """
    if result in controls:
        raise DuplicateName(f"result {result!r} also appears in controls")
    if len(set(controls)) != len(controls):
        raise DuplicateName(f"duplicate names in controls {controls!r}")
    for q in list(controls) + [result]:
        if q not in ws.names:
            raise UnknownName(f"qubit {q!r} is not on the stack")
    n = len(controls)
    if n == 0:
        applyGate(ws, X, result)
    elif n == 1:
        applyGate(ws, CNOT, controls[0], result)
    elif n == 2:
        applyGate(ws, TOFF, controls[0], controls[1], result)
    else:
        k = 0
        while "temp" + str(k) in ws.names:
            k += 1
        temp = "temp" + str(k)
        pushQubit(ws, temp, [1, 0])
        applyGate(ws, TOFF, controls[0], controls[1], temp)
        toffnAncilla(ws, list(controls[2:]) + [temp], result)
        applyGate(ws, TOFF, controls[0], controls[1], temp)
        if measureQubit(ws, temp) != 0:
            raise InternalError(f"ancilla {temp!r} failed to uncompute to zero")
    return ws
