"""State-vector workspace with stack-machine qubit semantics.

The joint state of N pushed qubits is a flat vector of 2^N complex
amplitudes plus an ordered stack of qubit names. The qubit at the top
of the stack (TOS, last name) owns the least significant bit of the
flat index; the bottom qubit owns the most significant bit.

Four instructions manipulate the state: pushQubit (Kronecker expansion),
applyGate (reshaped matrix multiply on the top qubits, with an implicit
multi-controlled fast path), tosQubit (axis swap moving a named qubit to
TOS), and probQubit/measureQubit (column probabilities and collapse).
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .backend import BackendHandle, getBackend
from .errors import (
    BadShape,
    DuplicateName,
    GateTooLarge,
    UnknownName,
    ZeroWeights,
)

# A pushed qubit is a pair of complex weights (w0, w1); pushQubit
# normalizes them, so any pair with norm above 1e-12 is accepted.
QubitWeights = Sequence[complex]


class Workspace:
    """The entire simulator state: amplitudes, name stack, RNG, and backend.

    Invariants after every complete public operation:
    - len(amp) == 2 ** len(names)
    - all names distinct
    - sum of |amplitude|^2 equals 1 within 1e-9
    """

    def __init__(self, seed: int, backend: BackendHandle | None = None):
        self.amp = np.array([1.0 + 0.0j])
        self.names: list[str] = []
        self.rng = np.random.default_rng(seed)
        self.backend = backend if backend is not None else getBackend("reference")

    @property
    def qubitCount(self) -> int:
        return len(self.names)


def newWorkspace(seed: int, backend: BackendHandle | None = None) -> Workspace:
    """Return the empty workspace [1+0i] with a seeded measurement RNG."""
    return Workspace(seed, backend)


def normalizeWeights(weights: QubitWeights) -> np.ndarray:
    """Return the weights scaled to unit norm as a complex128 pair.

    Raises ZeroWeights if the raw Euclidean norm is at or below 1e-12.
    """
    w = np.asarray(weights, dtype=np.complex128).reshape(-1)
    if w.size != 2:
        raise ValueError(f"qubit weights must be a pair, got {w.size} entries")
    nrm = float(np.linalg.norm(w))
    if nrm <= 1e-12:
        raise ZeroWeights("qubit weights have (near) zero norm")
    return w / nrm


def _normSquared(ws: Workspace) -> float:
    if not ws.names:
        a = ws.amp[0]
        return float(a.real * a.real + a.imag * a.imag)
    s0, s1 = ws.backend.columnNormsSquared(ws.amp)
    return s0 + s1


def _normOK(ws: Workspace) -> bool:
    return abs(_normSquared(ws) - 1.0) <= 1e-9


def pushQubit(ws: Workspace, name: str, weights: QubitWeights) -> Workspace:
    """Push a named qubit, doubling the workspace.

    The amplitudes become kron(amp, w): for each old amplitude a the pair
    (a*w0, a*w1) is emitted in order, so the new qubit lands at TOS.

    Args:
        ws: workspace to grow.
        name: identifier not currently on the name stack.
        weights: raw (w0, w1); normalized here, norm must exceed 1e-12.

    Returns:
        ws, mutated in place.

    Raises:
        DuplicateName: name is already live.
        ZeroWeights: weights cannot be normalized.
    """
    if name in ws.names:
        raise DuplicateName(f"qubit {name!r} is already on the stack")
    w = normalizeWeights(weights)
    ws.amp = ws.backend.kronExpand(ws.amp, w)
    ws.names.append(name)
    assert _normOK(ws)
    return ws


def tosQubit(ws: Workspace, name: str) -> Workspace:
    """Move the named qubit to the top of the stack.

    With the qubit k names down from TOS (k == 1 means already there),
    the amplitudes reinterpreted as (2^(N-k), 2, 2^(k-1)) get their last
    two axes swapped and the name stack rotates so `name` is last. The
    amplitude multiset is unchanged.

    Raises:
        UnknownName: name is not on the stack.
    """
    if name not in ws.names:
        raise UnknownName(f"qubit {name!r} is not on the stack")
    k = len(ws.names) - ws.names.index(name)
    if k > 1:
        ws.names.append(ws.names.pop(-k))
        ws.amp = ws.backend.middleAxisSwap(ws.amp, ws.amp.size >> k, 1 << (k - 1))
    return ws


def applyGate(ws: Workspace, gate, *names: str) -> Workspace:
    """Apply a unitary gate to the named qubits.

    The names are brought to TOS left to right, so the last listed name
    ends at TOS and the first listed name is the most significant operand
    (for CNOT: first name control, second target). The amplitudes viewed
    as (2^(N-L), 2^L) with L == len(names) then have their rightmost
    2^gate.m columns multiplied by the transposed gate matrix. Supplying
    more names than gate.m applies the gate controlled on the leading
    names all being 1; only the suffix columns are touched, which is what
    makes multi-controlled gates cheap.

    Args:
        ws: workspace to transform.
        gate: object with fields m and matrix (2^m x 2^m unitary).
        *names: distinct live qubit names, len(names) >= gate.m.

    Returns:
        ws, mutated in place.

    Raises:
        UnknownName: some name is not on the stack.
        DuplicateName: the same name is listed twice.
        GateTooLarge: gate.m exceeds len(names) or the stack size.
        BadShape: gate matrix is not square power-of-two of dimension 2^m.
    """
    for nm in names:
        if nm not in ws.names:
            raise UnknownName(f"qubit {nm!r} is not on the stack")
    if len(set(names)) != len(names):
        raise DuplicateName(f"duplicate qubit names in {names!r}")
    d = 1 << gate.m
    if gate.m > len(ws.names):
        raise GateTooLarge(f"gate acts on {gate.m} qubits, stack holds {len(ws.names)}")
    if gate.m > len(names):
        raise GateTooLarge(f"gate acts on {gate.m} qubits, got {len(names)} names")
    if gate.matrix.shape != (d, d):
        raise BadShape(f"gate matrix shape {gate.matrix.shape}, expected {(d, d)}")
    if list(names) != ws.names[-len(names):]:  # reorder stack only if necessary
        for nm in names:
            tosQubit(ws, nm)
    ws.backend.suffixMatmulInPlace(ws.amp, 1 << len(names), d, gate.matrix)
    assert _normOK(ws)
    return ws


def probQubit(ws: Workspace, name: str) -> tuple[float, float]:
    """Return (p0, p1) for the named qubit without collapsing it.

    Moves the qubit to TOS, sums squared magnitudes down the two columns
    of the (2^(N-1), 2) view, and renormalizes so p0 + p1 == 1 exactly.
    The state is unchanged apart from the axis permutation.

    Raises:
        UnknownName: name is not on the stack.
    """
    tosQubit(ws, name)
    s0, s1 = ws.backend.columnNormsSquared(ws.amp)
    total = s0 + s1
    return s0 / total, s1 / total


def measureQubit(ws: Workspace, name: str) -> int:
    """Measure the named qubit, collapse the state, and pop the qubit.

    Draws m in {0, 1} from the probQubit distribution using the workspace
    RNG, keeps only column m of the (2^(N-1), 2) view divided by sqrt(p_m),
    and pops the name. A branch with probability zero is never drawn.

    Returns:
        The measured bit as an int.

    Raises:
        UnknownName: name is not on the stack (including an empty stack).
    """
    p = probQubit(ws, name)
    m = 1 if ws.rng.random() >= p[0] else 0
    ws.amp = ws.amp.reshape(-1, 2)[:, m] / np.sqrt(p[m])
    ws.amp = np.ascontiguousarray(ws.amp)
    ws.names.pop()
    assert _normOK(ws)
    return m


def asVector(ws: Workspace) -> np.ndarray:
    """Return a copy of the amplitudes in flat row-major order."""
    return ws.amp.copy()
