"""A state-vector qubit simulator organized as a stack machine.

Qubits are pushed onto a name stack backed by one flat array of 2^N
complex amplitudes; gates act on the top of the stack through reshaped
matrix multiplication, with a suffix-column fast path that turns extra
operand names into controls. Includes a gate library, Grover's search,
swappable dense-math backends, and a circuit-script CLI.
"""

from .backend import BackendHandle, getBackend
from .errors import (
    ArityError,
    BadShape,
    DuplicateName,
    GateTooLarge,
    InternalError,
    NonFinite,
    OutOfRange,
    ParseError,
    ShapeMismatch,
    SimulatorError,
    StaticScriptError,
    UnknownGate,
    UnknownName,
    UseAfterMeasure,
    UseBeforePush,
    ZeroWeights,
)
from .gates import (
    BUILTIN_GATES,
    CNOT,
    CZ,
    Gate,
    H,
    S,
    SWAP,
    T,
    TINV,
    TOFF,
    X,
    Y,
    Z,
    builtinGate,
    checkUnitary,
    phaseGate,
    rotationGate,
    toffEquivCircuit,
    toffnAncilla,
)
from .grover import (
    GroverPlan,
    groverSearch,
    makePlan,
    planIterations,
    samplePhaseOracle,
    zeroBooleanOracle,
    zeroPhaseOracle,
)
from .statevec import (
    Workspace,
    applyGate,
    asVector,
    measureQubit,
    newWorkspace,
    probQubit,
    pushQubit,
    tosQubit,
)

__all__ = [
    "ArityError",
    "BUILTIN_GATES",
    "BackendHandle",
    "BadShape",
    "CNOT",
    "CZ",
    "DuplicateName",
    "Gate",
    "GateTooLarge",
    "GroverPlan",
    "H",
    "InternalError",
    "NonFinite",
    "OutOfRange",
    "ParseError",
    "S",
    "SWAP",
    "ShapeMismatch",
    "SimulatorError",
    "StaticScriptError",
    "T",
    "TINV",
    "TOFF",
    "UnknownGate",
    "UnknownName",
    "UseAfterMeasure",
    "UseBeforePush",
    "Workspace",
    "X",
    "Y",
    "Z",
    "ZeroWeights",
    "applyGate",
    "asVector",
    "builtinGate",
    "checkUnitary",
    "getBackend",
    "groverSearch",
    "makePlan",
    "measureQubit",
    "newWorkspace",
    "phaseGate",
    "planIterations",
    "probQubit",
    "pushQubit",
    "rotationGate",
    "samplePhaseOracle",
    "toffEquivCircuit",
    "toffnAncilla",
    "tosQubit",
    "zeroBooleanOracle",
    "zeroPhaseOracle",
]

__version__ = "0.1.0"
