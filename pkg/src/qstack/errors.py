"""Exception types shared across the simulator layers."""


class SimulatorError(Exception):
    """Base class for runtime errors raised while operating on a workspace."""


class DuplicateName(SimulatorError):
    """A qubit name is already live on the name stack."""


class ZeroWeights(SimulatorError):
    """Raw qubit weights have Euclidean norm at or below 1e-12."""


class UnknownName(SimulatorError):
    """A referenced qubit name is not on the name stack."""


class GateTooLarge(SimulatorError):
    """The gate acts on more qubits than were supplied or exist."""


class BadShape(SimulatorError):
    """A gate matrix is not square with a power-of-two dimension."""


class NonFinite(SimulatorError):
    """A gate parameter is NaN or infinite."""


class InternalError(SimulatorError):
    """An ancilla qubit failed to uncompute to zero."""


class ShapeMismatch(SimulatorError):
    """A dense-kernel buffer does not match its declared view shape."""


class StaticScriptError(Exception):
    """Base for script errors detected before execution. Carries a line number."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


class ParseError(StaticScriptError):
    """The line does not match the script grammar."""


class ArityError(StaticScriptError):
    """A gate was given fewer qubit names than its matrix requires."""


class UnknownGate(StaticScriptError):
    """The gate spec names no builtin and no parametric constructor."""


class UseBeforePush(StaticScriptError):
    """A qubit is referenced before any push makes it live."""


class UseAfterMeasure(StaticScriptError):
    """A qubit is referenced after its measure popped it."""


class OutOfRange(Exception):
    """A command argument is outside its documented range."""
