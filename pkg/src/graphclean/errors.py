"""Exception types shared across the package."""


class GraphCleanError(Exception):
    """Base class for all errors raised by this package."""


class InvalidParameterError(GraphCleanError, ValueError):
    """A family or solver parameter is outside its accepted range."""


class ParseError(GraphCleanError, ValueError):
    """A text input could not be parsed; the message names the line."""

    def __init__(self, line_no: int, message: str, source: str | None = None):
        self.line_no = line_no
        self.message = message
        self.source = source
        prefix = f"{source}: " if source else ""
        super().__init__(f"{prefix}line {line_no}: {message}")


class InvalidInputError(GraphCleanError, ValueError):
    """Inputs are mutually inconsistent (sizes, ids, infeasible cleanings)."""


class InvalidSequenceError(GraphCleanError, ValueError):
    """A cleaning sequence repeats, omits or misnames vertices."""


class InvalidOrientationError(GraphCleanError, ValueError):
    """An orientation does not match the host graph's edge set."""


class InfeasibleStepError(GraphCleanError):
    """A simulation step fired a vertex holding fewer brushes than it owes."""

    def __init__(self, vertex: int, have: int, need: int):
        self.vertex = vertex
        self.have = have
        self.need = need
        super().__init__(
            f"vertex {vertex} holds {have} brushes but faces {need} dirty edges"
        )


class TooLargeError(GraphCleanError):
    """The instance exceeds the configured size cap for this solver."""


class ResourceLimitError(GraphCleanError):
    """The run would exceed its memory budget."""


class PreconditionViolationError(GraphCleanError, ValueError):
    """A structural precondition on the input cleaning does not hold."""


class InvalidClassificationError(GraphCleanError):
    """Boundary-pair adjustments drove a brush count negative."""


class InternalInconsistencyError(GraphCleanError):
    """A state the construction rules out was reached; diagnostic, not a crash."""
