"""Exception hierarchy shared by the library and the CLI."""


class BraessError(Exception):
    """Base class for every error raised by the braess package."""


class NetFileError(BraessError):
    """Malformed NetFile input."""

    def __init__(self, line: int, message: str):
        self.line = line
        self.message = message
        super().__init__(f"line {line}: {message}")


class NetPreconditionError(BraessError):
    """An operation was called outside its precondition."""


class InvariantViolation(BraessError):
    """Internal logic fault: a property the algorithm guarantees did not hold."""


class OracleGuardError(BraessError):
    """The exponential oracle refused or aborted a computation."""


class PathExplosionError(OracleGuardError):
    def __init__(self, cap: int):
        self.cap = cap
        super().__init__(f"simple path enumeration exceeded {cap} paths")


class EmbeddingBoundError(OracleGuardError):
    def __init__(self, nodes: int, bound: int):
        self.nodes = nodes
        self.bound = bound
        super().__init__(f"embedding search refused: {nodes} nodes exceeds bound {bound}")
