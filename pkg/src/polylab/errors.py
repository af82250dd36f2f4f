"""Exception hierarchy shared by every polylab module."""


class PolylabError(Exception):
    """Base class for all library errors."""


class DomainError(PolylabError, ValueError):
    """Input outside the domain of an operation (bad parameter, wrong order shape)."""


class EmptyGeometry(PolylabError, ValueError):
    pass


class NotPolygon(PolylabError):
    """Raised when a geometry fails the generalized polygon axioms.

    ``witness`` carries the offending element pair or the short cycle.
    """

    def __init__(self, reason, witness=None):
        super().__init__(reason if witness is None else f"{reason}: {witness}")
        self.reason = reason
        self.witness = witness


class ContractViolation(PolylabError):
    pass


class ConstructionError(PolylabError):
    """A constructor's output failed its validation gate."""


class DescriptorError(PolylabError, ValueError):
    pass


class Truncated(PolylabError):
    """A search hit its node or result budget before finishing.

    ``partial`` holds whatever was found before the cut-off.
    """

    def __init__(self, message, partial=None, nodes=0):
        super().__init__(message)
        self.partial = partial if partial is not None else []
        self.nodes = nodes


class Exhausted(PolylabError):
    pass


class InternalError(PolylabError):
    pass


class ParseError(PolylabError, ValueError):
    def __init__(self, line, column, reason):
        super().__init__(f"line {line}, column {column}: {reason}")
        self.line = line
        self.column = column
        self.reason = reason
