"""Exception hierarchy shared by every facemax module."""

from __future__ import annotations


class FacemaxError(Exception):
    """Base class for all errors raised by facemax."""


class GraphError(FacemaxError, ValueError):
    pass


class SelfLoop(GraphError):
    pass


class VertexOutOfRange(GraphError):
    pass


class NonPlanarRotation(GraphError):
    """A rotation system whose face count violates Euler's formula."""


class NotPlanar(GraphError):
    pass


class NotBiconnected(GraphError):
    pass


class Disconnected(GraphError):
    pass


class InvalidCycle(GraphError):
    pass


class NotACycle(InvalidCycle):
    pass


class DuplicateCycle(InvalidCycle):
    pass


class ParentEdgeNotExpandable(FacemaxError, ValueError):
    pass


class PreconditionViolated(FacemaxError):
    """Input falls outside the regime a solver is proven exact for."""


class HasRNode(PreconditionViolated):
    pass


class BudgetExceeded(FacemaxError):
    pass


class NotCubic(GraphError):
    pass


class Not3Connected(GraphError):
    pass


class UnknownName(FacemaxError, KeyError):
    pass


class ParseError(FacemaxError, ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
