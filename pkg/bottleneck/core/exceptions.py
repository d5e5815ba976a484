"""
Exception hierarchy shared by the graph core, the solvers and the CLI.
"""
from typing import Optional


class BottleneckError(Exception):
    """Base class for every error raised by the library."""


class InvalidInstanceError(BottleneckError, ValueError):
    """An instance, graph or parameter violates an operation's precondition."""


class GraphFormatError(BottleneckError, ValueError):
    """The text graph format could not be parsed."""

    def __init__(self, message: str, line_no: Optional[int] = None):
        self.line_no = line_no
        self.message = message
        if line_no is not None:
            message = f"line {line_no}: {message}"
        super().__init__(message)


class DepthLimitExceeded(BottleneckError, RuntimeError):
    """The recursive solver went deeper than its safety cap."""
