"""Shared exception types."""


class DpnetError(Exception):
    """Base class for all dpnet errors."""


class DataError(DpnetError):
    """Malformed input data or a violated data contract."""


class UnknownNodeError(DataError):
    """A node id was referenced that does not exist in the network."""

    def __init__(self, node_id: str):
        super().__init__(f"unknown node: {node_id!r}")
        self.node_id = node_id


class ConvergenceError(DpnetError):
    """An iterative solver exhausted its iteration budget."""

    def __init__(self, message: str, iterations: int):
        super().__init__(message)
        self.iterations = iterations


class UnsupportedModeError(DpnetError):
    """The operation is not defined for this network mode."""
