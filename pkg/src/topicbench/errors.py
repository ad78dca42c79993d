"""Shared exception types.

Everything raised on bad data or violated contracts derives from
:class:`TopicbenchError`, so callers (and the CLI) can distinguish data
problems from programming errors.
"""


class TopicbenchError(Exception):
    """Base class for all data/contract errors raised by this package."""


class FormatError(TopicbenchError):
    """A file does not conform to its documented text format."""

    def __init__(self, message: str, path: str | None = None, line: int | None = None):
        where = ""
        if path is not None:
            where = f"{path}: "
        if line is not None:
            where += f"line {line}: "
        super().__init__(where + message)
        self.path = path
        self.line = line


class DegenerateChunkError(TopicbenchError):
    """All points of a chunk coincide; pairwise-max normalization is undefined."""


class DisconnectedPointError(TopicbenchError):
    """A point has zero affinity to every other point; spectral embedding is undefined."""


class EmptyEvaluationError(TopicbenchError):
    """No points remain to evaluate (e.g. every point is noise under the exclude policy)."""
