"""Exception hierarchy shared by the library and the CLI."""


class KakeyaError(Exception):
    """Base class for all library errors."""


class UsageError(KakeyaError, ValueError):
    """Arguments are inconsistent (mismatched fields, wrong dimensions, ...)."""


class FieldMismatchError(UsageError):
    pass


class ResourceLimitError(KakeyaError):
    """A desk-scale limit (points, cells, search nodes) would be exceeded."""


class NotKakeyaError(UsageError):
    """Raised when a pipeline needs a Kakeya set and a direction has no full line."""

    def __init__(self, direction, message=None):
        self.direction = tuple(direction)
        super().__init__(message or f"no line in direction {self.direction} lies inside the set")


class SetFileError(UsageError):
    """Malformed set file; ``lineno`` is 1-based."""

    def __init__(self, lineno, message):
        self.lineno = lineno
        super().__init__(f"line {lineno}: {message}")
