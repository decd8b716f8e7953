"""Shared exception types."""


class CapacityError(Exception):
    """Instance exceeds the supported exhaustive-search size."""


class FormatError(ValueError):
    """Malformed GL1/CL1/PM1 input; carries a 1-based line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
