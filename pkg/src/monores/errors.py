class UsageError(ValueError):
    """Invalid arguments: mismatched dimensions, malformed input, ragged grids."""


class GuardError(RuntimeError):
    """A configured size guard would be exceeded."""

    def __init__(self, guard, value, limit, hint=""):
        self.guard = guard
        self.value = value
        self.limit = limit
        msg = f"size guard '{guard}' exceeded: {value} > {limit}"
        if hint:
            msg += f" ({hint})"
        super().__init__(msg)


class ParseError(UsageError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
