"""Exception types shared across the package."""


class ContractViolation(ValueError):
    """An operation was called with arguments outside its contract."""


class CapacityError(RuntimeError):
    """The requested computation exceeds a configured resource cap."""


class UnsatisfiableError(RuntimeError):
    """The graph admits no proper 2-coloring."""


class HgrParseError(ValueError):
    """Malformed HGR1 instance file."""

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class GenerationError(RuntimeError):
    """An instance generator gave up (e.g. rejection attempt cap hit)."""
