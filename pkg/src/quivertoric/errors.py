"""Exception types shared across the package."""

from __future__ import annotations


class QuiverError(ValueError):
    """Raised when a quiver violates a structural invariant."""

    def __init__(self, violations):
        if isinstance(violations, str):
            violations = [violations]
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


class ParseError(QuiverError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        text = f"line {line}: {message}" if line is not None else message
        super().__init__(text)


class PreconditionError(ValueError):
    """An operation was called on input outside its domain (e.g. a non-contractible arrow)."""
