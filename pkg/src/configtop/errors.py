"""Exception types shared across the package."""

from __future__ import annotations


class SizeLimitError(ValueError):
    """A requested computation exceeds a configured size cap."""


class DomainError(ValueError):
    """An argument is outside the mathematical domain of the operation."""


class OrderError(ValueError):
    """A poset query was made on an incomparable or reversed pair."""


class StructuralError(ValueError):
    """A map or complex violates a structural requirement (simplicialness,
    commuting with boundaries, failed automorphism checks)."""


class ParseError(ValueError):
    """Malformed input text. Carries 1-based line and column positions."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column
