"""
Exceptions for cuspidal-shadow.

This module defines the exceptions raised throughout the toolkit. Every
exception keeps the values that caused it as attributes so callers (and the
CLI) can report them without parsing messages.
"""
from typing import Any, Sequence


class CuspidalShadowError(Exception):
    """Base class for all toolkit errors."""


class ConfigurationError(CuspidalShadowError):
    """Raised when a Cartan type or a run configuration value is invalid."""

    def __init__(self, key: str, value: Any, reason: str):
        self.key = key
        self.value = value
        self.reason = reason
        super().__init__(f"Invalid configuration {key}={value!r}: {reason}")


class InvalidWordError(CuspidalShadowError):
    """Raised when a word is not a reduced expression of the longest element."""

    def __init__(self, word: Sequence[int], reason: str):
        self.word = tuple(word)
        self.reason = reason
        super().__init__(f"Invalid word {self.word}: {reason}")


class DomainError(CuspidalShadowError):
    """Raised when an operation receives input outside its domain."""

    def __init__(self, operation: str, reason: str):
        self.operation = operation
        self.reason = reason
        super().__init__(f"{operation}: {reason}")


class UnsupportedFeatureError(CuspidalShadowError):
    """Raised for features that are deliberately not implemented (e.g. E-series denominators)."""

    def __init__(self, feature: str, reason: str):
        self.feature = feature
        self.reason = reason
        super().__init__(f"Unsupported feature '{feature}': {reason}")


class InvariantViolation(CuspidalShadowError):
    """Raised when an internal consistency check fails.

    This never signals bad user input: it means a convention or an algorithm
    produced something the theory forbids, and the run must abort.
    """

    def __init__(self, check: str, detail: str):
        self.check = check
        self.detail = detail
        super().__init__(f"Invariant '{check}' violated: {detail}")


class RangeError(CuspidalShadowError):
    """Raised when a cuspidal parameter is supported outside a line's k-range."""

    def __init__(self, support: Sequence[int], k_range: range):
        self.support = tuple(support)
        self.k_range = k_range
        super().__init__(
            f"Support {list(self.support)} is outside k-range "
            f"[{k_range.start}, {k_range.stop - 1}]"
        )
