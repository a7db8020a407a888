"""Exception hierarchy shared by every layer of the toolkit.

The CLI maps these onto exit codes (see ``tverberg_kit.cli``); library code
raises them and never prints.
"""
from __future__ import annotations

from typing import Any, List, Optional


class TverbergKitError(Exception):
    """Base class for all toolkit errors."""


class InputError(TverbergKitError, ValueError):
    """Malformed dimensions or arguments."""


class PreconditionError(TverbergKitError, ValueError):
    """A documented precondition of an operation does not hold."""


class ExhaustionError(TverbergKitError):
    """A finder scanned every candidate without finding a witness."""

    def __init__(self, message: str, scanned: int = 0):
        super().__init__(message)
        self.scanned = scanned


class DegenerateInputError(TverbergKitError):
    """No positive distance exists in the considered family."""


class ProjectionUndefinedError(TverbergKitError, ValueError):
    """Central projection of a point at the height of the centre."""


class GuaranteeViolatedError(TverbergKitError):
    """The descent found no minimizer satisfying its three conclusions."""


class InvariantViolationError(TverbergKitError):
    """A structural assertion failed; this indicates a bug or a broken encoding."""


class ReductionFailedError(TverbergKitError):
    """Retry budget exhausted. ``attempts`` holds the per-attempt log."""

    def __init__(self, message: str, attempts: Optional[List[dict]] = None):
        super().__init__(message)
        self.attempts = attempts or []


class ParseError(TverbergKitError, ValueError):
    """Document parse failure with an optional line and field location."""

    def __init__(self, message: str, line: Optional[int] = None, field: Optional[str] = None):
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field:
            where.append(f"field {field}")
        text = f"{message} ({', '.join(where)})" if where else message
        super().__init__(text)
        self.line = line
        self.field = field


class GenerationError(TverbergKitError):
    """Rejection sampling ran out of attempts."""


class ConfigError(TverbergKitError, ValueError):
    """Malformed environment setting."""

    def __init__(self, name: str, value: Any):
        super().__init__(f"invalid value for {name}: {value!r}")
        self.name = name
        self.value = value
