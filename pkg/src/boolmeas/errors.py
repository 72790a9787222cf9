"""
Exception types for boolmeas.

Everything derives from ValueError so callers that only care about
"bad input" can keep catching ValueError. The CLI maps ValidationError
to exit status 2 and CapExceededError to exit status 3.
"""

from __future__ import annotations

from typing import Optional


class BoolMeasError(ValueError):
    """Base class for all boolmeas errors."""


class ValidationError(BoolMeasError):
    """
    Malformed input or violated precondition.

    Args:
        message: Human readable description
        pointer: Location of the offending value, e.g. '/family/2'
                 or 'interval 3'. Optional.
    """

    def __init__(self, message: str, pointer: Optional[str] = None):
        self.pointer = pointer
        if pointer:
            message = f"{pointer}: {message}"
        super().__init__(message)


class ForeignElementError(ValidationError):
    """Element does not belong to the algebra presentation it was used with."""


class CapExceededError(BoolMeasError):
    """
    An enumeration or size cap was exceeded.

    Attributes:
        cap: The configured limit
        requested: What the call would have needed
    """

    def __init__(self, what: str, cap: int, requested: Optional[int] = None):
        self.cap = cap
        self.requested = requested
        if requested is None:
            message = f"{what}: cap {cap} exhausted"
        else:
            message = f"{what}: requested {requested} exceeds cap {cap}"
        super().__init__(message)
