"""Error types shared by every layer of the translation center.

Each error carries a stable machine-readable ``code``; the HTTP layer maps
codes onto status codes and the CLI maps them onto exit codes.
"""

from __future__ import annotations

from typing import Any


class CenterError(Exception):
    """Base class for all domain errors."""

    code = "error"

    def __init__(self, message: str, detail: dict[str, Any] | None = None) -> None:
        super().__init__(message)
        self.message = message
        self.detail = detail or {}


class ValidationError(CenterError):
    """Input breaks a documented rule: empty text, bad enum value, duplicate id."""

    code = "validation"


class ParseError(ValidationError):
    """A document could not be parsed at all; line/column locate the problem."""

    def __init__(self, message: str, *, line: int | None = None, column: int | None = None) -> None:
        detail: dict[str, Any] = {}
        if line is not None:
            detail["line"] = line
        if column is not None:
            detail["column"] = column
        super().__init__(message, detail)
        self.line = line
        self.column = column


class NotFoundError(CenterError):
    code = "not_found"


class ConflictError(CenterError):
    """Optimistic-concurrency failure; carries the version that actually won."""

    code = "conflict"

    def __init__(
        self,
        message: str,
        *,
        current_version: int | None = None,
        current_text: str | None = None,
    ) -> None:
        detail: dict[str, Any] = {}
        if current_version is not None:
            detail["current_version"] = current_version
        if current_text is not None:
            detail["current_text"] = current_text
        super().__init__(message, detail)
        self.current_version = current_version
        self.current_text = current_text


class SelfReviewError(ValidationError):
    """Authors may not review their own translations."""


class AuthError(CenterError):
    code = "auth"


class StateError(CenterError):
    """Operation not allowed in the object's current state, e.g. voting on a closed poll."""

    code = "state"


class StartupError(CenterError):
    """The service could not start: bad config, busy port, corrupt state file."""

    code = "startup"


class DataDirLockedError(StartupError):
    """Another process holds the data directory lock."""
