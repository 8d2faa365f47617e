"""Exception types shared across the package.

The service layer maps these onto API error codes: ValidationError ->
InvalidInput (never retryable), NotFoundError -> NotFound, UpstreamError ->
Upstream (always retryable).
"""

from __future__ import annotations


class SciqaError(Exception):
    """Base class for package errors."""


class ValidationError(SciqaError):
    """Input violates a documented precondition or schema."""


class NotFoundError(SciqaError):
    """A referenced record does not exist."""


class UpstreamError(SciqaError):
    """A remote dependency failed; the call may be retried."""

    def __init__(self, message: str, *, endpoint: str | None = None, status: int | None = None):
        super().__init__(message)
        self.endpoint = endpoint
        self.status = status
        self.retryable = True


class SnapshotCorruptError(SciqaError):
    """An index snapshot failed structural or checksum validation."""
