"""Exception types shared across the package."""

from __future__ import annotations


class ShareGraphError(Exception):
    """Base class for all sharegraph errors."""


class TraceParseError(ShareGraphError):
    """Raised when a trace input yields no usable records.

    Carries the per-line diagnostics that explain every rejected line.
    """

    def __init__(self, message: str, diagnostics=()):
        super().__init__(message)
        self.diagnostics = tuple(diagnostics)


class EmptyTraceError(ShareGraphError, ValueError):
    """Raised by operations whose precondition requires a non-empty trace."""


class DisconnectedGraphError(ShareGraphError, ValueError):
    """Raised when a path-length computation receives a disconnected graph."""
