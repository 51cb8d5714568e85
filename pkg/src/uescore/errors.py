"""Exception types raised by the scoring engine."""

from __future__ import annotations


class EngineError(Exception):
    """Base class for every error this package raises on purpose."""


class ParseError(EngineError, ValueError):
    """Malformed input that could not be decoded at all."""

    def __init__(self, message: str, line_number: int | None = None):
        super().__init__(message)
        self.line_number = line_number


class ValidationError(EngineError, ValueError):
    """Well-formed input that violates a declared invariant."""


class ConfigError(EngineError, ValueError):
    """Run configuration that cannot be executed as requested."""


class InsufficientSamplesError(EngineError, ValueError):
    """A sampling-based method was requested for a record without samples."""

    def __init__(self, record_id: str):
        super().__init__(
            f"record {record_id!r}: insufficient samples for a sampling-based method"
        )
        self.record_id = record_id


class DegenerateLabelsError(EngineError, ValueError):
    """AUROC over labels that contain only one class."""


class TransportError(EngineError, RuntimeError):
    """Remote provider failure after exhausting retries; safe to retry later."""


class ProviderError(EngineError, RuntimeError):
    """Remote provider rejected a request or returned an unusable response."""
