from __future__ import annotations


class DomainError(ValueError):
    """An argument lies outside the domain an operation is defined on."""


class PreconditionError(DomainError):
    pass


class CertificateMismatch(DomainError):
    pass


class CheckpointError(ValueError):
    """A checkpoint file could not be parsed or failed validation."""

    def __init__(self, field: str, message: str) -> None:
        super().__init__(f"checkpoint field {field!r}: {message}")
        self.field = field
