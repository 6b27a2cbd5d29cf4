from __future__ import annotations

"""Pydantic models for diagnostics and source locations."""

from enum import Enum
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field


class Severity(str, Enum):
    """Diagnostic severity levels."""

    error = "error"
    warning = "warning"


class SourceSpan(BaseModel):
    """Location of a token or construct in a document (1-based line/column)."""

    model_config = ConfigDict(frozen=True)

    line: int = Field(ge=1)
    column: int = Field(ge=1)
    offset: int = Field(ge=0)
    length: int = Field(default=0, ge=0)


class Diagnostic(BaseModel):
    """A validation or parse finding.

    Errors mean the document must be rejected; warnings never block evaluation.
    ``node_id`` names the leaf a finding is about, ``span`` points into the
    source text when the tree came from a document.
    """

    model_config = ConfigDict(frozen=True)

    severity: Severity
    code: str
    message: str
    node_id: Optional[str] = None
    span: Optional[SourceSpan] = None

    @property
    def is_error(self) -> bool:
        return self.severity is Severity.error

    def location_text(self) -> str:
        if self.span is None:
            return "0:0"
        return f"{self.span.line}:{self.span.column}"

    def format(self) -> str:
        """Render as ``SEVERITY CODE line:col message``."""
        return f"{self.severity.value.upper()} {self.code} {self.location_text()} {self.message}"


def error(code: str, message: str, **kwargs) -> Diagnostic:
    return Diagnostic(severity=Severity.error, code=code, message=message, **kwargs)


def warning(code: str, message: str, **kwargs) -> Diagnostic:
    return Diagnostic(severity=Severity.warning, code=code, message=message, **kwargs)


def has_errors(diagnostics: list[Diagnostic]) -> bool:
    return any(d.is_error for d in diagnostics)


__all__ = [
    "Severity",
    "SourceSpan",
    "Diagnostic",
    "error",
    "warning",
    "has_errors",
]
