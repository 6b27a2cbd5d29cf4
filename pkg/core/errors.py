"""Exception types raised by adtree operations and their CLI exit codes."""

from __future__ import annotations

from typing import Iterable, Optional

from loguru import logger

from config.constants import (
    E_EMPTY_REPORT,
    E_INVALID_TREE,
    E_IO,
    E_SYNTAX,
    E_UNKNOWN_SCENARIO,
)
from schemas.diagnostic import Diagnostic

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_IO = 2


class AdtreeError(Exception):
    """Base error carrying a machine ``code`` and optional diagnostics."""

    code = "E_ADTREE"

    def __init__(
        self,
        message: str = "",
        *,
        code: Optional[str] = None,
        diagnostics: Iterable[Diagnostic] = (),
    ) -> None:
        super().__init__(message or self.code)
        if code is not None:
            self.code = code
        self.diagnostics: list[Diagnostic] = list(diagnostics)


class InvalidTreeError(AdtreeError):
    """Raised when a tree with validation errors is evaluated."""

    code = E_INVALID_TREE


class ScenarioError(AdtreeError):
    """Raised when a scenario change cannot be applied."""


class UnknownScenarioError(AdtreeError):
    code = E_UNKNOWN_SCENARIO


class EmptyReportError(AdtreeError):
    code = E_EMPTY_REPORT


class DocumentError(AdtreeError):
    """Raised when a document fails to parse or validate."""

    code = E_SYNTAX


class InputError(AdtreeError):
    """Raised when a document cannot be read or output cannot be written."""

    code = E_IO


def to_exit_code(exc: BaseException) -> int:
    """Convert an exception into a CLI exit code.

    Parameters
    ----------
    exc: BaseException
        The exception to convert.

    Returns
    -------
    int
        ``2`` for I/O problems, ``1`` for every other failure.
    """
    if isinstance(exc, InputError):
        return EXIT_IO
    if isinstance(exc, AdtreeError):
        return EXIT_DOMAIN
    logger.opt(exception=exc).error("Unexpected failure: {}", exc)
    return EXIT_DOMAIN


__all__ = [
    "EXIT_OK",
    "EXIT_DOMAIN",
    "EXIT_IO",
    "AdtreeError",
    "InvalidTreeError",
    "ScenarioError",
    "UnknownScenarioError",
    "EmptyReportError",
    "DocumentError",
    "InputError",
    "to_exit_code",
]
