"""Text format for attack-defense trees, catalogs and scenarios."""

from __future__ import annotations

from pathlib import Path

from loguru import logger

from core.errors import DocumentError, InputError
from modules.datasets import resolve_source
from schemas.document import Document

from .parser import ParseResult, parse_document
from .serializer import serialize_document

logger = logger.bind(module="dsl")


def read_source(source: str | Path) -> str:
    """Read document text from a path or ``@dataset`` alias.

    Raises
    ------
    InputError
        If the file is missing, unreadable or not UTF-8.
    """
    path = resolve_source(source)
    try:
        return path.read_text(encoding="utf-8-sig")
    except (OSError, UnicodeDecodeError) as exc:
        raise InputError(f"cannot read {source}: {exc}") from exc


def load_source(source: str | Path) -> ParseResult:
    return parse_document(read_source(source), source=str(source))


def load_document(source: str | Path) -> Document:
    """Read and parse ``source``, raising :class:`DocumentError` on error diagnostics."""
    result = load_source(source)
    for diag in result.warnings:
        logger.warning("{}: {}", source, diag.format())
    if not result.ok or result.document is None:
        raise DocumentError(f"{source} is not a valid document", diagnostics=result.diagnostics)
    return result.document


__all__ = [
    "ParseResult",
    "parse_document",
    "serialize_document",
    "read_source",
    "load_source",
    "load_document",
]
