"""Bundled ``.adt`` datasets, addressable as ``@name`` pseudo-paths."""

from __future__ import annotations

from pathlib import Path

from config.settings import get_settings
from core.errors import InputError

DATASET_DIR = Path(__file__).resolve().parent
DATASET_SUFFIX = ".adt"
ALIAS_PREFIX = "@"


def data_dir() -> Path:
    """Directory searched for ``@name`` datasets (``ADTREE_DATA_DIR`` overrides)."""
    return get_settings().data_dir or DATASET_DIR


def available() -> list[str]:
    return sorted(p.stem for p in data_dir().glob(f"*{DATASET_SUFFIX}"))


def resolve_source(source: str | Path) -> Path:
    """Map ``@name`` to the bundled dataset file; other paths pass through."""
    text = str(source)
    if not text.startswith(ALIAS_PREFIX):
        return Path(source)
    name = text[len(ALIAS_PREFIX) :]
    path = data_dir() / f"{name}{DATASET_SUFFIX}"
    if not path.is_file():
        known = ", ".join(ALIAS_PREFIX + n for n in available()) or "none"
        raise InputError(f"unknown dataset {text}; available: {known}")
    return path


__all__ = ["DATASET_DIR", "data_dir", "available", "resolve_source"]
