"""Structured event logging on top of :mod:`loguru`.

Every helper emits one JSON object per event. Field values are coerced to
JSON-friendly forms first, so callers can pass enums, paths and pydantic
models straight through.
"""

from __future__ import annotations

import json
import time
from contextlib import contextmanager
from enum import Enum
from pathlib import Path
from typing import Any, Dict, Iterator

from loguru import logger
from pydantic import BaseModel

# fields every known event must carry
_REQUIRED: dict[str, list[str]] = {
    "document_parsed": ["source", "leaves", "scenarios", "errors", "warnings"],
    "tree_evaluated": ["tree", "leaves", "root", "semantics"],
    "scenario_applied": ["tree", "scenario", "changes"],
    "recommendation_step": ["step", "leaf_id", "kind", "delta"],
    "command_finished": ["command", "elapsed_ms"],
}


def _validate(event: str, fields: Dict[str, Any]) -> None:
    required = _REQUIRED.get(event)
    if not required:
        return
    missing = [k for k in required if k not in fields]
    if missing:
        raise KeyError(f"missing fields for {event}: {', '.join(missing)}")


def _jsonable(value: Any) -> Any:
    if isinstance(value, BaseModel):
        return value.model_dump(mode="json")
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, Path):
        return str(value)
    if isinstance(value, (set, frozenset)):
        return sorted(_jsonable(v) for v in value)
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value


def _log(level: str, event: str, depth: int = 2, **fields: Any) -> None:
    _validate(event, fields)
    payload: Dict[str, Any] = {"event": event}
    payload.update({key: _jsonable(value) for key, value in fields.items()})
    logger.opt(depth=depth).log(level.upper(), json.dumps(payload, default=str))


def event(event: str, **fields: Any) -> None:
    """Log an informational *event* with structured *fields*."""

    _log("info", event, **fields)


def warn(event: str, **fields: Any) -> None:
    _log("warning", event, **fields)


def error(event: str, **fields: Any) -> None:
    _log("error", event, **fields)


def debug(event: str, **fields: Any) -> None:
    _log("debug", event, **fields)


@contextmanager
def timed(event: str, level: str = "debug", **fields: Any) -> Iterator[Dict[str, Any]]:
    """Log *event* with ``elapsed_ms`` once the block exits.

    The yielded dict can be filled inside the block; its entries are added to
    the payload. The event is logged even when the block raises.
    """

    extra: Dict[str, Any] = {}
    start = time.perf_counter()
    try:
        yield extra
    finally:
        elapsed = round((time.perf_counter() - start) * 1000.0, 3)
        _log(level, event, depth=3, elapsed_ms=elapsed, **fields, **extra)


__all__ = [
    "event",
    "warn",
    "error",
    "debug",
    "timed",
]
