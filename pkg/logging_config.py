"""Central Loguru configuration for the adtree command line."""

from __future__ import annotations

import shutil
import sys
import threading
from pathlib import Path
from typing import Optional

from loguru import logger

from config.settings import AdtreeSettings, get_settings

# Bytes required to enable file logging (default 50 MB)
MIN_FREE_SPACE = 50 * 1024 * 1024

TEXT_FORMAT = "<level>{level: <8}</level> {extra[module]}: {message}"

_lock = threading.Lock()
_sink_ids: list[int] = []


def _add_file_sink(path: Path, settings: AdtreeSettings, level: str, serialize: bool) -> Optional[int]:
    path.parent.mkdir(parents=True, exist_ok=True)
    free_space = shutil.disk_usage(path.parent).free
    if free_space < MIN_FREE_SPACE:
        logger.warning(
            "Insufficient disk space for {}; skipping file logging ({:.2f} MB free)",
            path,
            free_space / (1024 * 1024),
        )
        return None
    return logger.add(
        path,
        rotation=settings.log_rotation,
        retention=settings.log_retention,
        level=level,
        serialize=serialize,
    )


def configure_logging(
    level: Optional[str] = None,
    json_output: Optional[bool] = None,
    settings: Optional[AdtreeSettings] = None,
) -> None:
    """Install Loguru sinks; stdout is left to command output.

    Explicit arguments win over ``ADTREE_LOG_*`` settings. Calling this again
    replaces the sinks installed by the previous call.
    """
    global _sink_ids
    with _lock:
        # loguru's default DEBUG handler must not see the settings load
        try:
            logger.remove(0)
        except ValueError:
            pass
    settings = settings or get_settings()
    level = (level or settings.log_level).upper()
    serialize = settings.log_json if json_output is None else json_output

    with _lock:
        for sink_id in _sink_ids:
            try:
                logger.remove(sink_id)
            except ValueError:
                continue
        logger.configure(extra={"module": "adtree"})
        if serialize:
            _sink_ids = [logger.add(sys.stderr, level=level, serialize=True)]
        else:
            _sink_ids = [logger.add(sys.stderr, level=level, format=TEXT_FORMAT, colorize=False)]

    if settings.log_file is None:
        return
    sink_id = _add_file_sink(Path(settings.log_file), settings, level, serialize)
    if sink_id is not None:
        with _lock:
            _sink_ids.append(sink_id)


def set_log_level(level: str) -> None:
    """Update logger level at runtime."""
    configure_logging(level=level)


__all__ = ["configure_logging", "set_log_level", "MIN_FREE_SPACE"]
