"""Environment-driven settings for the adtree tools."""

from __future__ import annotations

from functools import lru_cache
from pathlib import Path
from typing import Literal, Optional

from loguru import logger
from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class AdtreeSettings(BaseSettings):
    """Pydantic settings read from ``ADTREE_*`` environment variables."""

    model_config = SettingsConfigDict(env_prefix="ADTREE_", extra="ignore")

    log_level: str = "WARNING"
    log_json: bool = False
    log_file: Optional[Path] = None
    log_rotation: str = "10 MB"
    log_retention: str = "7 days"

    precision: int = Field(default=4, ge=0, le=9)
    pct_precision: int = Field(default=2, ge=0, le=9)
    chart_width: int = Field(default=800, gt=0)
    chart_height: int = Field(default=400, gt=0)
    semantics: Literal["worst", "prob"] = "worst"

    # Overrides the directory holding bundled ``.adt`` datasets.
    data_dir: Optional[Path] = None


@lru_cache(maxsize=1)
def get_settings() -> AdtreeSettings:
    """Return a shared :class:`AdtreeSettings` instance."""

    settings = AdtreeSettings()
    logger.debug("Loaded settings: {}", settings.model_dump(mode="json"))
    return settings


def reset_settings() -> None:
    """Drop the cached settings so the next call re-reads the environment."""

    get_settings.cache_clear()


__all__ = ["AdtreeSettings", "get_settings", "reset_settings"]
