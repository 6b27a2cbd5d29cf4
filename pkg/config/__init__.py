"""Unified configuration package."""

from .constants import (
    ALPHA_WEIGHTS,
    BETA_WEIGHTS,
    COVERED_DIVISOR,
    FLOAT_TOLERANCE,
    IDENT_PATTERN,
    IDS_DEFENSE_ID,
    NCAP,
    BUILTIN_CATALOG,
)
from .settings import AdtreeSettings, get_settings, reset_settings

__all__ = [
    "AdtreeSettings",
    "get_settings",
    "reset_settings",
    # re-exported constants
    "ALPHA_WEIGHTS",
    "BETA_WEIGHTS",
    "COVERED_DIVISOR",
    "FLOAT_TOLERANCE",
    "IDENT_PATTERN",
    "IDS_DEFENSE_ID",
    "NCAP",
    "BUILTIN_CATALOG",
]
