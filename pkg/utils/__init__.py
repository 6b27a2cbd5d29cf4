"""Utility package initialization and public exports."""

from .numbers import format_half_up

__all__ = ["format_half_up"]
