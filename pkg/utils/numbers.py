"""Number formatting helpers for reports."""

from __future__ import annotations

from decimal import ROUND_HALF_UP, Decimal


def format_half_up(value: float, places: int) -> str:
    """Format ``value`` with ``places`` decimals, rounding halves away from zero.

    Rounding works on the shortest decimal representation of the float, so
    ``0.335`` at two places gives ``0.34`` rather than the binary ``0.33``.
    """
    if places < 0:
        raise ValueError("places must be non-negative")
    quantum = Decimal(1).scaleb(-places)
    text = format(Decimal(repr(float(value))).quantize(quantum, rounding=ROUND_HALF_UP), "f")
    if text.startswith("-") and Decimal(text) == 0:
        text = text[1:]
    return text


def round_half_up(value: float, places: int) -> float:
    return float(format_half_up(value, places))


__all__ = ["format_half_up", "round_half_up"]
