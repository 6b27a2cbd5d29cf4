"""Scoring constants, the built-in defense catalog and diagnostic codes."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class AlphaWeights:
    """Countermeasure-coverage weights, one per coverage condition."""

    undefended: float = 1.00
    partial: float = 0.50
    covered: float = 0.00
    # Count from which a leaf is considered covered.
    covered_from: int = 3


ALPHA_WEIGHTS = AlphaWeights()

# Printed decimals, not exact thirds.
BETA_WEIGHTS: dict[str, float] = {
    "absent": 1.00,
    "minimal": 0.67,
    "standard": 0.33,
    "enhanced": 0.00,
}

# Ceiling of the countermeasure count in the vulnerability formula.
NCAP = 5

# Divisor applied when a leaf is covered by three or more countermeasures.
COVERED_DIVISOR = 3

# Catalog id of the intrusion detection entry; IDS is scored through the tier.
IDS_DEFENSE_ID = "d2"

IDENT_PATTERN = r"[A-Za-z][A-Za-z0-9_]*"

FLOAT_TOLERANCE = 1e-12

BUILTIN_CATALOG: tuple[tuple[str, str], ...] = (
    ("d1", "Cryptographic solutions"),
    ("d2", "Intrusion detection systems"),
    ("d3", "Access-control gateway"),
    ("d4", "Secure boot and code verification"),
    ("d5", "Hardware-based protection"),
    ("d6", "Secure software stack"),
    ("d7", "CVE scanning"),
    ("d8", "Actuator command plausibility checks"),
    ("d9", "Anti-malware software"),
    ("d10", "Input sanitization"),
    ("d11", "Redundant inference"),
    ("d12", "Public key infrastructure"),
)

# Diagnostic codes --------------------------------------------------------

E_SYNTAX = "E_SYNTAX"
E_DUP_ID = "E_DUP_ID"
E_UNKNOWN_DEFENSE = "E_UNKNOWN_DEFENSE"
E_UNKNOWN_LEAF = "E_UNKNOWN_LEAF"
E_BAD_TIER = "E_BAD_TIER"
E_BAD_ID = "E_BAD_ID"
E_EMPTY_GATE = "E_EMPTY_GATE"
E_INVALID_TREE = "E_INVALID_TREE"
E_DUP_ADD = "E_DUP_ADD"
E_ABSENT_REMOVE = "E_ABSENT_REMOVE"
E_UNKNOWN_SCENARIO = "E_UNKNOWN_SCENARIO"
E_EMPTY_REPORT = "E_EMPTY_REPORT"
E_BAD_BUDGET = "E_BAD_BUDGET"
E_IO = "E_IO"
W_NCAP = "W_NCAP"
W_IDS_AS_DEFENSE = "W_IDS_AS_DEFENSE"
W_ZERO_BASELINE = "W_ZERO_BASELINE"
