from __future__ import annotations

"""Pydantic models for evaluation results, comparisons and recommendations."""

from enum import Enum
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field

from .adtree import GateKind, IdsTier
from .diagnostic import Diagnostic


class AggregationSemantics(str, Enum):
    """How gate values are derived from their children."""

    worst = "worst"  # OR = max, AND = min
    prob = "prob"  # OR = 1 - prod(1 - v), AND = prod(v)


class Objective(str, Enum):
    """Quantity the recommender tries to reduce."""

    max = "max"
    sum = "sum"
    root = "root"


class OutputFormat(str, Enum):
    table = "table"
    csv = "csv"
    json = "json"
    svg = "svg"


class LeafScore(BaseModel):
    """Computed weights and vulnerability index for one leaf."""

    model_config = ConfigDict(frozen=True)

    leaf_id: str
    label: str = ""
    n: int = Field(ge=0, le=5)
    alpha: float
    beta: float
    nu: float = Field(ge=0.0, le=1.0)


class GateValue(BaseModel):
    """Aggregated value of one gate, addressed by its tree path."""

    model_config = ConfigDict(frozen=True)

    path: str
    label: str
    kind: GateKind
    value: float


class TreeEvaluation(BaseModel):
    model_config = ConfigDict(frozen=True)

    leaves: tuple[LeafScore, ...]
    gates: tuple[GateValue, ...]
    root: float
    semantics: AggregationSemantics


class Improvement(BaseModel):
    """Relative improvement between two indices; ``warning`` set on a zero baseline."""

    model_config = ConfigDict(frozen=True)

    percent: float
    warning: Optional[str] = None


class ComparisonRow(BaseModel):
    model_config = ConfigDict(frozen=True)

    leaf_id: str
    label: str = ""
    n_before: int
    n_after: int
    tier_before: IdsTier
    tier_after: IdsTier
    nu_before: float
    nu_after: float
    improvement_pct: float
    warnings: tuple[str, ...] = ()


class ComparisonReport(BaseModel):
    """Per-leaf before/after indices for one scenario."""

    model_config = ConfigDict(frozen=True)

    scenario: str
    semantics: AggregationSemantics
    rows: tuple[ComparisonRow, ...]
    root_before: float
    root_after: float
    root_improvement_pct: float
    diagnostics: tuple[Diagnostic, ...] = ()


class ActionKind(str, Enum):
    add_defense = "add-defense"
    upgrade_ids = "upgrade-ids"


class Action(BaseModel):
    """One recommended change and the objective delta it achieved."""

    model_config = ConfigDict(frozen=True)

    leaf_id: str
    kind: ActionKind
    defense_id: Optional[str] = None
    tier: Optional[IdsTier] = None
    delta: float = Field(le=0.0)
    objective_after: float

    @property
    def target(self) -> str:
        if self.kind is ActionKind.add_defense:
            return self.defense_id or ""
        return self.tier.value if self.tier else ""


class RenderOptions(BaseModel):
    model_config = ConfigDict(frozen=True)

    format: OutputFormat = OutputFormat.table
    precision: int = Field(default=4, ge=0, le=9)
    pct_precision: int = Field(default=2, ge=0, le=9)
    width: int = Field(default=800, gt=0)
    height: int = Field(default=400, gt=0)


__all__ = [
    "AggregationSemantics",
    "Objective",
    "OutputFormat",
    "LeafScore",
    "GateValue",
    "TreeEvaluation",
    "Improvement",
    "ComparisonRow",
    "ComparisonReport",
    "ActionKind",
    "Action",
    "RenderOptions",
]
