"""Pydantic models shared across the adtree packages."""

from .adtree import (
    AdTree,
    AttackLeaf,
    Defense,
    DefenseCatalog,
    GateKind,
    GateNode,
    IdsTier,
    Mode,
    Node,
    Origin,
)
from .diagnostic import Diagnostic, Severity, SourceSpan
from .document import AddDefense, Change, Document, RemoveDefense, Scenario, SetIds
from .report import (
    Action,
    ActionKind,
    AggregationSemantics,
    ComparisonReport,
    ComparisonRow,
    GateValue,
    Improvement,
    LeafScore,
    Objective,
    OutputFormat,
    RenderOptions,
    TreeEvaluation,
)

__all__ = [
    "AdTree",
    "AttackLeaf",
    "Defense",
    "DefenseCatalog",
    "GateKind",
    "GateNode",
    "IdsTier",
    "Mode",
    "Node",
    "Origin",
    "Diagnostic",
    "Severity",
    "SourceSpan",
    "AddDefense",
    "Change",
    "Document",
    "RemoveDefense",
    "Scenario",
    "SetIds",
    "Action",
    "ActionKind",
    "AggregationSemantics",
    "ComparisonReport",
    "ComparisonRow",
    "GateValue",
    "Improvement",
    "LeafScore",
    "Objective",
    "OutputFormat",
    "RenderOptions",
    "TreeEvaluation",
]
