"""Leaf vulnerability scoring and gate aggregation.

A leaf's index combines two weights: ``alpha`` from how many countermeasures
protect it and ``beta`` from its intrusion detection tier. With ``n`` the
clamped countermeasure count and ``c = 1 - n/5``::

    alpha > 0:  nu = alpha * max(c, beta)
    alpha = 0:  nu = max(c, beta) / 3

Gates roll leaf indices up to the root under one of two semantics, see
:class:`~schemas.report.AggregationSemantics`.
"""

from __future__ import annotations

from math import prod
from typing import Iterable

from loguru import logger

from config.constants import ALPHA_WEIGHTS, BETA_WEIGHTS, COVERED_DIVISOR, NCAP
from core.errors import InvalidTreeError
from core.model import countermeasure_count, leaves_of, validate_tree, walk
from schemas.adtree import AdTree, AttackLeaf, GateKind, GateNode, IdsTier, Node
from schemas.diagnostic import has_errors
from schemas.report import AggregationSemantics, GateValue, LeafScore, TreeEvaluation
from utils import logx

logger = logger.bind(module="scoring")


def alpha_weight(n: int) -> float:
    """Return the coverage weight for a clamped countermeasure count ``n``.

    ``0`` maps to 1.0, one or two countermeasures to 0.5 and three or more
    to 0.0.
    """
    if not 0 <= n <= NCAP:
        raise ValueError(f"countermeasure count must be within 0..{NCAP}, got {n}")
    if n == 0:
        return ALPHA_WEIGHTS.undefended
    if n < ALPHA_WEIGHTS.covered_from:
        return ALPHA_WEIGHTS.partial
    return ALPHA_WEIGHTS.covered


def beta_weight(tier: IdsTier) -> float:
    """Return the detection weight of ``tier``."""
    return BETA_WEIGHTS[IdsTier(tier).value]


def leaf_vulnerability(n: int, tier: IdsTier) -> float:
    """Vulnerability index in ``[0, 1]`` for ``n`` countermeasures and ``tier``.

    ``n`` above the cap is clamped, so six countermeasures score like five.
    """
    if n < 0:
        raise ValueError(f"countermeasure count must be non-negative, got {n}")
    n = min(n, NCAP)
    alpha = alpha_weight(n)
    beta = beta_weight(tier)
    coverage = 1 - n / NCAP
    if alpha > 0:
        return alpha * max(coverage, beta)
    return max(coverage, beta) / COVERED_DIVISOR


def score_leaf(leaf: AttackLeaf) -> LeafScore:
    n = countermeasure_count(leaf)
    return LeafScore(
        leaf_id=leaf.id,
        label=leaf.label,
        n=n,
        alpha=alpha_weight(n),
        beta=beta_weight(leaf.ids_tier),
        nu=leaf_vulnerability(n, leaf.ids_tier),
    )


def aggregate(kind: GateKind, values: Iterable[float], semantics: AggregationSemantics) -> float:
    """Combine child ``values`` of a gate of ``kind``."""
    kind = GateKind(kind)
    vals = list(values)
    if not vals:
        raise ValueError("a gate needs at least one child value")
    if AggregationSemantics(semantics) is AggregationSemantics.worst:
        return max(vals) if kind is GateKind.or_ else min(vals)
    if kind is GateKind.or_:
        return 1.0 - prod(1.0 - v for v in vals)
    return prod(vals)


def evaluate(
    tree: AdTree, semantics: AggregationSemantics = AggregationSemantics.worst
) -> TreeEvaluation:
    """Score every leaf of ``tree`` and roll the values up through its gates.

    Raises
    ------
    InvalidTreeError
        If :func:`~core.model.validate_tree` reports errors.
    """
    semantics = AggregationSemantics(semantics)
    diagnostics = validate_tree(tree)
    if has_errors(diagnostics):
        raise InvalidTreeError(
            f"tree {tree.name!r} has validation errors",
            diagnostics=[d for d in diagnostics if d.is_error],
        )

    scores = {leaf.id: score_leaf(leaf) for leaf in leaves_of(tree)}
    gate_values: dict[str, float] = {}

    def _value(node: Node, path: str) -> float:
        if isinstance(node, AttackLeaf):
            return scores[node.id].nu
        child_values = [_value(c, f"{path}.{i}") for i, c in enumerate(node.children)]
        value = aggregate(node.kind, child_values, semantics)
        gate_values[path] = value
        return value

    root = _value(tree.root, "root")
    gates = tuple(
        GateValue(path=path, label=node.label, kind=node.kind, value=gate_values[path])
        for path, node in walk(tree)
        if isinstance(node, GateNode)
    )
    logx.debug(
        "tree_evaluated",
        tree=tree.name,
        leaves=len(scores),
        root=root,
        semantics=semantics,
    )
    return TreeEvaluation(
        leaves=tuple(scores[leaf.id] for leaf in leaves_of(tree)),
        gates=gates,
        root=root,
        semantics=semantics,
    )


__all__ = [
    "alpha_weight",
    "beta_weight",
    "leaf_vulnerability",
    "score_leaf",
    "aggregate",
    "evaluate",
]
