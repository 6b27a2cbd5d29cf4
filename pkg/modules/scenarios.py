"""Apply improvement scenarios and compare before/after evaluations."""

from __future__ import annotations

from loguru import logger

from config.constants import (
    E_ABSENT_REMOVE,
    E_DUP_ADD,
    E_UNKNOWN_DEFENSE,
    E_UNKNOWN_LEAF,
    W_ZERO_BASELINE,
)
from core.errors import InvalidTreeError, ScenarioError
from core.model import countermeasure_count, find_leaf, leaves_of, map_leaves, validate_tree
from core.scoring import evaluate
from schemas.adtree import AdTree, AttackLeaf
from schemas.diagnostic import Diagnostic, has_errors, warning
from schemas.document import AddDefense, Change, RemoveDefense, Scenario, SetIds
from schemas.report import AggregationSemantics, ComparisonReport, ComparisonRow, Improvement
from utils import logx

logger = logger.bind(module="scenarios")


def _apply_change(tree: AdTree, change: Change) -> AdTree:
    leaf = find_leaf(tree, change.leaf_id)
    if leaf is None:
        raise ScenarioError(f"unknown leaf {change.leaf_id}", code=E_UNKNOWN_LEAF)

    if isinstance(change, SetIds):
        updated = leaf.model_copy(update={"ids_tier": change.tier})
    else:
        if change.defense_id not in tree.catalog:
            raise ScenarioError(f"unknown defense {change.defense_id}", code=E_UNKNOWN_DEFENSE)
        present = change.defense_id in leaf.countermeasures
        if isinstance(change, AddDefense):
            if present:
                raise ScenarioError(
                    f"defense {change.defense_id} already on leaf {leaf.id}", code=E_DUP_ADD
                )
            cms = tree.catalog.sort_ids(leaf.countermeasures + (change.defense_id,))
        else:
            if not present:
                raise ScenarioError(
                    f"defense {change.defense_id} not on leaf {leaf.id}", code=E_ABSENT_REMOVE
                )
            cms = tuple(d for d in leaf.countermeasures if d != change.defense_id)
        updated = leaf.model_copy(update={"countermeasures": cms})

    def _swap(node: AttackLeaf) -> AttackLeaf:
        return updated if node.id == leaf.id else node

    return map_leaves(tree, _swap)


def apply_scenario(tree: AdTree, scenario: Scenario) -> AdTree:
    """Return a new tree with the changes of ``scenario`` applied in order.

    The input tree is never modified. Adding a defense already on the leaf
    or removing one that is not there is an error, not a no-op.

    Raises
    ------
    InvalidTreeError
        If ``tree`` has validation errors.
    ScenarioError
        With code ``E_UNKNOWN_LEAF``, ``E_UNKNOWN_DEFENSE``, ``E_DUP_ADD`` or
        ``E_ABSENT_REMOVE``.
    """
    diagnostics = validate_tree(tree)
    if has_errors(diagnostics):
        raise InvalidTreeError(
            f"tree {tree.name!r} has validation errors",
            diagnostics=[d for d in diagnostics if d.is_error],
        )
    result = tree
    for change in scenario.changes:
        result = _apply_change(result, change)
    logx.debug(
        "scenario_applied", tree=tree.name, scenario=scenario.name, changes=len(scenario.changes)
    )
    return result


def improvement_percent(before: float, after: float) -> Improvement:
    """Relative reduction from ``before`` to ``after`` in percent.

    Negative values mean the index got worse. A zero baseline yields ``0.0``
    flagged with ``W_ZERO_BASELINE``.
    """
    for name, value in (("before", before), ("after", after)):
        if not 0.0 <= value <= 1.0:
            raise ValueError(f"{name} must be within [0, 1], got {value}")
    if before == 0:
        return Improvement(percent=0.0, warning=W_ZERO_BASELINE)
    return Improvement(percent=100.0 * (before - after) / before)


def compare_scenarios(
    tree: AdTree,
    scenario: Scenario,
    semantics: AggregationSemantics = AggregationSemantics.worst,
) -> ComparisonReport:
    """Evaluate ``tree`` before and after ``scenario`` and join the results per leaf."""
    improved = apply_scenario(tree, scenario)
    ev_before = evaluate(tree, semantics)
    ev_after = evaluate(improved, semantics)
    after_scores = {s.leaf_id: s for s in ev_after.leaves}
    after_leaves = {leaf.id: leaf for leaf in leaves_of(improved)}

    rows: list[ComparisonRow] = []
    diagnostics: list[Diagnostic] = []
    for leaf, before in zip(leaves_of(tree), ev_before.leaves):
        after = after_scores[leaf.id]
        change = improvement_percent(before.nu, after.nu)
        warnings: tuple[str, ...] = ()
        if change.warning:
            warnings = (change.warning,)
            diagnostics.append(
                warning(
                    change.warning,
                    f"leaf {leaf.id} has a zero baseline; improvement reported as 0",
                    node_id=leaf.id,
                )
            )
        rows.append(
            ComparisonRow(
                leaf_id=leaf.id,
                label=leaf.label,
                n_before=before.n,
                n_after=countermeasure_count(after_leaves[leaf.id]),
                tier_before=leaf.ids_tier,
                tier_after=after_leaves[leaf.id].ids_tier,
                nu_before=before.nu,
                nu_after=after.nu,
                improvement_pct=change.percent,
                warnings=warnings,
            )
        )
    root_change = improvement_percent(ev_before.root, ev_after.root)
    logger.info(
        "Compared scenario {!r}: root {:.4f} -> {:.4f}",
        scenario.name,
        ev_before.root,
        ev_after.root,
    )
    return ComparisonReport(
        scenario=scenario.name,
        semantics=ev_before.semantics,
        rows=tuple(rows),
        root_before=ev_before.root,
        root_after=ev_after.root,
        root_improvement_pct=root_change.percent,
        diagnostics=tuple(diagnostics),
    )


__all__ = ["apply_scenario", "improvement_percent", "compare_scenarios"]
