"""Greedy ranking of defense additions and IDS upgrades."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from loguru import logger

from config.constants import FLOAT_TOLERANCE, IDS_DEFENSE_ID, NCAP
from core.model import countermeasure_count, leaves_of
from core.scoring import evaluate
from modules.scenarios import apply_scenario
from schemas.adtree import AdTree
from schemas.document import AddDefense, Change, Scenario, SetIds
from schemas.report import Action, ActionKind, AggregationSemantics, Objective
from utils import logx

logger = logger.bind(module="recommender")

# Deltas are compared after rounding so float noise cannot break ties.
_DELTA_DIGITS = 12


@dataclass(frozen=True)
class _Candidate:
    change: Change
    tree: AdTree
    value: float
    delta: float

    @property
    def sort_key(self) -> tuple:
        # Largest reduction first, then leaf id, adds before upgrades, defense id.
        is_add = isinstance(self.change, AddDefense)
        return (
            round(self.delta, _DELTA_DIGITS),
            self.change.leaf_id,
            0 if is_add else 1,
            self.change.defense_id if is_add else "",
        )


def objective_value(tree: AdTree, objective: Objective, semantics: AggregationSemantics) -> float:
    """Value of ``objective`` on ``tree``: worst leaf, leaf sum or root value."""
    ev = evaluate(tree, semantics)
    objective = Objective(objective)
    if objective is Objective.max:
        return max(s.nu for s in ev.leaves)
    if objective is Objective.sum:
        return sum(s.nu for s in ev.leaves)
    return ev.root


def candidate_changes(tree: AdTree) -> Iterator[Change]:
    """Every single-step improvement available on ``tree``.

    A leaf below the countermeasure cap may receive any catalog defense it
    lacks (the IDS entry excepted); any leaf below ``enhanced`` may move up
    one IDS tier.
    """
    catalog_ids = tree.catalog.ids()
    for leaf in leaves_of(tree):
        if countermeasure_count(leaf) < NCAP:
            for defense_id in catalog_ids:
                if defense_id == IDS_DEFENSE_ID or defense_id in leaf.countermeasures:
                    continue
                yield AddDefense(leaf_id=leaf.id, defense_id=defense_id)
        upgraded = leaf.ids_tier.upgraded()
        if upgraded is not None:
            yield SetIds(leaf_id=leaf.id, tier=upgraded)


def _best_candidate(
    tree: AdTree, current: float, objective: Objective, semantics: AggregationSemantics
) -> _Candidate | None:
    best: _Candidate | None = None
    for change in candidate_changes(tree):
        new_tree = apply_scenario(tree, Scenario(name="candidate", changes=(change,)))
        value = objective_value(new_tree, objective, semantics)
        cand = _Candidate(change=change, tree=new_tree, value=value, delta=value - current)
        if best is None or cand.sort_key < best.sort_key:
            best = cand
    return best


def recommend_defenses(
    tree: AdTree,
    budget: int,
    objective: Objective = Objective.sum,
    semantics: AggregationSemantics = AggregationSemantics.worst,
) -> list[Action]:
    """Pick up to ``budget`` actions greedily, largest objective reduction first.

    Stops early once no candidate lowers the objective. Ties go to the
    smaller leaf id, then defense additions before IDS upgrades, then the
    smaller defense id (all compared as strings).
    """
    if budget < 1:
        raise ValueError(f"budget must be a positive integer, got {budget}")
    objective = Objective(objective)
    semantics = AggregationSemantics(semantics)
    current_tree = tree
    current = objective_value(tree, objective, semantics)
    actions: list[Action] = []
    for step in range(1, budget + 1):
        best = _best_candidate(current_tree, current, objective, semantics)
        if best is None or best.delta >= -FLOAT_TOLERANCE:
            logger.debug("No improving action left after {} steps", step - 1)
            break
        change = best.change
        if isinstance(change, AddDefense):
            action = Action(
                leaf_id=change.leaf_id,
                kind=ActionKind.add_defense,
                defense_id=change.defense_id,
                delta=best.delta,
                objective_after=best.value,
            )
        else:
            action = Action(
                leaf_id=change.leaf_id,
                kind=ActionKind.upgrade_ids,
                tier=change.tier,
                delta=best.delta,
                objective_after=best.value,
            )
        logx.debug(
            "recommendation_step",
            step=step,
            leaf_id=action.leaf_id,
            kind=action.kind,
            delta=action.delta,
        )
        actions.append(action)
        current_tree, current = best.tree, best.value
    return actions


def apply_actions(tree: AdTree, actions: list[Action]) -> AdTree:
    """Replay recommended ``actions`` on ``tree``."""
    changes: list[Change] = []
    for action in actions:
        if action.kind is ActionKind.add_defense:
            changes.append(AddDefense(leaf_id=action.leaf_id, defense_id=action.defense_id or ""))
        else:
            changes.append(SetIds(leaf_id=action.leaf_id, tier=action.tier))
    return apply_scenario(tree, Scenario(name="recommended", changes=tuple(changes)))


__all__ = [
    "objective_value",
    "candidate_changes",
    "recommend_defenses",
    "apply_actions",
]
