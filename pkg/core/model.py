"""Tree traversal, the built-in defense catalog and structural validation."""

from __future__ import annotations

import re
from collections import Counter
from typing import Callable, Iterator, Optional

from loguru import logger

from config.constants import (
    E_BAD_ID,
    E_DUP_ID,
    E_EMPTY_GATE,
    E_UNKNOWN_DEFENSE,
    IDENT_PATTERN,
    IDS_DEFENSE_ID,
    NCAP,
    BUILTIN_CATALOG,
    W_IDS_AS_DEFENSE,
    W_NCAP,
)
from schemas.adtree import AdTree, AttackLeaf, Defense, DefenseCatalog, GateNode, Node
from schemas.diagnostic import Diagnostic, error, warning

logger = logger.bind(module="model")

_IDENT_RE = re.compile(IDENT_PATTERN)

ROOT_PATH = "root"


def builtin_catalog() -> DefenseCatalog:
    """Return the twelve-entry defense catalog ``d1`` ... ``d12`` in table order."""
    return DefenseCatalog(entries=tuple(Defense(id=i, description=d) for i, d in BUILTIN_CATALOG))


def is_identifier(text: str) -> bool:
    return _IDENT_RE.fullmatch(text) is not None


def walk(tree: AdTree) -> Iterator[tuple[str, Node]]:
    """Yield ``(path, node)`` pairs in pre-order, left to right.

    Paths are dotted child indices below ``root`` (``root``, ``root.0``,
    ``root.1.2``); they identify gates, which carry no id of their own.
    """

    def _visit(node: Node, path: str) -> Iterator[tuple[str, Node]]:
        yield path, node
        if isinstance(node, GateNode):
            for idx, child in enumerate(node.children):
                yield from _visit(child, f"{path}.{idx}")

    yield from _visit(tree.root, ROOT_PATH)


def leaves_of(tree: AdTree) -> list[AttackLeaf]:
    """Return every leaf in deterministic pre-order."""
    return [node for _, node in walk(tree) if isinstance(node, AttackLeaf)]


def find_leaf(tree: AdTree, leaf_id: str) -> Optional[AttackLeaf]:
    for _, node in walk(tree):
        if isinstance(node, AttackLeaf) and node.id == leaf_id:
            return node
    return None


def countermeasure_count(leaf: AttackLeaf, *, clamp: bool = True) -> int:
    """Number of distinct non-IDS countermeasures on ``leaf``.

    The IDS catalog entry is excluded because detection is scored through the
    tier. With ``clamp`` the count is capped at :data:`NCAP`.
    """
    n = len({d for d in leaf.countermeasures if d != IDS_DEFENSE_ID})
    return min(n, NCAP) if clamp else n


def map_leaves(tree: AdTree, fn: Callable[[AttackLeaf], AttackLeaf]) -> AdTree:
    """Return a new tree with every leaf replaced by ``fn(leaf)``."""

    def _rebuild(node: Node) -> Node:
        if isinstance(node, AttackLeaf):
            return fn(node)
        return node.model_copy(update={"children": tuple(_rebuild(c) for c in node.children)})

    return tree.model_copy(update={"root": _rebuild(tree.root)})


def _validate_catalog(catalog: DefenseCatalog) -> list[Diagnostic]:
    out: list[Diagnostic] = []
    seen: set[str] = set()
    for entry in catalog.entries:
        if not is_identifier(entry.id):
            out.append(error(E_BAD_ID, f"defense id {entry.id!r} is not an identifier"))
        if entry.id in seen:
            out.append(error(E_DUP_ID, f"defense {entry.id} declared more than once"))
        seen.add(entry.id)
    return out


def _validate_leaf(leaf: AttackLeaf, catalog: DefenseCatalog) -> list[Diagnostic]:
    out: list[Diagnostic] = []
    if not is_identifier(leaf.id):
        out.append(error(E_BAD_ID, f"leaf id {leaf.id!r} is not an identifier", node_id=leaf.id))
    counts = Counter(leaf.countermeasures)
    for defense_id, count in counts.items():
        if count > 1:
            out.append(
                error(
                    E_DUP_ID,
                    f"defense {defense_id} listed {count} times on leaf {leaf.id}",
                    node_id=leaf.id,
                )
            )
        if defense_id not in catalog:
            out.append(
                error(
                    E_UNKNOWN_DEFENSE,
                    f"leaf {leaf.id} references unknown defense {defense_id}",
                    node_id=leaf.id,
                )
            )
    if IDS_DEFENSE_ID in counts:
        out.append(
            warning(
                W_IDS_AS_DEFENSE,
                f"leaf {leaf.id} lists {IDS_DEFENSE_ID} as a countermeasure; "
                "use the ids tier instead",
                node_id=leaf.id,
            )
        )
    raw = countermeasure_count(leaf, clamp=False)
    if raw > NCAP:
        out.append(
            warning(
                W_NCAP,
                f"leaf {leaf.id} has {raw} countermeasures; scoring caps the count at {NCAP}",
                node_id=leaf.id,
            )
        )
    return out


def validate_tree(tree: AdTree) -> list[Diagnostic]:
    """Check the structural and reference invariants of ``tree``.

    Returns diagnostics rather than raising; the tree is never modified.
    """
    diagnostics = _validate_catalog(tree.catalog)
    seen_leaves: set[str] = set()
    for path, node in walk(tree):
        if isinstance(node, GateNode):
            if not node.children:
                diagnostics.append(
                    error(E_EMPTY_GATE, f"gate {node.label!r} at {path} has no children", node_id=path)
                )
            continue
        if node.id in seen_leaves:
            diagnostics.append(error(E_DUP_ID, f"duplicate leaf id {node.id}", node_id=node.id))
        seen_leaves.add(node.id)
        diagnostics.extend(_validate_leaf(node, tree.catalog))
    if diagnostics:
        logger.debug("Validation of {!r} produced {} diagnostics", tree.name, len(diagnostics))
    return diagnostics


__all__ = [
    "ROOT_PATH",
    "builtin_catalog",
    "is_identifier",
    "walk",
    "leaves_of",
    "find_leaf",
    "countermeasure_count",
    "map_leaves",
    "validate_tree",
]
