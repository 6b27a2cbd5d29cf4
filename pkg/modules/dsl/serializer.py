"""Canonical text form of ``.adt`` documents."""

from __future__ import annotations

from schemas.adtree import AttackLeaf, DefenseCatalog, Node
from schemas.document import AddDefense, Change, Document, RemoveDefense, SetIds

INDENT = "  "


def quote(text: str) -> str:
    """Return ``text`` as a double-quoted DSL string."""
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _leaf_lines(leaf: AttackLeaf, catalog: DefenseCatalog, depth: int) -> list[str]:
    pad = INDENT * depth
    inner = INDENT * (depth + 1)
    defenses = ", ".join(catalog.sort_ids(leaf.countermeasures))
    lines = [
        f"{pad}leaf {leaf.id} {quote(leaf.label)} {{",
        f"{inner}defenses: [{defenses}]",
        f"{inner}ids: {leaf.ids_tier.value}",
    ]
    if leaf.origin is not None:
        lines.append(f"{inner}origin: {leaf.origin.value}")
    if leaf.mode is not None:
        lines.append(f"{inner}mode: {leaf.mode.value}")
    lines.append(f"{pad}}}")
    return lines


def _node_lines(node: Node, catalog: DefenseCatalog, depth: int) -> list[str]:
    if isinstance(node, AttackLeaf):
        return _leaf_lines(node, catalog, depth)
    pad = INDENT * depth
    lines = [f"{pad}{node.kind.value} {quote(node.label)} {{"]
    for child in node.children:
        lines.extend(_node_lines(child, catalog, depth + 1))
    lines.append(f"{pad}}}")
    return lines


def _change_line(change: Change) -> str:
    if isinstance(change, AddDefense):
        return f"{INDENT}add {change.defense_id} to {change.leaf_id}"
    if isinstance(change, RemoveDefense):
        return f"{INDENT}remove {change.defense_id} from {change.leaf_id}"
    if isinstance(change, SetIds):
        return f"{INDENT}set-ids {change.leaf_id} {change.tier.value}"
    raise TypeError(f"unsupported change {change!r}")


def serialize_document(doc: Document) -> str:
    """Render ``doc`` in canonical form.

    Two-space indentation, one construct per line, leaf defenses in catalog
    order and scenarios in document order. Output always ends with a newline
    and uses LF line endings.
    """
    lines: list[str] = [f"defense {d.id} {quote(d.description)}" for d in doc.catalog.entries]
    if lines:
        lines.append("")
    lines.append(f"tree {quote(doc.tree.name)} {{")
    lines.extend(_node_lines(doc.tree.root, doc.catalog, 1))
    lines.append("}")
    for scenario in doc.scenarios:
        lines.append("")
        lines.append(f"scenario {quote(scenario.name)} {{")
        lines.extend(_change_line(c) for c in scenario.changes)
        lines.append("}")
    return "\n".join(lines) + "\n"


__all__ = ["serialize_document", "quote"]
