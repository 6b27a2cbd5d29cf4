from __future__ import annotations

"""Pydantic models for attack-defense trees and defense catalogs."""

from enum import Enum
from typing import Annotated, Any, Iterable, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, model_validator


class IdsTier(str, Enum):
    """Intrusion detection capability of a leaf, in increasing order."""

    absent = "absent"
    minimal = "minimal"
    standard = "standard"
    enhanced = "enhanced"

    @property
    def rank(self) -> int:
        return _TIER_ORDER.index(self)

    def upgraded(self) -> Optional["IdsTier"]:
        """Return the next more capable tier, or ``None`` at the top."""
        idx = self.rank + 1
        return _TIER_ORDER[idx] if idx < len(_TIER_ORDER) else None


_TIER_ORDER = (IdsTier.absent, IdsTier.minimal, IdsTier.standard, IdsTier.enhanced)


class GateKind(str, Enum):
    """Logical operator of a gate."""

    and_ = "and"
    or_ = "or"


class Origin(str, Enum):
    """Where the adversary of a leaf operates from."""

    external = "external"
    internal = "internal"


class Mode(str, Enum):
    """Whether the attack step observes or alters traffic."""

    passive = "passive"
    active = "active"


class Defense(BaseModel):
    """A single countermeasure in a catalog."""

    model_config = ConfigDict(frozen=True)

    id: str
    description: str = ""


class DefenseCatalog(BaseModel):
    """Ordered collection of defenses; order drives canonical output."""

    model_config = ConfigDict(frozen=True)

    entries: tuple[Defense, ...] = ()

    def __len__(self) -> int:
        return len(self.entries)

    def __contains__(self, defense_id: object) -> bool:
        return any(d.id == defense_id for d in self.entries)

    def ids(self) -> list[str]:
        return [d.id for d in self.entries]

    def get(self, defense_id: str) -> Optional[Defense]:
        for entry in self.entries:
            if entry.id == defense_id:
                return entry
        return None

    def index_of(self, defense_id: str) -> int:
        """Return the catalog position of ``defense_id`` (``len`` when unknown)."""
        for idx, entry in enumerate(self.entries):
            if entry.id == defense_id:
                return idx
        return len(self.entries)

    def sort_ids(self, defense_ids: Iterable[str]) -> tuple[str, ...]:
        """Order ``defense_ids`` by catalog position; unknown ids go last, by name."""
        return tuple(sorted(defense_ids, key=lambda d: (self.index_of(d), d)))

    def extend(self, entries: Iterable[Defense]) -> "DefenseCatalog":
        """Return a new catalog with ``entries`` appended."""
        added = list(entries)
        seen = set(self.ids())
        for entry in added:
            if entry.id in seen:
                raise ValueError(f"duplicate defense id {entry.id!r}")
            seen.add(entry.id)
        return DefenseCatalog(entries=self.entries + tuple(added))


class AttackLeaf(BaseModel):
    """One attack step with its countermeasures and IDS tier."""

    model_config = ConfigDict(frozen=True)

    type: Literal["leaf"] = "leaf"
    id: str
    label: str = ""
    countermeasures: tuple[str, ...] = ()
    ids_tier: IdsTier = IdsTier.absent
    origin: Optional[Origin] = None
    mode: Optional[Mode] = None


class GateNode(BaseModel):
    """AND/OR gate over an ordered list of child nodes."""

    model_config = ConfigDict(frozen=True)

    type: Literal["gate"] = "gate"
    kind: GateKind
    label: str = ""
    children: tuple["Node", ...] = ()


Node = Annotated[Union[AttackLeaf, GateNode], Field(discriminator="type")]

GateNode.model_rebuild()


class AdTree(BaseModel):
    """Named attack-defense tree with the catalog its leaves refer to."""

    model_config = ConfigDict(frozen=True)

    name: str
    catalog: DefenseCatalog
    root: Node

    @model_validator(mode="wrap")
    @classmethod
    def _catalog_order(cls, data: Any, handler) -> "AdTree":
        """Leaf countermeasures are stored in catalog order."""
        tree = handler(data)
        root = _in_catalog_order(tree.root, tree.catalog)
        return tree if root is tree.root else tree.model_copy(update={"root": root})


def _in_catalog_order(node: Node, catalog: DefenseCatalog) -> Node:
    if isinstance(node, AttackLeaf):
        ordered = catalog.sort_ids(node.countermeasures)
        if ordered == node.countermeasures:
            return node
        return node.model_copy(update={"countermeasures": ordered})
    children = tuple(_in_catalog_order(child, catalog) for child in node.children)
    if all(new is old for new, old in zip(children, node.children)):
        return node
    return node.model_copy(update={"children": children})


__all__ = [
    "IdsTier",
    "GateKind",
    "Origin",
    "Mode",
    "Defense",
    "DefenseCatalog",
    "AttackLeaf",
    "GateNode",
    "Node",
    "AdTree",
]
