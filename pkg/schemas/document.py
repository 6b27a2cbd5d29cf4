from __future__ import annotations

"""Pydantic models for improvement scenarios and ``.adt`` documents."""

from typing import Annotated, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, model_validator

from .adtree import AdTree, DefenseCatalog, IdsTier


class AddDefense(BaseModel):
    """Attach ``defense_id`` to leaf ``leaf_id``."""

    model_config = ConfigDict(frozen=True)

    op: Literal["add"] = "add"
    leaf_id: str
    defense_id: str


class RemoveDefense(BaseModel):
    """Detach ``defense_id`` from leaf ``leaf_id``."""

    model_config = ConfigDict(frozen=True)

    op: Literal["remove"] = "remove"
    leaf_id: str
    defense_id: str


class SetIds(BaseModel):
    """Set the IDS tier of leaf ``leaf_id``."""

    model_config = ConfigDict(frozen=True)

    op: Literal["set-ids"] = "set-ids"
    leaf_id: str
    tier: IdsTier


Change = Annotated[Union[AddDefense, RemoveDefense, SetIds], Field(discriminator="op")]


class Scenario(BaseModel):
    """Ordered list of defense and IDS changes applied to a tree."""

    model_config = ConfigDict(frozen=True)

    name: str
    changes: tuple[Change, ...] = ()


class Document(BaseModel):
    """Parsed ``.adt`` document: catalog, tree and named scenarios."""

    model_config = ConfigDict(frozen=True)

    catalog: DefenseCatalog
    tree: AdTree
    scenarios: tuple[Scenario, ...] = ()

    @model_validator(mode="after")
    def _check_catalog(self) -> "Document":
        if self.tree.catalog != self.catalog:
            raise ValueError("tree catalog must be the document catalog")
        return self

    def scenario(self, name: str) -> Optional[Scenario]:
        for sc in self.scenarios:
            if sc.name == name:
                return sc
        return None


__all__ = [
    "AddDefense",
    "RemoveDefense",
    "SetIds",
    "Change",
    "Scenario",
    "Document",
]
