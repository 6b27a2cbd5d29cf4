"""Shared pytest fixtures for adtree testing."""

# ruff: noqa: E402

import os
import sys
from pathlib import Path

import pytest

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT))

from config.settings import reset_settings
from core.model import builtin_catalog
from modules.dsl import load_document
from schemas.adtree import AdTree, AttackLeaf, GateKind, GateNode, IdsTier

# Non-IDS catalog ids, in catalog order, used to give a leaf ``n`` defenses.
PLAIN_IDS = [d for d in builtin_catalog().ids() if d != "d2"]


@pytest.fixture(autouse=True)
def _fresh_settings(monkeypatch):
    for name in list(os.environ):
        if name.startswith("ADTREE_"):
            monkeypatch.delenv(name, raising=False)
    reset_settings()
    yield
    reset_settings()


@pytest.fixture
def catalog():
    return builtin_catalog()


@pytest.fixture
def make_leaf():
    """Build a leaf with ``n`` distinct non-IDS defenses and an IDS tier."""

    def _make(leaf_id="L1", n=0, tier=IdsTier.absent, label=None, defenses=None):
        cms = tuple(defenses) if defenses is not None else tuple(PLAIN_IDS[:n])
        return AttackLeaf(
            id=leaf_id, label=label or f"attack {leaf_id}", countermeasures=cms, ids_tier=tier
        )

    return _make


@pytest.fixture
def make_tree(catalog):
    """Wrap a node in a tree over the built-in catalog."""

    def _make(root, name="T", tree_catalog=None):
        return AdTree(name=name, catalog=tree_catalog or catalog, root=root)

    return _make


@pytest.fixture
def gate():
    def _gate(kind, *children, label="goal"):
        return GateNode(kind=GateKind(kind), label=label, children=tuple(children))

    return _gate


@pytest.fixture
def cav_document():
    return load_document("@cav")


@pytest.fixture
def cav_tree(cav_document):
    return cav_document.tree
