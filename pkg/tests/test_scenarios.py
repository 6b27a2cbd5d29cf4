"""Purpose: verify scenario application, improvement percentages and comparisons."""

import random

import pytest

from core.errors import InvalidTreeError, ScenarioError
from core.model import countermeasure_count, find_leaf
from modules.scenarios import apply_scenario, compare_scenarios, improvement_percent
from schemas.adtree import AdTree, AttackLeaf, GateKind, GateNode, IdsTier
from schemas.document import AddDefense, RemoveDefense, Scenario, SetIds
from schemas.report import AggregationSemantics

CAV_EXPECTED = {
    "L1": (0.4, 0.335, 16.25),
    "L2": (0.4, 0.3, 25.0),
    "L3": (0.4, 0.335, 16.25),
    "L4": (0.5, 0.335, 33.0),
    "L5": (0.4, 0.67 / 3, 44.1667),
    "L6": (0.5, 0.335, 33.0),
    "L7": (0.5, 1 / 3, 33.3333),
    "L8": (0.5, 0.67 / 3, 55.3333),
}


def _scenario(*changes, name="s"):
    return Scenario(name=name, changes=tuple(changes))


def test_apply_adds_defense_and_sets_tier(make_leaf, make_tree):
    tree = make_tree(make_leaf("L", defenses=["d1"]))
    result = apply_scenario(
        tree, _scenario(AddDefense(leaf_id="L", defense_id="d8"), SetIds(leaf_id="L", tier="minimal"))
    )
    leaf = find_leaf(result, "L")
    assert leaf.countermeasures == ("d1", "d8")
    assert leaf.ids_tier is IdsTier.minimal
    # input untouched
    assert find_leaf(tree, "L").countermeasures == ("d1",)


def test_added_defenses_keep_catalog_order(make_leaf, make_tree):
    tree = make_tree(make_leaf("L", defenses=["d8"]))
    result = apply_scenario(tree, _scenario(AddDefense(leaf_id="L", defense_id="d3")))
    assert find_leaf(result, "L").countermeasures == ("d3", "d8")


def test_remove_defense(make_leaf, make_tree):
    tree = make_tree(make_leaf("L", defenses=["d1", "d3"]))
    result = apply_scenario(tree, _scenario(RemoveDefense(leaf_id="L", defense_id="d1")))
    assert find_leaf(result, "L").countermeasures == ("d3",)


@pytest.mark.parametrize(
    "change,code",
    [
        (AddDefense(leaf_id="L", defense_id="d1"), "E_DUP_ADD"),
        (RemoveDefense(leaf_id="L", defense_id="d5"), "E_ABSENT_REMOVE"),
        (AddDefense(leaf_id="L", defense_id="d99"), "E_UNKNOWN_DEFENSE"),
        (SetIds(leaf_id="Z", tier="minimal"), "E_UNKNOWN_LEAF"),
    ],
)
def test_invalid_changes(make_leaf, make_tree, change, code):
    tree = make_tree(make_leaf("L", defenses=["d1"]))
    with pytest.raises(ScenarioError) as exc:
        apply_scenario(tree, _scenario(change))
    assert exc.value.code == code


def test_apply_rejects_invalid_tree(make_leaf, make_tree):
    tree = make_tree(make_leaf("L", defenses=["d99"]))
    with pytest.raises(InvalidTreeError):
        apply_scenario(tree, _scenario())


def test_cav_leaf6_improvement(cav_tree, cav_document):
    improved = apply_scenario(cav_tree, cav_document.scenario("improved"))
    leaf = find_leaf(improved, "L6")
    assert countermeasure_count(leaf) == 2
    assert leaf.ids_tier is IdsTier.minimal


@pytest.mark.parametrize(
    "before,after,expected",
    [(0.5, 0.335, 33.0), (0.4, 0.4, 0.0), (0.4, 0.5, -25.0)],
)
def test_improvement_percent(before, after, expected):
    result = improvement_percent(before, after)
    assert result.percent == pytest.approx(expected)
    assert result.warning is None


def test_improvement_percent_zero_baseline():
    result = improvement_percent(0.0, 0.0)
    assert result.percent == 0.0
    assert result.warning == "W_ZERO_BASELINE"


@pytest.mark.parametrize("before,after", [(-0.1, 0.2), (0.5, 1.5)])
def test_improvement_percent_out_of_range(before, after):
    with pytest.raises(ValueError):
        improvement_percent(before, after)


def test_cav_comparison(cav_tree, cav_document):
    report = compare_scenarios(cav_tree, cav_document.scenario("improved"))
    assert [row.leaf_id for row in report.rows] == list(CAV_EXPECTED)
    for row in report.rows:
        before, after, pct = CAV_EXPECTED[row.leaf_id]
        assert row.nu_before == pytest.approx(before, abs=1e-9)
        assert row.nu_after == pytest.approx(after, abs=1e-9)
        assert row.improvement_pct == pytest.approx(pct, abs=1e-4)
    assert report.root_before == pytest.approx(0.5)
    assert report.root_after == pytest.approx(0.335)
    assert report.root_improvement_pct == pytest.approx(33.0)
    assert report.diagnostics == ()


def test_comparison_rows_show_what_changed(cav_tree, cav_document):
    report = compare_scenarios(cav_tree, cav_document.scenario("improved"))
    row = report.rows[1]
    assert (row.n_before, row.n_after) == (1, 2)
    assert (row.tier_before, row.tier_after) == (IdsTier.standard, IdsTier.enhanced)


def test_identity_scenario(cav_tree):
    report = compare_scenarios(cav_tree, _scenario(name="nothing"))
    assert all(row.improvement_pct == 0.0 for row in report.rows)
    assert all(row.nu_before == row.nu_after for row in report.rows)


def test_zero_baseline_warning_in_report(make_leaf, make_tree, gate):
    tree = make_tree(gate("or", make_leaf("A", n=5, tier=IdsTier.enhanced), make_leaf("B", n=1)))
    report = compare_scenarios(tree, _scenario())
    assert report.rows[0].warnings == ("W_ZERO_BASELINE",)
    assert [d.code for d in report.diagnostics] == ["W_ZERO_BASELINE"]
    assert report.diagnostics[0].node_id == "A"


def test_probabilistic_comparison_root(cav_tree, cav_document):
    report = compare_scenarios(
        cav_tree, cav_document.scenario("improved"), AggregationSemantics.prob
    )
    assert report.semantics is AggregationSemantics.prob
    assert report.root_after < report.root_before


def _random_leaves(rng, plain_ids):
    leaves = []
    for i in range(rng.randint(1, 6)):
        cms = tuple(rng.sample(plain_ids, rng.randint(0, 6)))
        leaves.append(
            AttackLeaf(id=f"L{i}", label="x", countermeasures=cms, ids_tier=rng.choice(list(IdsTier)))
        )
    return leaves


def _monotone_scenario(rng, leaves, plain_ids):
    changes = []
    for leaf in leaves:
        missing = [d for d in plain_ids if d not in leaf.countermeasures]
        for defense_id in rng.sample(missing, rng.randint(0, min(3, len(missing)))):
            changes.append(AddDefense(leaf_id=leaf.id, defense_id=defense_id))
        higher = [t for t in IdsTier if t.rank > leaf.ids_tier.rank]
        if higher and rng.random() < 0.5:
            changes.append(SetIds(leaf_id=leaf.id, tier=rng.choice(higher)))
    rng.shuffle(changes)
    return Scenario(name="monotone", changes=tuple(changes))


@pytest.mark.slow
def test_random_monotone_scenarios_never_worsen_a_leaf(catalog):
    rng = random.Random(4242)
    plain_ids = [d for d in catalog.ids() if d != "d2"]
    for _ in range(300):
        leaves = _random_leaves(rng, plain_ids)
        kind = rng.choice(list(GateKind))
        tree = AdTree(
            name="rand",
            catalog=catalog,
            root=GateNode(kind=kind, label="g", children=tuple(leaves)),
        )
        semantics = rng.choice(list(AggregationSemantics))
        report = compare_scenarios(tree, _monotone_scenario(rng, leaves, plain_ids), semantics)
        for row in report.rows:
            assert row.improvement_pct >= -1e-9
        assert report.root_after <= report.root_before + 1e-12
