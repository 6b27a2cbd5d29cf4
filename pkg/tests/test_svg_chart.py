"""Purpose: verify the comparison chart is deterministic, well-formed and to scale."""

import xml.etree.ElementTree as ET

import pytest

from core.errors import EmptyReportError
from modules.scenarios import compare_scenarios
from modules.svg_chart import SVG_NS, render_comparison_chart
from schemas.adtree import IdsTier
from schemas.document import AddDefense, Scenario
from schemas.report import AggregationSemantics, ComparisonReport, RenderOptions

NS = {"svg": SVG_NS}


@pytest.fixture
def cav_report(cav_tree, cav_document):
    return compare_scenarios(cav_tree, cav_document.scenario("improved"))


def _rects(svg_text, css_class=None):
    root = ET.fromstring(svg_text.encode("utf-8"))
    rects = root.findall(".//svg:rect", NS)
    if css_class:
        rects = [r for r in rects if r.get("class") == css_class]
    return rects


def test_cav_chart_bar_counts(cav_report):
    svg = render_comparison_chart(cav_report)
    assert len(_rects(svg)) == 24
    assert len(_rects(svg, "bar-before")) == 8
    assert len(_rects(svg, "bar-after")) == 8
    assert len(_rects(svg, "bar-improvement")) == 8


def test_chart_is_deterministic(cav_report):
    assert render_comparison_chart(cav_report) == render_comparison_chart(cav_report)


def test_full_vulnerability_spans_plot_height(make_leaf, make_tree):
    tree = make_tree(make_leaf("A", n=0))
    report = compare_scenarios(
        tree, Scenario(name="one", changes=(AddDefense(leaf_id="A", defense_id="d1"),))
    )
    opts = RenderOptions(width=400, height=300)
    svg = render_comparison_chart(report, opts)
    before = _rects(svg, "bar-before")[0]
    after = _rects(svg, "bar-after")[0]
    full = float(before.get("height"))
    assert full == pytest.approx((300 - 32 - 44 - 28) / 2, abs=0.01)
    assert float(after.get("height")) == pytest.approx(full / 2, abs=0.01)


def test_axes_and_labels(cav_report):
    root = ET.fromstring(render_comparison_chart(cav_report).encode("utf-8"))
    assert len(root.findall(".//svg:line", NS)) == 4
    labels = [t.text for t in root.findall(".//svg:text", NS) if t.get("class") == "leaf-label"]
    assert labels[:2] == ["L1", "L1"]
    assert root.get("width") == "800"


def test_labels_are_escaped(make_leaf, make_tree):
    tree = make_tree(make_leaf("A", n=1, label="<script> & co"))
    report = compare_scenarios(tree, Scenario(name='a "quoted" <plan>'))
    svg = render_comparison_chart(report)
    assert "<script>" not in svg
    root = ET.fromstring(svg.encode("utf-8"))
    assert root.find("svg:title", NS).text == 'Vulnerability comparison: a "quoted" <plan>'


def test_negative_improvement_is_drawn_below_axis(make_leaf, make_tree):
    tree = make_tree(make_leaf("A", n=1, tier=IdsTier.minimal))
    from schemas.document import RemoveDefense

    report = compare_scenarios(
        tree, Scenario(name="worse", changes=(RemoveDefense(leaf_id="A", defense_id="d1"),))
    )
    assert report.rows[0].improvement_pct < 0
    bar = _rects(render_comparison_chart(report), "bar-improvement")[0]
    assert float(bar.get("height")) > 0


def test_empty_report_is_rejected():
    report = ComparisonReport(
        scenario="none",
        semantics=AggregationSemantics.worst,
        rows=(),
        root_before=0.0,
        root_after=0.0,
        root_improvement_pct=0.0,
    )
    with pytest.raises(EmptyReportError):
        render_comparison_chart(report)
