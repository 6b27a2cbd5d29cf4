"""Deterministic SVG bar chart of a scenario comparison.

The chart has two panels stacked vertically. The upper one shows the
vulnerability index of every leaf before and after the scenario on a fixed
``[0, 1]`` axis; the lower one shows the improvement percentage per leaf.
Every leaf contributes exactly three ``<rect>`` elements and nothing else in
the document is a rect, so the output can be checked structurally.
"""

from __future__ import annotations

from xml.sax.saxutils import escape, quoteattr

from core.errors import EmptyReportError
from schemas.report import ComparisonReport, RenderOptions
from utils.numbers import format_half_up

SVG_NS = "http://www.w3.org/2000/svg"

MARGIN_LEFT = 56.0
MARGIN_RIGHT = 16.0
MARGIN_TOP = 32.0
MARGIN_BOTTOM = 28.0
PANEL_GAP = 44.0

COLORS = {
    "bar-before": "#c0504d",
    "bar-after": "#4f81bd",
    "bar-improvement": "#9bbb59",
}


def _fmt(value: float) -> str:
    return f"{value:.2f}"


class _SvgBuilder:
    """Accumulates SVG markup line by line."""

    def __init__(self, width: int, height: int) -> None:
        self.width = width
        self.height = height
        self.lines: list[str] = ['<?xml version="1.0" encoding="UTF-8"?>']
        self.lines.append(
            f'<svg xmlns="{SVG_NS}" version="1.1" width="{width}" height="{height}" '
            f'viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="11">'
        )

    def title(self, text: str) -> None:
        self.lines.append(f"<title>{escape(text)}</title>")

    def group_start(self, css_class: str, **data: str) -> None:
        attrs = [f"class={quoteattr(css_class)}"]
        attrs.extend(f"data-{key}={quoteattr(value)}" for key, value in data.items())
        self.lines.append(f"<g {' '.join(attrs)}>")

    def group_end(self) -> None:
        self.lines.append("</g>")

    def line(self, x1: float, y1: float, x2: float, y2: float, css_class: str) -> None:
        self.lines.append(
            f'<line class="{css_class}" x1="{_fmt(x1)}" y1="{_fmt(y1)}" '
            f'x2="{_fmt(x2)}" y2="{_fmt(y2)}" stroke="#333333" stroke-width="1"/>'
        )

    def rect(self, x: float, y: float, width: float, height: float, css_class: str, tooltip: str) -> None:
        self.lines.append(
            f'<rect class="{css_class}" x="{_fmt(x)}" y="{_fmt(y)}" '
            f'width="{_fmt(width)}" height="{_fmt(height)}" fill="{COLORS[css_class]}">'
            f"<title>{escape(tooltip)}</title></rect>"
        )

    def text(self, x: float, y: float, content: str, css_class: str, anchor: str = "middle") -> None:
        self.lines.append(
            f'<text class="{css_class}" x="{_fmt(x)}" y="{_fmt(y)}" '
            f'text-anchor="{anchor}">{escape(content)}</text>'
        )

    def render(self) -> str:
        return "\n".join(self.lines + ["</svg>"]) + "\n"


def _pct_range(values: list[float]) -> tuple[float, float]:
    # Always include 0 and 100 so single-leaf charts keep a readable scale.
    return min(0.0, min(values)), max(100.0, max(values))


def render_comparison_chart(report: ComparisonReport, opts: RenderOptions | None = None) -> str:
    """Render ``report`` as an SVG document.

    Raises
    ------
    EmptyReportError
        If the report has no rows.
    """
    if not report.rows:
        raise EmptyReportError("cannot chart an empty comparison report")
    opts = opts or RenderOptions()

    svg = _SvgBuilder(opts.width, opts.height)
    svg.title(f"Vulnerability comparison: {report.scenario}")

    plot_x0 = MARGIN_LEFT
    plot_w = max(opts.width - MARGIN_LEFT - MARGIN_RIGHT, 1.0)
    panel_h = max((opts.height - MARGIN_TOP - PANEL_GAP - MARGIN_BOTTOM) / 2, 1.0)
    group_w = plot_w / len(report.rows)
    bar_w = group_w * 0.35

    nu_top = MARGIN_TOP
    nu_base = nu_top + panel_h
    pct_top = nu_base + PANEL_GAP
    lo, hi = _pct_range([r.improvement_pct for r in report.rows])
    pct_scale = panel_h / (hi - lo)
    pct_zero = pct_top + hi * pct_scale

    svg.text(opts.width / 2, MARGIN_TOP / 2 + 4, f"Scenario: {report.scenario}", "title")

    # nu panel axes, ticks at 0, 0.5, 1
    svg.line(plot_x0, nu_top, plot_x0, nu_base, "axis")
    svg.line(plot_x0, nu_base, plot_x0 + plot_w, nu_base, "axis")
    for tick in (0.0, 0.5, 1.0):
        y = nu_base - tick * panel_h
        svg.text(plot_x0 - 6, y + 4, format_half_up(tick, 1), "tick", anchor="end")
    svg.text(plot_x0 - 40, nu_top - 8, "nu", "axis-label", anchor="start")

    # improvement panel axes
    svg.line(plot_x0, pct_top, plot_x0, pct_top + panel_h, "axis")
    svg.line(plot_x0, pct_zero, plot_x0 + plot_w, pct_zero, "axis")
    for tick in (lo, 0.0, hi) if lo < 0 else (0.0, hi):
        y = pct_zero - tick * pct_scale
        svg.text(plot_x0 - 6, y + 4, format_half_up(tick, 0) + "%", "tick", anchor="end")
    svg.text(plot_x0 - 40, pct_top - 8, "improvement", "axis-label", anchor="start")

    for idx, row in enumerate(report.rows):
        gx = plot_x0 + idx * group_w
        before_x = gx + group_w * 0.1
        after_x = before_x + bar_w + group_w * 0.05
        center = gx + group_w / 2
        before_label = format_half_up(row.nu_before, opts.precision)
        after_label = format_half_up(row.nu_after, opts.precision)
        pct_label = format_half_up(row.improvement_pct, opts.pct_precision)

        svg.group_start("leaf", leaf=row.leaf_id)
        h_before = row.nu_before * panel_h
        h_after = row.nu_after * panel_h
        svg.rect(before_x, nu_base - h_before, bar_w, h_before, "bar-before",
                 f"{row.leaf_id} {row.label}: before {before_label}")
        svg.rect(after_x, nu_base - h_after, bar_w, h_after, "bar-after",
                 f"{row.leaf_id} {row.label}: after {after_label}")
        pct_h = abs(row.improvement_pct) * pct_scale
        pct_y = pct_zero - pct_h if row.improvement_pct >= 0 else pct_zero
        svg.rect(center - bar_w / 2, pct_y, bar_w, pct_h, "bar-improvement",
                 f"{row.leaf_id} {row.label}: {pct_label}%")
        svg.text(center, nu_base + 14, row.leaf_id, "leaf-label")
        svg.text(center, pct_top + panel_h + 14, row.leaf_id, "leaf-label")
        svg.group_end()

    return svg.render()


__all__ = ["render_comparison_chart"]
