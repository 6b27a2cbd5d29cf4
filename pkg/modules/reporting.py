"""Text, CSV and JSON rendering of evaluations, comparisons and recommendations.

All rounding happens here, at render time, half-up on the decimal
representation; the models keep full precision.
"""

from __future__ import annotations

import csv
import io
import json
from typing import Any, Collection, Iterable, Sequence

from schemas.adtree import DefenseCatalog
from schemas.report import (
    Action,
    ComparisonReport,
    OutputFormat,
    RenderOptions,
    TreeEvaluation,
)
from utils.numbers import format_half_up, round_half_up

EVALUATION_COLUMNS = ("leaf_id", "label", "n", "alpha", "beta", "nu")
COMPARISON_COLUMNS = ("leaf_id", "nu_before", "nu_after", "improvement_pct")
RECOMMENDATION_COLUMNS = ("leaf_id", "kind", "target", "delta", "objective_after")
CATALOG_COLUMNS = ("id", "description")


def _csv_field(value: Any, quoting: int) -> str:
    if value == "" and quoting == csv.QUOTE_MINIMAL:
        return ""
    buf = io.StringIO()
    csv.writer(buf, lineterminator="", quoting=quoting).writerow([value])
    return buf.getvalue()


def _csv_rows(
    header: Sequence[str], rows: Iterable[Sequence[Any]], quoted: Collection[int] = ()
) -> str:
    """Write rows with RFC-4180 quoting and LF line endings.

    Columns listed in ``quoted`` are always quoted; the rest only when needed.
    """
    lines = [",".join(_csv_field(h, csv.QUOTE_MINIMAL) for h in header)]
    for row in rows:
        lines.append(
            ",".join(
                _csv_field(cell, csv.QUOTE_ALL if idx in quoted else csv.QUOTE_MINIMAL)
                for idx, cell in enumerate(row)
            )
        )
    return "\n".join(lines) + "\n"


def _table(headers: Sequence[str], rows: Sequence[Sequence[str]], right: set[int]) -> list[str]:
    """Align ``rows`` under ``headers``; column indices in ``right`` are right-aligned."""
    widths = [len(h) for h in headers]
    for row in rows:
        for idx, cell in enumerate(row):
            widths[idx] = max(widths[idx], len(cell))

    def _line(cells: Sequence[str]) -> str:
        parts = [
            cell.rjust(widths[i]) if i in right else cell.ljust(widths[i])
            for i, cell in enumerate(cells)
        ]
        return "  ".join(parts).rstrip()

    lines = [_line(headers), "  ".join("-" * w for w in widths)]
    lines.extend(_line(row) for row in rows)
    return lines


def _json(payload: Any) -> str:
    return json.dumps(payload, indent=2, ensure_ascii=False) + "\n"


def render_evaluation(ev: TreeEvaluation, opts: RenderOptions | None = None) -> str:
    """Render per-leaf scores and the gate roll-up of ``ev``."""
    opts = opts or RenderOptions()
    p = opts.precision

    def num(value: float) -> str:
        return format_half_up(value, p)

    if opts.format is OutputFormat.csv:
        rows = [
            [s.leaf_id, s.label, s.n, num(s.alpha), num(s.beta), num(s.nu)] for s in ev.leaves
        ]
        # label is always quoted
        return _csv_rows(EVALUATION_COLUMNS, rows, quoted={1})

    if opts.format is OutputFormat.json:
        return _json(
            {
                "semantics": ev.semantics.value,
                "leaves": [
                    {
                        "leaf_id": s.leaf_id,
                        "label": s.label,
                        "n": s.n,
                        "alpha": round_half_up(s.alpha, p),
                        "beta": round_half_up(s.beta, p),
                        "nu": round_half_up(s.nu, p),
                    }
                    for s in ev.leaves
                ],
                "gates": [
                    {
                        "path": g.path,
                        "label": g.label,
                        "kind": g.kind.value,
                        "value": round_half_up(g.value, p),
                    }
                    for g in ev.gates
                ],
                "root": round_half_up(ev.root, p),
            }
        )

    if opts.format is OutputFormat.table:
        leaf_rows = [
            [s.leaf_id, s.label, str(s.n), num(s.alpha), num(s.beta), num(s.nu)] for s in ev.leaves
        ]
        lines = _table(EVALUATION_COLUMNS, leaf_rows, right={2, 3, 4, 5})
        if ev.gates:
            gate_rows = [[g.path, g.kind.value.upper(), g.label, num(g.value)] for g in ev.gates]
            lines.append("")
            lines.extend(_table(("gate", "kind", "label", "value"), gate_rows, right={3}))
        lines.append("")
        lines.append(f"root ({ev.semantics.value}): {num(ev.root)}")
        return "\n".join(lines) + "\n"

    raise ValueError(f"evaluations cannot be rendered as {opts.format.value}")


def render_comparison(report: ComparisonReport, opts: RenderOptions | None = None) -> str:
    """Render before/after indices and improvement percentages of ``report``."""
    opts = opts or RenderOptions()

    def num(value: float) -> str:
        return format_half_up(value, opts.precision)

    def pct(value: float) -> str:
        return format_half_up(value, opts.pct_precision)

    if opts.format is OutputFormat.csv:
        return _csv_rows(
            COMPARISON_COLUMNS,
            ([r.leaf_id, num(r.nu_before), num(r.nu_after), pct(r.improvement_pct)] for r in report.rows),
        )

    if opts.format is OutputFormat.json:
        return _json(
            {
                "scenario": report.scenario,
                "semantics": report.semantics.value,
                "rows": [
                    {
                        "leaf_id": r.leaf_id,
                        "label": r.label,
                        "n_before": r.n_before,
                        "n_after": r.n_after,
                        "ids_before": r.tier_before.value,
                        "ids_after": r.tier_after.value,
                        "nu_before": round_half_up(r.nu_before, opts.precision),
                        "nu_after": round_half_up(r.nu_after, opts.precision),
                        "improvement_pct": round_half_up(r.improvement_pct, opts.pct_precision),
                        "warnings": list(r.warnings),
                    }
                    for r in report.rows
                ],
                "root": {
                    "before": round_half_up(report.root_before, opts.precision),
                    "after": round_half_up(report.root_after, opts.precision),
                    "improvement_pct": round_half_up(report.root_improvement_pct, opts.pct_precision),
                },
            }
        )

    if opts.format is OutputFormat.table:
        rows = [
            [
                r.leaf_id,
                r.label,
                f"{r.n_before}->{r.n_after}",
                f"{r.tier_before.value}->{r.tier_after.value}",
                num(r.nu_before),
                num(r.nu_after),
                pct(r.improvement_pct),
            ]
            for r in report.rows
        ]
        headers = ("leaf_id", "label", "n", "ids", "nu_before", "nu_after", "improvement_pct")
        lines = [f"scenario: {report.scenario}", ""]
        lines.extend(_table(headers, rows, right={4, 5, 6}))
        lines.append("")
        lines.append(
            f"root ({report.semantics.value}): {num(report.root_before)} -> "
            f"{num(report.root_after)} ({pct(report.root_improvement_pct)}%)"
        )
        return "\n".join(lines) + "\n"

    raise ValueError("use render_comparison_chart for svg output")


def render_recommendations(actions: Sequence[Action], opts: RenderOptions | None = None) -> str:
    """Render ranked actions, one per line, each with its objective delta."""
    opts = opts or RenderOptions()

    def num(value: float) -> str:
        return format_half_up(value, opts.precision)

    rows = [[a.leaf_id, a.kind.value, a.target, num(a.delta), num(a.objective_after)] for a in actions]

    if opts.format is OutputFormat.csv:
        return _csv_rows(RECOMMENDATION_COLUMNS, rows)
    if opts.format is OutputFormat.json:
        return _json(
            [
                {
                    "leaf_id": a.leaf_id,
                    "kind": a.kind.value,
                    "target": a.target,
                    "delta": round_half_up(a.delta, opts.precision),
                    "objective_after": round_half_up(a.objective_after, opts.precision),
                }
                for a in actions
            ]
        )
    if opts.format is OutputFormat.table:
        if not actions:
            return "no improving action\n"
        return "\n".join(_table(RECOMMENDATION_COLUMNS, rows, right={3, 4})) + "\n"
    raise ValueError(f"recommendations cannot be rendered as {opts.format.value}")


def render_catalog(catalog: DefenseCatalog, opts: RenderOptions | None = None) -> str:
    opts = opts or RenderOptions()
    rows = [[d.id, d.description] for d in catalog.entries]
    if opts.format is OutputFormat.csv:
        return _csv_rows(CATALOG_COLUMNS, rows)
    if opts.format is OutputFormat.json:
        return _json([{"id": d.id, "description": d.description} for d in catalog.entries])
    if opts.format is OutputFormat.table:
        return "\n".join(_table(CATALOG_COLUMNS, rows, right=set())) + "\n"
    raise ValueError(f"catalogs cannot be rendered as {opts.format.value}")


__all__ = [
    "EVALUATION_COLUMNS",
    "COMPARISON_COLUMNS",
    "render_evaluation",
    "render_comparison",
    "render_recommendations",
    "render_catalog",
]
