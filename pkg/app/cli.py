"""``adtree`` command line: validate, evaluate, compare, render and recommend."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Callable, Optional, Sequence

from loguru import logger

from app import __version__
from config.constants import E_BAD_BUDGET, E_UNKNOWN_SCENARIO
from config.settings import get_settings
from core.errors import (
    EXIT_DOMAIN,
    EXIT_OK,
    AdtreeError,
    InputError,
    ScenarioError,
    UnknownScenarioError,
    to_exit_code,
)
from core.model import builtin_catalog, leaves_of
from core.scoring import evaluate
from logging_config import configure_logging
from modules.dsl import load_document, load_source, serialize_document
from modules.recommender import recommend_defenses
from modules.reporting import (
    render_catalog,
    render_comparison,
    render_evaluation,
    render_recommendations,
)
from modules.scenarios import apply_scenario, compare_scenarios
from modules.svg_chart import render_comparison_chart
from schemas.diagnostic import Diagnostic, error
from schemas.document import Document, Scenario
from schemas.report import AggregationSemantics, Objective, OutputFormat, RenderOptions
from utils import logx

logger = logger.bind(module="cli")

Handler = Callable[[argparse.Namespace], int]


def _emit(text: str) -> None:
    sys.stdout.write(text)


def _print_diagnostics(diagnostics: Sequence[Diagnostic]) -> None:
    for diag in diagnostics:
        print(diag.format(), file=sys.stderr)


def _report_failure(exc: AdtreeError) -> None:
    if exc.diagnostics:
        _print_diagnostics(exc.diagnostics)
    else:
        _print_diagnostics([error(exc.code, str(exc))])


def _find_scenario(doc: Document, name: str) -> Scenario:
    scenario = doc.scenario(name)
    if scenario is None:
        known = ", ".join(s.name for s in doc.scenarios) or "none"
        raise UnknownScenarioError(
            f"unknown scenario {name!r}; available: {known}", code=E_UNKNOWN_SCENARIO
        )
    return scenario


def _render_options(args: argparse.Namespace, fmt: OutputFormat) -> RenderOptions:
    settings = get_settings()
    return RenderOptions(
        format=fmt,
        precision=settings.precision if args.precision is None else args.precision,
        pct_precision=settings.pct_precision,
        width=_or_default(getattr(args, "width", None), settings.chart_width),
        height=_or_default(getattr(args, "height", None), settings.chart_height),
    )


def _or_default(value: Optional[int], default: int) -> int:
    return default if value is None else value


def _positive_int(raw: str) -> int:
    try:
        value = int(raw)
    except ValueError:
        value = 0
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {raw!r}")
    return value


def _semantics(args: argparse.Namespace) -> AggregationSemantics:
    return AggregationSemantics(args.semantics or get_settings().semantics)


def _parse_budget(raw: str) -> int:
    try:
        budget = int(raw)
    except ValueError:
        budget = 0
    if budget < 1:
        raise AdtreeError(f"budget must be a positive integer, got {raw!r}", code=E_BAD_BUDGET)
    return budget


def cmd_validate(args: argparse.Namespace) -> int:
    result = load_source(args.path)
    diagnostics = list(result.diagnostics)
    doc = result.document
    if result.ok and doc is not None:
        # dry-run every scenario so add/remove conflicts surface here too
        for scenario in doc.scenarios:
            try:
                apply_scenario(doc.tree, scenario)
            except ScenarioError as exc:
                diagnostics.append(error(exc.code, f"scenario {scenario.name!r}: {exc}"))
    _print_diagnostics(diagnostics)
    if any(d.is_error for d in diagnostics) or doc is None:
        return EXIT_DOMAIN
    _emit(
        f"{args.path}: ok ({len(leaves_of(doc.tree))} leaves, "
        f"{len(doc.scenarios)} scenarios, "
        f"{sum(1 for d in diagnostics if not d.is_error)} warnings)\n"
    )
    return EXIT_OK


def cmd_evaluate(args: argparse.Namespace) -> int:
    doc = load_document(args.path)
    tree = doc.tree
    if args.scenario:
        tree = apply_scenario(tree, _find_scenario(doc, args.scenario))
    ev = evaluate(tree, _semantics(args))
    _emit(render_evaluation(ev, _render_options(args, OutputFormat(args.format))))
    return EXIT_OK


def cmd_compare(args: argparse.Namespace) -> int:
    doc = load_document(args.path)
    report = compare_scenarios(doc.tree, _find_scenario(doc, args.scenario), _semantics(args))
    _print_diagnostics(report.diagnostics)
    _emit(render_comparison(report, _render_options(args, OutputFormat(args.format))))
    return EXIT_OK


def cmd_render(args: argparse.Namespace) -> int:
    doc = load_document(args.path)
    report = compare_scenarios(doc.tree, _find_scenario(doc, args.scenario), _semantics(args))
    svg = render_comparison_chart(report, _render_options(args, OutputFormat.svg))
    if args.out is None:
        _emit(svg)
        return EXIT_OK
    out = Path(args.out)
    try:
        out.write_text(svg, encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot write {out}: {exc}") from exc
    logger.info("Wrote chart for scenario {!r} to {}", args.scenario, out)
    return EXIT_OK


def cmd_recommend(args: argparse.Namespace) -> int:
    budget = _parse_budget(args.budget)
    doc = load_document(args.path)
    actions = recommend_defenses(doc.tree, budget, Objective(args.objective), _semantics(args))
    _emit(render_recommendations(actions, _render_options(args, OutputFormat(args.format))))
    return EXIT_OK


def cmd_catalog(args: argparse.Namespace) -> int:
    catalog = load_document(args.path).catalog if args.path else builtin_catalog()
    _emit(render_catalog(catalog, _render_options(args, OutputFormat(args.format))))
    return EXIT_OK


def cmd_format(args: argparse.Namespace) -> int:
    _emit(serialize_document(load_document(args.path)))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="adtree",
        description="Attack-defense tree vulnerability analysis for connected vehicles",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--log-level", help="loguru level for stderr logs (default: ADTREE_LOG_LEVEL)")
    parser.add_argument(
        "--log-json", action="store_true", default=None, help="emit logs as JSON lines"
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    doc = argparse.ArgumentParser(add_help=False)
    doc.add_argument("path", help="document path or @dataset alias (e.g. @cav)")

    output = argparse.ArgumentParser(add_help=False)
    output.add_argument("--precision", type=int, choices=range(10), metavar="0-9")
    output.add_argument("--semantics", choices=[s.value for s in AggregationSemantics])

    def _formats(p: argparse.ArgumentParser) -> None:
        p.add_argument("--format", choices=["table", "csv", "json"], default="table")

    p = sub.add_parser("validate", parents=[doc], help="parse and validate a document")
    p.set_defaults(handler=cmd_validate)

    p = sub.add_parser("evaluate", parents=[doc, output], help="score every leaf and the root")
    p.add_argument("--scenario", help="evaluate the tree after this scenario")
    _formats(p)
    p.set_defaults(handler=cmd_evaluate)

    p = sub.add_parser("compare", parents=[doc, output], help="before/after report of a scenario")
    p.add_argument("--scenario", required=True)
    _formats(p)
    p.set_defaults(handler=cmd_compare)

    p = sub.add_parser("render", parents=[doc, output], help="SVG chart of a scenario comparison")
    p.add_argument("--scenario", required=True)
    p.add_argument("--out", help="output file (default: standard output)")
    p.add_argument("--width", type=_positive_int)
    p.add_argument("--height", type=_positive_int)
    p.set_defaults(handler=cmd_render)

    p = sub.add_parser("recommend", parents=[doc, output], help="greedy defense recommendations")
    p.add_argument("--budget", required=True, help="maximum number of actions")
    p.add_argument(
        "--objective", choices=[o.value for o in Objective], default=Objective.sum.value
    )
    _formats(p)
    p.set_defaults(handler=cmd_recommend)

    p = sub.add_parser("catalog", help="list the defense catalog")
    p.add_argument("path", nargs="?", help="document path or @dataset alias")
    _formats(p)
    p.set_defaults(handler=cmd_catalog, precision=None)

    p = sub.add_parser("format", parents=[doc], help="print the canonical form of a document")
    p.set_defaults(handler=cmd_format)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_DOMAIN
    configure_logging(level=args.log_level, json_output=args.log_json)
    handler: Handler = args.handler
    with logx.timed("command_finished", command=args.command) as outcome:
        try:
            outcome["exit_code"] = handler(args)
        except AdtreeError as exc:
            _report_failure(exc)
            outcome["exit_code"] = to_exit_code(exc)
        except Exception as exc:  # pragma: no cover - unexpected failure
            print(f"ERROR E_INTERNAL 0:0 {exc}", file=sys.stderr)
            outcome["exit_code"] = to_exit_code(exc)
    return outcome["exit_code"]


if __name__ == "__main__":  # pragma: no cover - script entry
    sys.exit(main())
