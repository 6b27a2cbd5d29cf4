"""Recursive-descent parser for ``.adt`` documents.

Grammar (EBNF)::

    document    = { catalogItem } , tree , { scenario } ;
    catalogItem = "defense" , IDENT , STRING ;
    tree        = "tree" , STRING , "{" , node , "}" ;
    node        = gate | leaf ;
    gate        = ( "and" | "or" ) , STRING , "{" , node , { node } , "}" ;
    leaf        = "leaf" , IDENT , STRING , "{" , [ defenses ] , [ ids ] ,
                  [ origin ] , [ mode ] , "}" ;
    defenses    = "defenses" , ":" , "[" , [ IDENT , { "," , IDENT } ] , "]" ;
    ids         = "ids" , ":" , TIER ;
    origin      = "origin" , ":" , ( "external" | "internal" ) ;
    mode        = "mode" , ":" , ( "passive" | "active" ) ;
    scenario    = "scenario" , STRING , "{" , { change } , "}" ;
    change      = "add" , IDENT , "to" , IDENT
                | "remove" , IDENT , "from" , IDENT
                | "set-ids" , IDENT , TIER ;

Keywords are contextual, so a leaf may be called ``or``. Grammar violations
stop the parse with one ``E_SYNTAX`` diagnostic at the offending token;
reference problems (duplicate ids, unknown defenses or leaves, bad tiers)
are collected and parsing carries on.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from loguru import logger

from config.constants import (
    E_BAD_TIER,
    E_DUP_ID,
    E_SYNTAX,
    E_UNKNOWN_DEFENSE,
    E_UNKNOWN_LEAF,
)
from core.model import is_identifier, validate_tree
from schemas.adtree import (
    AdTree,
    AttackLeaf,
    Defense,
    DefenseCatalog,
    GateKind,
    GateNode,
    IdsTier,
    Mode,
    Node,
    Origin,
)
from schemas.diagnostic import Diagnostic, SourceSpan, error, has_errors
from schemas.document import AddDefense, Change, Document, RemoveDefense, Scenario, SetIds
from utils import logx

from .lexer import EOF, BAD, STRING, WORD, Token, tokenize

logger = logger.bind(module="dsl.parser")

_TIERS = {t.value: t for t in IdsTier}
_ORIGINS = {o.value: o for o in Origin}
_MODES = {m.value: m for m in Mode}


class _SyntaxAbort(Exception):
    """Internal signal that a grammar violation ended the parse."""


@dataclass(frozen=True)
class ParseResult:
    """Outcome of :func:`parse_document`.

    ``document`` is ``None`` whenever an error diagnostic was produced.
    """

    document: Optional[Document]
    diagnostics: list[Diagnostic] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.document is not None and not has_errors(self.diagnostics)

    @property
    def errors(self) -> list[Diagnostic]:
        return [d for d in self.diagnostics if d.is_error]

    @property
    def warnings(self) -> list[Diagnostic]:
        return [d for d in self.diagnostics if not d.is_error]


class _Parser:
    def __init__(self, text: str) -> None:
        self.tokens = tokenize(text)
        self.pos = 0
        self.diagnostics: list[Diagnostic] = []
        self.catalog: list[Defense] = []
        self.catalog_ids: set[str] = set()
        self.leaf_spans: dict[str, SourceSpan] = {}

    # Token helpers --------------------------------------------------------

    @property
    def tok(self) -> Token:
        return self.tokens[self.pos]

    def _next(self) -> Token:
        tok = self.tokens[self.pos]
        if tok.kind != EOF:
            self.pos += 1
        return tok

    def _fail(self, tok: Token, expected: str) -> None:
        if tok.kind == BAD:
            message = tok.error or "malformed token"
        else:
            message = f"expected {expected}, found {tok.describe()}"
        self.diagnostics.append(error(E_SYNTAX, message, span=tok.span))
        raise _SyntaxAbort

    def _report(self, code: str, message: str, tok: Token, node_id: Optional[str] = None) -> None:
        self.diagnostics.append(error(code, message, span=tok.span, node_id=node_id))

    def _keyword(self, word: str) -> Token:
        if not self.tok.is_word(word):
            self._fail(self.tok, f"'{word}'")
        return self._next()

    def _punct(self, ch: str) -> Token:
        if not self.tok.is_punct(ch):
            self._fail(self.tok, f"'{ch}'")
        return self._next()

    def _ident(self, what: str) -> Token:
        tok = self.tok
        if tok.kind != WORD or not is_identifier(tok.value):
            self._fail(tok, what)
        return self._next()

    def _string(self, what: str) -> Token:
        if self.tok.kind != STRING:
            self._fail(self.tok, what)
        return self._next()

    def _tier(self) -> IdsTier:
        tok = self.tok
        if tok.kind != WORD:
            self._fail(tok, "an ids tier")
        self._next()
        tier = _TIERS.get(tok.value)
        if tier is None:
            self._report(
                E_BAD_TIER,
                f"unknown ids tier {tok.value!r}; expected one of {', '.join(_TIERS)}",
                tok,
            )
            return IdsTier.absent
        return tier

    def _choice(self, options: dict, what: str):
        tok = self.tok
        if tok.kind != WORD or tok.value not in options:
            self._fail(tok, what)
        self._next()
        return options[tok.value]

    # Grammar --------------------------------------------------------------

    def parse(self) -> tuple[Optional[AdTree], list[Scenario]]:
        while self.tok.is_word("defense"):
            self._catalog_item()
        self._keyword("tree")
        name = self._string("a tree name").value
        self._punct("{")
        root = self._node()
        self._punct("}")
        catalog = DefenseCatalog(entries=tuple(self.catalog))
        tree = AdTree(name=name, catalog=catalog, root=root)
        scenarios: list[Scenario] = []
        names: set[str] = set()
        while self.tok.is_word("scenario"):
            scenarios.append(self._scenario(names))
        if self.tok.kind != EOF:
            self._fail(self.tok, "'scenario' or end of input")
        return tree, scenarios

    def _catalog_item(self) -> None:
        self._keyword("defense")
        ident = self._ident("a defense identifier")
        description = self._string("a defense description").value
        if ident.value in self.catalog_ids:
            self._report(E_DUP_ID, f"defense {ident.value} declared more than once", ident)
            return
        self.catalog_ids.add(ident.value)
        self.catalog.append(Defense(id=ident.value, description=description))

    def _node(self) -> Node:
        tok = self.tok
        if tok.is_word("and") or tok.is_word("or"):
            return self._gate()
        if tok.is_word("leaf"):
            return self._leaf()
        self._fail(tok, "'and', 'or' or 'leaf'")
        raise AssertionError("unreachable")

    def _gate(self) -> GateNode:
        kind = GateKind(self._next().value)
        label = self._string("a gate label").value
        self._punct("{")
        if self.tok.is_punct("}"):
            self._fail(self.tok, "at least one child node")
        children = [self._node()]
        while not self.tok.is_punct("}"):
            children.append(self._node())
        self._punct("}")
        return GateNode(kind=kind, label=label, children=tuple(children))

    def _leaf(self) -> AttackLeaf:
        self._keyword("leaf")
        ident = self._ident("a leaf identifier")
        label = self._string("a leaf label").value
        if ident.value in self.leaf_spans:
            self._report(E_DUP_ID, f"duplicate leaf id {ident.value}", ident, node_id=ident.value)
        else:
            self.leaf_spans[ident.value] = ident.span
        self._punct("{")
        defenses: list[str] = []
        tier = IdsTier.absent
        origin: Optional[Origin] = None
        mode: Optional[Mode] = None
        if self.tok.is_word("defenses"):
            defenses = self._defenses(ident.value)
        if self.tok.is_word("ids"):
            self._next()
            self._punct(":")
            tier = self._tier()
        if self.tok.is_word("origin"):
            self._next()
            self._punct(":")
            origin = self._choice(_ORIGINS, "'external' or 'internal'")
        if self.tok.is_word("mode"):
            self._next()
            self._punct(":")
            mode = self._choice(_MODES, "'passive' or 'active'")
        self._punct("}")
        catalog = DefenseCatalog(entries=tuple(self.catalog))
        return AttackLeaf(
            id=ident.value,
            label=label,
            countermeasures=catalog.sort_ids(defenses),
            ids_tier=tier,
            origin=origin,
            mode=mode,
        )

    def _defenses(self, leaf_id: str) -> list[str]:
        self._keyword("defenses")
        self._punct(":")
        self._punct("[")
        found: list[str] = []
        if not self.tok.is_punct("]"):
            found.append(self._defense_ref(leaf_id, found))
            while self.tok.is_punct(","):
                self._next()
                found.append(self._defense_ref(leaf_id, found))
        self._punct("]")
        return [d for d in found if d]

    def _defense_ref(self, leaf_id: str, found: list[str]) -> str:
        tok = self._ident("a defense identifier")
        if tok.value not in self.catalog_ids:
            self._report(
                E_UNKNOWN_DEFENSE,
                f"leaf {leaf_id} references unknown defense {tok.value}",
                tok,
                node_id=leaf_id,
            )
            return ""
        if tok.value in found:
            self._report(
                E_DUP_ID,
                f"defense {tok.value} listed more than once on leaf {leaf_id}",
                tok,
                node_id=leaf_id,
            )
            return ""
        return tok.value

    def _scenario(self, names: set[str]) -> Scenario:
        self._keyword("scenario")
        name_tok = self._string("a scenario name")
        if name_tok.value in names:
            self._report(E_DUP_ID, f"scenario {name_tok.value!r} declared more than once", name_tok)
        names.add(name_tok.value)
        self._punct("{")
        changes: list[Change] = []
        while not self.tok.is_punct("}"):
            change = self._change()
            if change is not None:
                changes.append(change)
        self._punct("}")
        return Scenario(name=name_tok.value, changes=tuple(changes))

    def _leaf_ref(self) -> Optional[str]:
        tok = self._ident("a leaf identifier")
        if tok.value not in self.leaf_spans:
            self._report(E_UNKNOWN_LEAF, f"scenario targets unknown leaf {tok.value}", tok)
            return None
        return tok.value

    def _scenario_defense(self) -> Optional[str]:
        tok = self._ident("a defense identifier")
        if tok.value not in self.catalog_ids:
            self._report(E_UNKNOWN_DEFENSE, f"scenario references unknown defense {tok.value}", tok)
            return None
        return tok.value

    def _change(self) -> Optional[Change]:
        tok = self.tok
        if tok.is_word("add") or tok.is_word("remove"):
            self._next()
            defense_id = self._scenario_defense()
            self._keyword("to" if tok.value == "add" else "from")
            leaf_id = self._leaf_ref()
            if defense_id is None or leaf_id is None:
                return None
            cls = AddDefense if tok.value == "add" else RemoveDefense
            return cls(leaf_id=leaf_id, defense_id=defense_id)
        if tok.is_word("set-ids"):
            self._next()
            leaf_id = self._leaf_ref()
            tier = self._tier()
            if leaf_id is None:
                return None
            return SetIds(leaf_id=leaf_id, tier=tier)
        self._fail(tok, "'add', 'remove', 'set-ids' or '}'")
        raise AssertionError("unreachable")


def parse_document(text: str, *, source: str = "<string>") -> ParseResult:
    """Parse ``.adt`` source ``text`` into a :class:`~schemas.document.Document`.

    Parsing is deterministic and never raises on bad input: problems come
    back as diagnostics with source spans. On success, validation warnings
    (countermeasure cap, IDS listed as a defense) are attached to the span of
    the leaf they concern. Leaf defense lists are put in catalog order.
    """
    parser = _Parser(text)
    tree: Optional[AdTree] = None
    scenarios: list[Scenario] = []
    try:
        tree, scenarios = parser.parse()
    except _SyntaxAbort:
        tree = None
    diagnostics = parser.diagnostics
    document: Optional[Document] = None
    if tree is not None and not has_errors(diagnostics):
        for diag in validate_tree(tree):
            span = parser.leaf_spans.get(diag.node_id or "")
            diagnostics.append(diag.model_copy(update={"span": span}) if span else diag)
        if not has_errors(diagnostics):
            document = Document(catalog=tree.catalog, tree=tree, scenarios=tuple(scenarios))
    errors = sum(1 for d in diagnostics if d.is_error)
    logx.debug(
        "document_parsed",
        source=source,
        leaves=len(parser.leaf_spans),
        scenarios=len(scenarios),
        errors=errors,
        warnings=len(diagnostics) - errors,
    )
    return ParseResult(document=document, diagnostics=diagnostics)


__all__ = ["ParseResult", "parse_document"]
