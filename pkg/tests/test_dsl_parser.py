"""Purpose: verify the .adt tokenizer, parser diagnostics and source spans."""

import pytest

from core.errors import DocumentError, InputError
from modules.dsl import load_document, load_source, parse_document
from modules.dsl.lexer import BAD, EOF, PUNCT, STRING, WORD, tokenize
from schemas.adtree import IdsTier, Mode, Origin
from schemas.document import AddDefense, RemoveDefense, SetIds

MINIMAL = 'defense d1 "Cryptographic solutions"\ntree "T" { leaf L1 "CAN replay" { defenses: [d1] ids: minimal } }'


def _codes(result):
    return [d.code for d in result.diagnostics]


def test_tokenize_kinds_and_positions():
    tokens = tokenize('tree "T" {\n  set-ids # note\n}')
    assert [t.kind for t in tokens] == [WORD, STRING, PUNCT, WORD, PUNCT, EOF]
    assert tokens[1].value == "T"
    assert tokens[3].value == "set-ids"
    assert (tokens[3].span.line, tokens[3].span.column) == (2, 3)
    assert tokens[4].span.line == 3


def test_tokenize_string_escapes():
    (tok, _eof) = tokenize(r'"say \"hi\" \\ bye"')
    assert tok.kind == STRING
    assert tok.value == 'say "hi" \\ bye'


@pytest.mark.parametrize("text", ['"open', '"line\nbreak', r'"bad \n escape"', "tree @"])
def test_tokenize_bad_input_ends_stream(text):
    tokens = tokenize(text)
    assert tokens[-2].kind == BAD
    assert tokens[-1].kind == EOF


def test_strings_may_span_lines():
    tokens = tokenize('"multi\nline" x')
    assert tokens[0].kind == STRING
    assert tokens[0].value == "multi\nline"
    assert (tokens[1].span.line, tokens[1].span.column) == (2, 7)


def test_crlf_inside_string_reads_as_lf():
    (tok, _eof) = tokenize('"a\r\nb"')
    assert tok.value == "a\nb"


def test_multiline_label_parses():
    result = parse_document('tree "multi\nline" { leaf L1 "first\r\nsecond" {} }')
    assert result.ok
    assert result.document.tree.name == "multi\nline"
    assert result.document.tree.root.label == "first\nsecond"


def test_offsets_count_utf8_bytes():
    tokens = tokenize('"é" x')
    assert tokens[1].span.offset == 5
    assert tokens[1].span.column == 5


def test_parse_minimal_document():
    result = parse_document(MINIMAL)
    assert result.ok
    assert result.diagnostics == []
    leaf = result.document.tree.root
    assert leaf.id == "L1"
    assert leaf.label == "CAN replay"
    assert leaf.countermeasures == ("d1",)
    assert leaf.ids_tier is IdsTier.minimal


def test_parse_defaults_for_empty_leaf_body():
    result = parse_document('tree "T" { leaf L1 "a" {} }')
    leaf = result.document.tree.root
    assert leaf.countermeasures == ()
    assert leaf.ids_tier is IdsTier.absent
    assert leaf.origin is None and leaf.mode is None


def test_parse_taxonomy_labels():
    text = 'tree "T" { leaf L1 "a" { ids: absent origin: external mode: passive } }'
    leaf = parse_document(text).document.tree.root
    assert leaf.origin is Origin.external
    assert leaf.mode is Mode.passive


def test_duplicate_leaf_reported_at_second_occurrence():
    text = 'tree "T" { or "goal" { leaf L1 "a" {} leaf L1 "b" {} } }'
    result = parse_document(text)
    assert not result.ok
    assert result.document is None
    assert _codes(result) == ["E_DUP_ID"]
    assert result.diagnostics[0].span.offset == text.rindex("L1")


def test_bad_tier_points_at_tier_word():
    text = 'tree "T" { leaf L1 "a" { ids: ultra } }'
    result = parse_document(text)
    assert _codes(result) == ["E_BAD_TIER"]
    span = result.diagnostics[0].span
    assert span.offset == text.index("ultra")
    assert span.length == len("ultra")
    assert (span.line, span.column) == (1, text.index("ultra") + 1)


def test_unknown_defense_reference():
    text = 'defense d1 "x"\ntree "T" { leaf L1 "a" { defenses: [d1, d99] } }'
    result = parse_document(text)
    assert _codes(result) == ["E_UNKNOWN_DEFENSE"]
    assert result.diagnostics[0].span.line == 2
    assert result.diagnostics[0].format().startswith("ERROR E_UNKNOWN_DEFENSE 2:")


def test_duplicate_catalog_entry_and_scenario_name():
    text = (
        'defense d1 "x"\ndefense d1 "y"\ntree "T" { leaf L1 "a" {} }\n'
        'scenario "s" { }\nscenario "s" { }\n'
    )
    assert _codes(parse_document(text)) == ["E_DUP_ID", "E_DUP_ID"]


def test_syntax_error_stops_at_offending_token():
    text = 'tree "T" {\n  leaf L1 "a" { defenses [d1] }\n}'
    result = parse_document(text)
    assert _codes(result) == ["E_SYNTAX"]
    diag = result.diagnostics[0]
    assert (diag.span.line, diag.span.column) == (2, 26)
    assert "expected ':'" in diag.message


@pytest.mark.parametrize(
    "text",
    [
        "",
        'tree "T" { }',
        'tree "T" { or "g" { } }',
        'tree "T" { leaf L1 "a" {} } extra',
        'tree "T" { leaf 1 "a" {} }',
        'tree "T" { leaf L1 "a" { origin: nowhere } }',
    ],
)
def test_syntax_errors(text):
    result = parse_document(text)
    assert _codes(result) == ["E_SYNTAX"]
    assert result.document is None


def test_scenario_changes():
    text = (
        'defense d1 "x"\ndefense d8 "y"\ntree "T" { leaf L1 "a" { defenses: [d1] } }\n'
        'scenario "s" {\n  add d8 to L1\n  remove d1 from L1\n  set-ids L1 standard\n}\n'
    )
    doc = parse_document(text).document
    assert doc.scenario("s").changes == (
        AddDefense(leaf_id="L1", defense_id="d8"),
        RemoveDefense(leaf_id="L1", defense_id="d1"),
        SetIds(leaf_id="L1", tier=IdsTier.standard),
    )
    assert doc.scenario("missing") is None


def test_scenario_unknown_references():
    text = 'defense d1 "x"\ntree "T" { leaf L1 "a" {} }\nscenario "s" { add d9 to L1 set-ids L7 minimal }'
    assert _codes(parse_document(text)) == ["E_UNKNOWN_DEFENSE", "E_UNKNOWN_LEAF"]


def test_keywords_are_contextual():
    text = 'defense to "x"\ntree "T" { or "g" { leaf or "a" { defenses: [to] } } }\nscenario "s" { remove to from or }'
    result = parse_document(text)
    assert result.ok
    assert result.document.tree.root.children[0].id == "or"


def test_defenses_are_put_in_catalog_order():
    text = 'defense a "x"\ndefense b "y"\ntree "T" { leaf L1 "z" { defenses: [b, a] } }'
    assert parse_document(text).document.tree.root.countermeasures == ("a", "b")


def test_validation_warnings_carry_leaf_span():
    text = 'defense d2 "IDS"\ntree "T" {\n  leaf L1 "a" { defenses: [d2] }\n}'
    result = parse_document(text)
    assert result.ok
    assert [d.code for d in result.warnings] == ["W_IDS_AS_DEFENSE"]
    assert result.warnings[0].span.line == 3


def test_load_document_from_alias(cav_document):
    assert cav_document.tree.name == "Connected and autonomous vehicle"
    assert [s.name for s in cav_document.scenarios] == ["improved"]


def test_load_document_missing_file(tmp_path):
    with pytest.raises(InputError):
        load_document(tmp_path / "missing.adt")


def test_load_document_with_byte_order_mark(tmp_path):
    path = tmp_path / "bom.adt"
    path.write_text('tree "T" { leaf L1 "a" {} }', encoding="utf-8-sig")
    assert path.read_bytes().startswith(b"\xef\xbb\xbf")
    assert load_document(path).tree.name == "T"


def test_load_document_unknown_alias():
    with pytest.raises(InputError):
        load_source("@nope")


def test_load_document_invalid_content(tmp_path):
    path = tmp_path / "bad.adt"
    path.write_text('tree "T" { leaf L1 "a" { ids: ultra } }', encoding="utf-8")
    with pytest.raises(DocumentError) as exc:
        load_document(path)
    assert exc.value.diagnostics[0].code == "E_BAD_TIER"


def test_data_dir_override(tmp_path, monkeypatch):
    from config.settings import reset_settings

    (tmp_path / "tiny.adt").write_text('tree "T" { leaf L1 "a" {} }', encoding="utf-8")
    monkeypatch.setenv("ADTREE_DATA_DIR", str(tmp_path))
    reset_settings()
    assert load_document("@tiny").tree.name == "T"
