"""Tokenizer for ``.adt`` documents."""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator, Optional

from schemas.diagnostic import SourceSpan

WORD = "word"
STRING = "string"
PUNCT = "punct"
EOF = "eof"
BAD = "bad"

# Words may contain inner hyphens so ``set-ids`` lexes as one token; the
# parser still rejects hyphenated words where an identifier is expected.
_TOKEN_RE = re.compile(
    r"""
    (?P<ws>[ \t\r\n]+)
  | (?P<comment>\#[^\n]*)
  | (?P<word>[A-Za-z][A-Za-z0-9_]*(?:-[A-Za-z][A-Za-z0-9_]*)*)
  | (?P<string>")
  | (?P<punct>[{}\[\]:,])
    """,
    re.VERBOSE,
)

_ESCAPES = {'"': '"', "\\": "\\"}


@dataclass(frozen=True)
class Token:
    kind: str
    value: str
    span: SourceSpan
    # Set on ``BAD`` tokens.
    error: Optional[str] = None

    def is_word(self, text: str) -> bool:
        return self.kind == WORD and self.value == text

    def is_punct(self, text: str) -> bool:
        return self.kind == PUNCT and self.value == text

    def describe(self) -> str:
        if self.kind == EOF:
            return "end of input"
        if self.kind == STRING:
            return "string"
        return repr(self.value)


class Lexer:
    """Turn document text into tokens with line/column/byte spans.

    Lexing never raises; malformed input yields a single ``BAD`` token
    followed by ``EOF`` so the parser reports it at the right place.
    """

    def __init__(self, text: str) -> None:
        self.text = text
        self.pos = 0
        self.line = 1
        self.col = 1
        self.byte = 0

    def _advance(self, end: int) -> None:
        chunk = self.text[self.pos : end]
        self.byte += len(chunk.encode("utf-8"))
        newlines = chunk.count("\n")
        if newlines:
            self.line += newlines
            self.col = len(chunk) - chunk.rfind("\n")
        else:
            self.col += len(chunk)
        self.pos = end

    def _span(self, end: int) -> SourceSpan:
        length = len(self.text[self.pos : end].encode("utf-8"))
        return SourceSpan(line=self.line, column=self.col, offset=self.byte, length=length)

    def _scan_string(self) -> tuple[int, Optional[str], Optional[str]]:
        """Return ``(end, value, error)`` for the string starting at ``pos``."""
        out: list[str] = []
        i = self.pos + 1
        while i < len(self.text):
            ch = self.text[i]
            if ch == '"':
                return i + 1, "".join(out), None
            if ch == "\r" and self.text.startswith("\r\n", i):
                # CRLF inside a string is read as LF
                out.append("\n")
                i += 2
                continue
            if ch == "\\":
                nxt = self.text[i + 1] if i + 1 < len(self.text) else ""
                if nxt not in _ESCAPES:
                    return i + 2 if nxt else i + 1, None, f"invalid escape '\\{nxt}'"
                out.append(_ESCAPES[nxt])
                i += 2
                continue
            out.append(ch)
            i += 1
        return i, None, "unterminated string"

    def tokens(self) -> Iterator[Token]:
        while self.pos < len(self.text):
            m = _TOKEN_RE.match(self.text, self.pos)
            if m is None:
                end = self.pos + 1
                ch = self.text[self.pos]
                yield Token(BAD, ch, self._span(end), error=f"unexpected character {ch!r}")
                break
            kind = m.lastgroup
            if kind in ("ws", "comment"):
                self._advance(m.end())
                continue
            if kind == "string":
                end, value, err = self._scan_string()
                span = self._span(end)
                if err is not None:
                    yield Token(BAD, self.text[self.pos : end], span, error=err)
                    break
                yield Token(STRING, value or "", span)
                self._advance(end)
                continue
            yield Token(WORD if kind == "word" else PUNCT, m.group(), self._span(m.end()))
            self._advance(m.end())
        else:
            yield Token(EOF, "", self._span(self.pos))
            return
        self._advance(len(self.text))
        yield Token(EOF, "", self._span(self.pos))


def tokenize(text: str) -> list[Token]:
    """Tokenize ``text``; the list always ends with an ``EOF`` token."""
    return list(Lexer(text).tokens())


__all__ = ["Token", "Lexer", "tokenize", "WORD", "STRING", "PUNCT", "EOF", "BAD"]
