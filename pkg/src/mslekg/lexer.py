"""Tokenizer shared by the Turtle and query parsers.

Every token records its 1-based line and column so parse errors always
point at a real character of the input.
"""

from __future__ import annotations

import re
from bisect import bisect_right
from dataclasses import dataclass

# Token types.
IRIREF = "IRIREF"
PNAME = "PNAME"
BLANK = "BLANK"
STRING = "STRING"
ATNAME = "ATNAME"  # @prefix directive or language tag; parser decides
HATHAT = "HATHAT"
INTEGER = "INTEGER"
DECIMAL = "DECIMAL"
VAR = "VAR"
WORD = "WORD"
PUNCT = "PUNCT"
EOF = "EOF"


class ParseError(Exception):
    """Syntax error with 1-based position and the offending text fragment."""

    def __init__(self, message: str, line: int, column: int, snippet: str = ""):
        self.message = message
        self.line = line
        self.column = column
        self.snippet = snippet
        where = f"line {line}, column {column}: {message}"
        if snippet:
            where += f" (near {snippet!r})"
        super().__init__(where)


@dataclass(frozen=True)
class Token:
    type: str
    value: object
    line: int
    column: int
    text: str

    def describe(self) -> str:
        if self.type == EOF:
            return "end of input"
        return repr(self.text)


_WS = re.compile(r"[ \t\r\n]+")
_COMMENT = re.compile(r"#[^\n]*")
_IRIREF = re.compile(r"<([^<>\s]*)>")
_STRING = re.compile(r'"((?:[^"\\\n\r]|\\.)*)"')
_BLANK = re.compile(r"_:([A-Za-z0-9][A-Za-z0-9_-]*)")
_PNAME = re.compile(r"((?:[A-Za-z][A-Za-z0-9_-]*)?):((?:[A-Za-z0-9_][A-Za-z0-9_.-]*)?)")
_ATNAME = re.compile(r"@([A-Za-z]+(?:-[A-Za-z0-9]+)*)")
_DECIMAL = re.compile(r"[+-]?[0-9]*\.[0-9]+")
_INTEGER = re.compile(r"[+-]?[0-9]+")
_VAR = re.compile(r"\?([A-Za-z_][A-Za-z0-9_]*)")
_WORD = re.compile(r"[A-Za-z][A-Za-z0-9_]*")
_PUNCT = ".;,[]{}()*"

_UNESCAPE = {"\\": "\\", '"': '"', "n": "\n", "t": "\t", "r": "\r"}


class _Positions:
    def __init__(self, text: str):
        self.starts = [0]
        for i, c in enumerate(text):
            if c == "\n":
                self.starts.append(i + 1)

    def linecol(self, offset: int) -> tuple[int, int]:
        line = bisect_right(self.starts, offset)
        return line, offset - self.starts[line - 1] + 1


def _unescape(raw: str, pos: _Positions, offset: int) -> str:
    out = []
    i = 0
    while i < len(raw):
        c = raw[i]
        if c != "\\":
            out.append(c)
            i += 1
            continue
        code = raw[i + 1]  # regex guarantees a character follows
        if code not in _UNESCAPE:
            line, col = pos.linecol(offset + 1 + i)
            raise ParseError(f"invalid string escape '\\{code}'", line, col, f"\\{code}")
        out.append(_UNESCAPE[code])
        i += 2
    return "".join(out)


def tokenize(text: str) -> list[Token]:
    """Lex the full input; raises ParseError on the first bad character."""
    pos = _Positions(text)
    tokens: list[Token] = []
    i = 0
    n = len(text)

    def emit(type_: str, value: object, start: int, end: int):
        line, col = pos.linecol(start)
        tokens.append(Token(type_, value, line, col, text[start:end]))

    while i < n:
        m = _WS.match(text, i)
        if m:
            i = m.end()
            continue
        m = _COMMENT.match(text, i)
        if m:
            i = m.end()
            continue
        m = _IRIREF.match(text, i)
        if m:
            emit(IRIREF, m.group(1), i, m.end())
            i = m.end()
            continue
        if text[i] == '"':
            m = _STRING.match(text, i)
            if not m:
                line, col = pos.linecol(i)
                raise ParseError("unterminated string literal", line, col, text[i : i + 10])
            emit(STRING, _unescape(m.group(1), pos, i), i, m.end())
            i = m.end()
            continue
        if text.startswith("^^", i):
            emit(HATHAT, "^^", i, i + 2)
            i += 2
            continue
        m = _BLANK.match(text, i)
        if m:
            emit(BLANK, m.group(1), i, m.end())
            i = m.end()
            continue
        m = _PNAME.match(text, i)
        if m:
            label, local = m.group(1), m.group(2)
            end = m.end()
            while local.endswith("."):  # statement dot glued to a local name
                local = local[:-1]
                end -= 1
            emit(PNAME, (label, local), i, end)
            i = end
            continue
        m = _ATNAME.match(text, i)
        if m:
            emit(ATNAME, m.group(1), i, m.end())
            i = m.end()
            continue
        m = _VAR.match(text, i)
        if m:
            emit(VAR, m.group(1), i, m.end())
            i = m.end()
            continue
        m = _DECIMAL.match(text, i)
        if m:
            emit(DECIMAL, m.group(0), i, m.end())
            i = m.end()
            continue
        m = _INTEGER.match(text, i)
        if m:
            emit(INTEGER, m.group(0), i, m.end())
            i = m.end()
            continue
        m = _WORD.match(text, i)
        if m:
            emit(WORD, m.group(0), i, m.end())
            i = m.end()
            continue
        if text[i] in _PUNCT:
            emit(PUNCT, text[i], i, i + 1)
            i += 1
            continue
        line, col = pos.linecol(i)
        raise ParseError(f"unexpected character {text[i]!r}", line, col, text[i : i + 10])

    line, col = pos.linecol(n)
    tokens.append(Token(EOF, "", line, col, ""))
    return tokens


class TokenCursor:
    """Sequential token reader with positioned error helpers."""

    def __init__(self, tokens: list[Token]):
        self._tokens = tokens
        self._i = 0

    def peek(self, ahead: int = 0) -> Token:
        return self._tokens[min(self._i + ahead, len(self._tokens) - 1)]

    def next(self) -> Token:
        tok = self._tokens[self._i]
        if tok.type != EOF:
            self._i += 1
        return tok

    def expect(self, type_: str, what: str) -> Token:
        tok = self.next()
        if tok.type != type_:
            raise ParseError(f"expected {what}, got {tok.describe()}", tok.line, tok.column, tok.text)
        return tok

    def error(self, message: str, token: Token | None = None):
        tok = token or self.peek()
        raise ParseError(message, tok.line, tok.column, tok.text)
