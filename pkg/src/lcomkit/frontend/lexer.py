"""Tokenizer for the Java-like source subset.

Comments and whitespace are dropped; string, text-block and character
literals become single opaque tokens so nothing inside them is scanned.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import List

IDENT = "ident"
NUMBER = "number"
STRING = "string"
OP = "op"
EOF = "eof"

_TOKEN_PATTERNS = [
    ("ws", r"\s+"),
    ("line_comment", r"//[^\n]*"),
    ("block_comment", r"/\*.*?\*/"),
    ("text_block", r'""".*?"""'),
    (STRING, r'"(?:\\.|[^"\\\n])*"'),
    ("char", r"'(?:\\.|[^'\\\n])+'"),
    (NUMBER, r"\.?\d(?:[\w.]|[eEpP][+-])*"),
    (IDENT, r"[^\W\d]\w*|\$[\w$]*"),
    ("multi", r"\.\.\.|->|::"),
    ("bad_comment", r"/\*"),
    ("bad_string", r"[\"']"),
    (OP, r"\S"),
]
_MASTER = re.compile("|".join(f"(?P<{name}>{pat})" for name, pat in _TOKEN_PATTERNS), re.DOTALL)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    column: int

    def __repr__(self):
        return f"Token({self.kind}, {self.text!r}, {self.line}:{self.column})"


class LexError(Exception):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(message)
        self.message = message
        self.line = line
        self.column = column


def tokenize(text: str) -> List[Token]:
    tokens: List[Token] = []
    line, line_start = 1, 0
    for m in _MASTER.finditer(text):
        kind = m.lastgroup
        start = m.start()
        col = start - line_start + 1
        if kind == "bad_comment":
            raise LexError("unterminated block comment", line, col)
        if kind == "bad_string":
            raise LexError("unterminated literal", line, col)
        if kind in ("text_block", "char"):
            kind = STRING
        elif kind == "multi":
            kind = OP
        if kind not in ("ws", "line_comment", "block_comment"):
            tokens.append(Token(kind, m.group(), line, col))
        newlines = m.group().count("\n")
        if newlines:
            line += newlines
            line_start = m.start() + m.group().rfind("\n") + 1
    tokens.append(Token(EOF, "", line, len(text) - line_start + 1))
    return tokens
