"""Tokenizer for the supported C# subset."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

RESERVED_WORDS = frozenset({
    "namespace", "using", "class", "public", "private", "protected",
    "internal", "static", "readonly", "void", "new", "delegate", "event",
    "get", "set", "return", "if", "else", "for", "foreach", "while", "do",
    "switch", "case", "default", "break", "continue", "this", "base",
    "null", "true", "false", "int", "long", "float", "double", "bool",
    "string", "char", "object",
})

# Primitive type names: never resolved to a class object downstream.
PREDEFINED_TYPES = frozenset({
    "int", "long", "float", "double", "bool", "string", "char", "object", "void",
})


class TokenKind(Enum):
    IDENTIFIER = "Identifier"
    KEYWORD = "Keyword"
    INT_LITERAL = "IntLiteral"
    REAL_LITERAL = "RealLiteral"
    STRING_LITERAL = "StringLiteral"
    CHAR_LITERAL = "CharLiteral"
    BOOL_LITERAL = "BoolLiteral"
    PUNCT = "Punct"
    OPERATOR = "Operator"
    COMMENT = "Comment"


@dataclass(frozen=True)
class Token:
    kind: TokenKind
    lexeme: str
    line: int
    col: int


class LexError(Exception):
    """Unterminated string/comment or an illegal character."""

    def __init__(self, line: int, col: int, message: str):
        super().__init__(f"{line}:{col}: {message}")
        self.line = line
        self.col = col
        self.message = message


_PUNCT_CHARS = frozenset("{}()[];,.:")
_TWO_CHAR_OPS = frozenset({
    "==", "!=", "<=", ">=", "&&", "||", "++", "--",
    "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=", "<<", ">>", "??",
})
_ONE_CHAR_OPS = frozenset("=+-*/%<>!&|^~?")
_INT_SUFFIX = "uUlL"
_REAL_SUFFIX = "fFdDmM"


def tokenize(source: str) -> list[Token]:
    """Split source into tokens; whitespace dropped, comments kept as tokens."""
    tokens: list[Token] = []
    i = 0
    n = len(source)
    line = 1
    col = 1

    while i < n:
        c = source[i]
        if c == "\n":
            i += 1
            line += 1
            col = 1
            continue
        if c in " \t\r":
            i += 1
            col += 1
            continue

        start, start_line, start_col = i, line, col

        # comments
        if c == "/" and source.startswith("//", i):
            j = i + 2
            while j < n and source[j] != "\n":
                j += 1
            tokens.append(Token(TokenKind.COMMENT, source[i:j], start_line, start_col))
            col += j - i
            i = j
            continue
        if c == "/" and source.startswith("/*", i):
            j = i + 2
            cl, cc = line, col + 2
            closed = False
            while j < n:
                if source.startswith("*/", j):
                    j += 2
                    cc += 2
                    closed = True
                    break
                if source[j] == "\n":
                    cl += 1
                    cc = 1
                else:
                    cc += 1
                j += 1
            if not closed:
                raise LexError(start_line, start_col, "unterminated comment")
            tokens.append(Token(TokenKind.COMMENT, source[i:j], start_line, start_col))
            line, col, i = cl, cc, j
            continue

        # string literal (single line, backslash escapes)
        if c == '"':
            j = i + 1
            closed = False
            while j < n:
                ch = source[j]
                if ch == '"':
                    j += 1
                    closed = True
                    break
                if ch == "\n":
                    break
                if ch == "\\":
                    if j + 1 >= n or source[j + 1] == "\n":
                        break
                    j += 2
                    continue
                j += 1
            if not closed:
                raise LexError(start_line, start_col, "unterminated string literal")
            tokens.append(Token(TokenKind.STRING_LITERAL, source[i:j], start_line, start_col))
            col += j - i
            i = j
            continue

        # char literal
        if c == "'":
            j = i + 1
            closed = False
            while j < n:
                ch = source[j]
                if ch == "'":
                    j += 1
                    closed = True
                    break
                if ch == "\n":
                    break
                if ch == "\\":
                    if j + 1 >= n or source[j + 1] == "\n":
                        break
                    j += 2
                    continue
                j += 1
            if not closed or j - i < 3:
                raise LexError(start_line, start_col, "unterminated character literal")
            tokens.append(Token(TokenKind.CHAR_LITERAL, source[i:j], start_line, start_col))
            col += j - i
            i = j
            continue

        # numeric literal; a leading '.' starts one only when a digit follows
        if c.isdigit() or (c == "." and i + 1 < n and source[i + 1].isdigit()):
            j = i
            is_real = False
            if c == "0" and i + 1 < n and source[i + 1] in "xX":
                j = i + 2
                while j < n and source[j] in "0123456789abcdefABCDEF":
                    j += 1
                while j < n and source[j] in _INT_SUFFIX:
                    j += 1
            else:
                if c == ".":
                    is_real = True
                    j = i + 1
                while j < n and source[j].isdigit():
                    j += 1
                if not is_real and j < n and source[j] == "." and j + 1 < n and source[j + 1].isdigit():
                    is_real = True
                    j += 1
                    while j < n and source[j].isdigit():
                        j += 1
                if j < n and source[j] in "eE":
                    k = j + 1
                    if k < n and source[k] in "+-":
                        k += 1
                    if k < n and source[k].isdigit():
                        is_real = True
                        j = k
                        while j < n and source[j].isdigit():
                            j += 1
                if j < n and source[j] in _REAL_SUFFIX:
                    is_real = True
                    j += 1
                elif not is_real:
                    while j < n and source[j] in _INT_SUFFIX:
                        j += 1
            kind = TokenKind.REAL_LITERAL if is_real else TokenKind.INT_LITERAL
            tokens.append(Token(kind, source[i:j], start_line, start_col))
            col += j - i
            i = j
            continue

        # identifier / keyword / bool literal
        if c.isalpha() or c == "_":
            j = i + 1
            while j < n and (source[j].isalnum() or source[j] == "_"):
                j += 1
            word = source[i:j]
            if word in ("true", "false"):
                kind = TokenKind.BOOL_LITERAL
            elif word in RESERVED_WORDS:
                kind = TokenKind.KEYWORD
            else:
                kind = TokenKind.IDENTIFIER
            tokens.append(Token(kind, word, start_line, start_col))
            col += j - i
            i = j
            continue

        if source[i:i + 2] in _TWO_CHAR_OPS:
            tokens.append(Token(TokenKind.OPERATOR, source[i:i + 2], start_line, start_col))
            col += 2
            i += 2
            continue
        if c in _PUNCT_CHARS:
            tokens.append(Token(TokenKind.PUNCT, c, start_line, start_col))
            col += 1
            i += 1
            continue
        if c in _ONE_CHAR_OPS:
            tokens.append(Token(TokenKind.OPERATOR, c, start_line, start_col))
            col += 1
            i += 1
            continue

        raise LexError(start_line, start_col, f"illegal character {c!r}")

    return tokens
