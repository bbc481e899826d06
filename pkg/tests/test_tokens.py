from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from cstracer.tokens import LexError, TokenKind, tokenize


def kinds_and_lexemes(source):
    return [(t.kind, t.lexeme) for t in tokenize(source)]


def test_method_call_statement():
    assert kinds_and_lexemes("rd.Render(glControl);") == [
        (TokenKind.IDENTIFIER, "rd"),
        (TokenKind.PUNCT, "."),
        (TokenKind.IDENTIFIER, "Render"),
        (TokenKind.PUNCT, "("),
        (TokenKind.IDENTIFIER, "glControl"),
        (TokenKind.PUNCT, ")"),
        (TokenKind.PUNCT, ";"),
    ]


def test_empty_source():
    assert tokenize("") == []


def test_class_declaration():
    assert kinds_and_lexemes("class CleanupControl { }") == [
        (TokenKind.KEYWORD, "class"),
        (TokenKind.IDENTIFIER, "CleanupControl"),
        (TokenKind.PUNCT, "{"),
        (TokenKind.PUNCT, "}"),
    ]


def test_bool_and_null_literals():
    kinds = [t.kind for t in tokenize("true false null")]
    assert kinds == [TokenKind.BOOL_LITERAL, TokenKind.BOOL_LITERAL, TokenKind.KEYWORD]


def test_numeric_literals():
    assert [t.kind for t in tokenize("42 0x1F 3L")] == [TokenKind.INT_LITERAL] * 3
    assert [t.kind for t in tokenize("1.5 2f .25 1e3 6.02e23d")] == [TokenKind.REAL_LITERAL] * 5


def test_member_dot_not_part_of_number():
    kinds = [t.kind for t in tokenize("rd.Render")]
    assert kinds == [TokenKind.IDENTIFIER, TokenKind.PUNCT, TokenKind.IDENTIFIER]


def test_string_and_char_literals():
    toks = tokenize('x = "a \\"quoted\\" bit"; c = \'\\n\';')
    assert (TokenKind.STRING_LITERAL, '"a \\"quoted\\" bit"') in [(t.kind, t.lexeme) for t in toks]
    assert any(t.kind is TokenKind.CHAR_LITERAL for t in toks)


def test_comments_are_tokens():
    toks = tokenize("// line\n/* block\n spans */ x")
    assert [t.kind for t in toks] == [TokenKind.COMMENT, TokenKind.COMMENT, TokenKind.IDENTIFIER]
    assert toks[2].line == 3


def test_operators_longest_match():
    lexemes = [t.lexeme for t in tokenize("a += b++ <= c && d")]
    assert lexemes == ["a", "+=", "b", "++", "<=", "c", "&&", "d"]


def test_positions_are_one_based():
    toks = tokenize("a\n  b")
    assert (toks[0].line, toks[0].col) == (1, 1)
    assert (toks[1].line, toks[1].col) == (2, 3)


def test_unterminated_string():
    with pytest.raises(LexError) as exc:
        tokenize('x = "oops\n')
    assert exc.value.line == 1


def test_unterminated_comment():
    with pytest.raises(LexError):
        tokenize("/* never closed")


def test_illegal_character():
    with pytest.raises(LexError) as exc:
        tokenize("int x = 1; #endif")
    assert exc.value.col == 12


def _slice_at(source: str, line: int, col: int) -> str:
    text = source.split("\n")[line - 1]
    return text[col - 1:]


@given(st.lists(st.sampled_from(
    ["alpha", "Render", "_x9", "42", "3.5f", '"s"', "{", "}", "(", ")", ";", ",",
     ".", "+", "==", "&&", "class", "if", "true"]), max_size=30),
    st.sampled_from([" ", "  ", "\n", "\t", " \n "]))
def test_position_fidelity(words, sep):
    source = sep.join(words)
    for tok in tokenize(source):
        assert _slice_at(source, tok.line, tok.col).startswith(tok.lexeme)


@given(st.lists(st.sampled_from(["x", "1", "+", ";", "foo", '"str"', "=="]), max_size=20))
def test_whitespace_only_dropped(words):
    source = " ".join(words)
    rebuilt = "".join(t.lexeme for t in tokenize(source))
    assert rebuilt == source.replace(" ", "")
