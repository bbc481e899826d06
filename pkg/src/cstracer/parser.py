"""Recursive-descent parser for the C# subset.

Declarations are parsed into full structure; method, constructor, and property
accessor bodies are flattened into BodyEvent lists. Control-flow statements
contribute no events of their own: only the identifier reads, assignment-target
writes, calls, object creations, and local declarations inside them are kept,
in source evaluation order (receiver before arguments before the call event;
right side of an assignment before the write of its target; compound
assignment and ++/-- read the target before writing it).

Grammar violations raise ParseError in strict mode; the Parser class recovers
by skipping to the next ';' or '}' and collects every error, so one bad member
does not void a file.
"""

from __future__ import annotations

from dataclasses import dataclass

from .tokens import PREDEFINED_TYPES, Token, TokenKind, tokenize
from .syntax import (
    BodyEvent,
    CallEvent,
    ClassDecl,
    ConstructorDecl,
    DelegateDecl,
    EventDecl,
    FieldDecl,
    LocalEvent,
    MethodDecl,
    NamespaceDecl,
    NewEvent,
    Param,
    PropertyDecl,
    SyntaxTree,
    UseEvent,
)


class ParseError(Exception):
    def __init__(self, line: int, col: int, expected: str, found: str):
        super().__init__(f"{line}:{col}: expected {expected}, found {found}")
        self.line = line
        self.col = col
        self.expected = expected
        self.found = found


_ACCESS_MODIFIERS = ("public", "private", "protected", "internal")
_MODIFIERS = frozenset({"public", "private", "protected", "internal", "static", "readonly"})
_ASSIGN_OPS = frozenset({"=", "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^="})
_UNSUPPORTED_DECL_WORDS = frozenset({"interface", "struct", "enum", "partial"})

_LITERAL_KINDS = frozenset({
    TokenKind.INT_LITERAL, TokenKind.REAL_LITERAL, TokenKind.STRING_LITERAL,
    TokenKind.CHAR_LITERAL, TokenKind.BOOL_LITERAL,
})


# ── internal expression nodes (flattened right after each statement) ──

@dataclass
class _Name:
    parts: list[str]


@dataclass
class _Lit:
    pass


@dataclass
class _Member:
    obj: object
    name: str


@dataclass
class _Index:
    obj: object
    indexes: list


@dataclass
class _CallName:
    parts: list[str]
    args: list


@dataclass
class _CallOn:
    obj: object
    name: str
    args: list


@dataclass
class _New:
    type_name: str
    args: list


@dataclass
class _NewArray:
    type_name: str
    size: object


@dataclass
class _Assign:
    target: object
    op: str
    value: object


@dataclass
class _IncDec:
    target: object


@dataclass
class _Unary:
    operand: object


@dataclass
class _Binary:
    left: object
    right: object


@dataclass
class _Ternary:
    cond: object
    then: object
    other: object


@dataclass
class _Cast:
    operand: object


class Parser:
    """Parses a token stream, collecting ParseErrors while recovering."""

    def __init__(self, tokens: list[Token]):
        self._doc_by_end_line = _doc_blocks(tokens)
        self.tokens = [t for t in tokens if t.kind is not TokenKind.COMMENT]
        self.pos = 0
        self.errors: list[ParseError] = []

    # ── token access ──────────────────────────────────────────────

    def _cur(self) -> Token | None:
        if self.pos < len(self.tokens):
            return self.tokens[self.pos]
        return None

    def _peek(self, offset: int = 1) -> Token | None:
        idx = self.pos + offset
        if idx < len(self.tokens):
            return self.tokens[idx]
        return None

    def _at_end(self) -> bool:
        return self.pos >= len(self.tokens)

    def _at_punct(self, ch: str) -> bool:
        t = self._cur()
        return t is not None and t.kind is TokenKind.PUNCT and t.lexeme == ch

    def _at_op(self, *ops: str) -> bool:
        t = self._cur()
        return t is not None and t.kind is TokenKind.OPERATOR and t.lexeme in ops

    def _at_keyword(self, *words: str) -> bool:
        t = self._cur()
        return t is not None and t.kind is TokenKind.KEYWORD and t.lexeme in words

    def _advance(self) -> Token:
        t = self._cur()
        if t is None:
            raise self._err("token", None)
        self.pos += 1
        return t

    def _err(self, expected: str, found: Token | None) -> ParseError:
        if found is None:
            last = self.tokens[-1] if self.tokens else None
            line = last.line if last else 1
            col = last.col + len(last.lexeme) if last else 1
            return ParseError(line, col, expected, "end of input")
        return ParseError(found.line, found.col, expected, found.lexeme)

    def _expect_punct(self, ch: str) -> Token:
        if self._at_punct(ch):
            return self._advance()
        raise self._err(f"'{ch}'", self._cur())

    def _expect_keyword(self, word: str) -> Token:
        if self._at_keyword(word):
            return self._advance()
        raise self._err(f"'{word}'", self._cur())

    def _expect_ident(self, what: str = "identifier") -> Token:
        t = self._cur()
        if t is not None and t.kind is TokenKind.IDENTIFIER:
            return self._advance()
        raise self._err(what, t)

    def _panic(self) -> None:
        """Skip to just past the next ';' or '}', treating any brace group
        opened along the way as one unit, so a bad member does not void
        its siblings."""
        depth = 0
        while not self._at_end():
            if self._at_punct(";") and depth == 0:
                self._advance()
                return
            if self._at_punct("{"):
                depth += 1
                self._advance()
                continue
            if self._at_punct("}"):
                if depth == 0:
                    return
                depth -= 1
                self._advance()
                if depth == 0:
                    return
                continue
            self._advance()

    # ── doc comments ──────────────────────────────────────────────

    def _doc_for(self, first_line: int) -> str | None:
        return self._doc_by_end_line.get(first_line - 1)

    # ── top level ─────────────────────────────────────────────────

    def parse(self) -> SyntaxTree:
        tree = SyntaxTree()
        while self._at_keyword("using"):
            try:
                self._advance()
                tree.usings.append(self._qualified_name())
                self._expect_punct(";")
            except ParseError as e:
                self.errors.append(e)
                self._panic()
        while not self._at_end():
            if self._at_punct("}"):
                self.errors.append(self._err("declaration", self._cur()))
                self._advance()
                continue
            try:
                tree.members.append(self._namespace_member())
            except ParseError as e:
                self.errors.append(e)
                self._panic()
                if self._at_punct("}"):
                    self._advance()
        return tree

    def _qualified_name(self) -> str:
        parts = [self._expect_ident("qualified name").lexeme]
        while self._at_punct("."):
            self._advance()
            parts.append(self._expect_ident("identifier after '.'").lexeme)
        return ".".join(parts)

    def _namespace_member(self):
        t = self._cur()
        if t is None:
            raise self._err("declaration", None)
        doc = self._doc_for(t.line)
        if self._at_keyword("namespace"):
            return self._namespace_decl(doc)
        return self._type_decl(doc)

    def _namespace_decl(self, doc: str | None) -> NamespaceDecl:
        self._expect_keyword("namespace")
        name = self._qualified_name()
        ns = NamespaceDecl(name=name, doc=doc)
        self._expect_punct("{")
        while not self._at_punct("}"):
            if self._at_end():
                raise self._err("'}'", None)
            try:
                ns.members.append(self._namespace_member())
            except ParseError as e:
                self.errors.append(e)
                self._panic()
        self._expect_punct("}")
        return ns

    def _modifiers(self) -> str:
        access = "none"
        seen_access = False
        while True:
            t = self._cur()
            if t is None or t.kind is not TokenKind.KEYWORD or t.lexeme not in _MODIFIERS:
                return access
            if t.lexeme in _ACCESS_MODIFIERS and not seen_access:
                access = t.lexeme
                seen_access = True
            self._advance()

    def _type_decl(self, doc: str | None):
        access = self._modifiers()
        if self._at_keyword("class"):
            return self._class_decl(access, doc)
        if self._at_keyword("delegate"):
            return self._delegate_decl(access, doc)
        t = self._cur()
        if t is not None and t.kind is TokenKind.IDENTIFIER and t.lexeme in _UNSUPPORTED_DECL_WORDS:
            raise self._err("'class' or 'delegate' (unsupported declaration kind)", t)
        raise self._err("'class' or 'delegate'", t)

    def _class_decl(self, access: str, doc: str | None) -> ClassDecl:
        self._expect_keyword("class")
        name = self._expect_ident("class name").lexeme
        decl = ClassDecl(name=name, accessibility=access, doc=doc)
        if self._at_op("<"):
            raise self._err("class body (generics are not supported)", self._cur())
        if self._at_punct(":"):
            self._advance()
            decl.bases.append(self._type_text())
            while self._at_punct(","):
                self._advance()
                decl.bases.append(self._type_text())
        self._expect_punct("{")
        while not self._at_punct("}"):
            if self._at_end():
                raise self._err("'}'", None)
            try:
                member = self._class_member(name)
                if isinstance(member, list):  # multi-declarator field
                    decl.members.extend(member)
                else:
                    decl.members.append(member)
            except ParseError as e:
                self.errors.append(e)
                self._panic()
        self._expect_punct("}")
        return decl

    def _delegate_decl(self, access: str, doc: str | None) -> DelegateDecl:
        self._expect_keyword("delegate")
        returns = self._type_text()
        name = self._expect_ident("delegate name").lexeme
        params = self._param_list()
        self._expect_punct(";")
        return DelegateDecl(name=name, returns=returns, params=params,
                            accessibility=access, doc=doc)

    # ── class members ─────────────────────────────────────────────

    def _class_member(self, class_name: str):
        t = self._cur()
        if t is None:
            raise self._err("member declaration", None)
        if t.kind is TokenKind.PUNCT and t.lexeme == "[":
            raise self._err("member declaration (attributes are not supported)", t)
        doc = self._doc_for(t.line)
        access = self._modifiers()
        if self._at_keyword("class"):
            return self._class_decl(access, doc)
        if self._at_keyword("delegate"):
            return self._delegate_decl(access, doc)
        if self._at_keyword("event"):
            self._advance()
            type_name = self._type_text()
            name = self._expect_ident("event name").lexeme
            self._expect_punct(";")
            return EventDecl(name=name, type_name=type_name, accessibility=access, doc=doc)

        # constructor: bare class name followed by '('
        t = self._cur()
        nxt = self._peek()
        if (t is not None and t.kind is TokenKind.IDENTIFIER and t.lexeme == class_name
                and nxt is not None and nxt.kind is TokenKind.PUNCT and nxt.lexeme == "("):
            return self._constructor_decl(access, doc)

        if (t is not None and t.kind is TokenKind.IDENTIFIER
                and t.lexeme in _UNSUPPORTED_DECL_WORDS):
            raise self._err("member declaration (unsupported declaration kind)", t)

        type_name = self._type_text()
        name = self._expect_ident("member name").lexeme
        if self._at_punct("("):
            params = self._param_list()
            body = self._body_block()
            return MethodDecl(name=name, returns=type_name, params=params, body=body,
                              accessibility=access, doc=doc)
        if self._at_punct("{"):
            return self._property_decl(name, type_name, access, doc)
        return self._field_decls(name, type_name, access, doc)

    def _constructor_decl(self, access: str, doc: str | None) -> ConstructorDecl:
        self._expect_ident("constructor name")
        params = self._param_list()
        events: list[BodyEvent] = []
        if self._at_punct(":"):
            # this(...)/base(...) initializer is recorded as a call event
            self._advance()
            t = self._cur()
            if not self._at_keyword("this", "base"):
                raise self._err("'this' or 'base'", t)
            target = self._advance().lexeme
            args = self._arg_list()
            for a in args:
                self._emit_reads(a, events)
            events.append(CallEvent(name=target, argc=len(args)))
        body = self._body_block(events)
        return ConstructorDecl(params=params, body=body, accessibility=access, doc=doc)

    def _property_decl(self, name: str, type_name: str, access: str,
                       doc: str | None) -> PropertyDecl:
        prop = PropertyDecl(name=name, type_name=type_name, accessibility=access, doc=doc)
        self._expect_punct("{")
        while not self._at_punct("}"):
            if self._at_end():
                raise self._err("'}'", None)
            self._modifiers()  # accessor-level access modifiers are accepted and dropped
            t = self._cur()
            if not self._at_keyword("get", "set"):
                raise self._err("'get' or 'set'", t)
            role = self._advance().lexeme
            if self._at_punct(";"):
                self._advance()
                body: list[BodyEvent] = []
            else:
                body = self._body_block()
            if role == "get":
                if prop.getter is not None:
                    raise self._err("'set' (duplicate get accessor)", t)
                prop.getter = body
            else:
                if prop.setter is not None:
                    raise self._err("'get' (duplicate set accessor)", t)
                prop.setter = body
        self._expect_punct("}")
        return prop

    def _field_decls(self, first_name: str, type_name: str, access: str,
                     doc: str | None) -> list[FieldDecl]:
        # Multi-declarator field; initializer expressions are parsed and dropped
        # (the IR has no field bodies).
        decls = [FieldDecl(name=first_name, type_name=type_name, accessibility=access, doc=doc)]
        if self._at_op("="):
            self._advance()
            self._expression()
        while self._at_punct(","):
            self._advance()
            name = self._expect_ident("field name").lexeme
            decls.append(FieldDecl(name=name, type_name=type_name, accessibility=access, doc=doc))
            if self._at_op("="):
                self._advance()
                self._expression()
        self._expect_punct(";")
        return decls

    def _param_list(self) -> list[Param]:
        self._expect_punct("(")
        params: list[Param] = []
        if not self._at_punct(")"):
            while True:
                type_name = self._type_text()
                name = self._expect_ident("parameter name").lexeme
                params.append(Param(name=name, type_name=type_name))
                if self._at_punct(","):
                    self._advance()
                    continue
                break
        self._expect_punct(")")
        return params

    # ── types ─────────────────────────────────────────────────────

    def _type_text(self) -> str:
        t = self._cur()
        if t is not None and t.kind is TokenKind.KEYWORD and t.lexeme in PREDEFINED_TYPES:
            text = self._advance().lexeme
        elif t is not None and t.kind is TokenKind.IDENTIFIER:
            text = self._qualified_name()
        else:
            raise self._err("type", t)
        while self._at_punct("["):
            nxt = self._peek()
            if nxt is None or nxt.kind is not TokenKind.PUNCT or nxt.lexeme != "]":
                break
            self._advance()
            self._advance()
            text += "[]"
        return text

    def _type_text_quiet(self) -> str | None:
        mark = self.pos
        try:
            return self._type_text()
        except ParseError:
            self.pos = mark
            return None

    # ── statements, flattened into events ─────────────────────────

    def _body_block(self, events: list[BodyEvent] | None = None) -> list[BodyEvent]:
        events = [] if events is None else events
        self._expect_punct("{")
        self._statements_until_close(events)
        for i, ev in enumerate(events):
            ev.seq = i + 1
        return events

    def _statements_until_close(self, events: list[BodyEvent]) -> None:
        while not self._at_punct("}"):
            if self._at_end():
                raise self._err("'}'", None)
            try:
                self._statement(events)
            except ParseError as e:
                self.errors.append(e)
                self._panic()
        self._advance()

    def _statement(self, events: list[BodyEvent]) -> None:
        t = self._cur()
        if t is None:
            raise self._err("statement", None)
        if self._at_punct("{"):
            self._advance()
            self._statements_until_close(events)
            return
        if self._at_punct(";"):
            self._advance()
            return
        if t.kind is TokenKind.KEYWORD:
            word = t.lexeme
            if word == "if":
                self._if_statement(events)
                return
            if word == "while":
                self._advance()
                self._expect_punct("(")
                self._emit_reads(self._expression(), events)
                self._expect_punct(")")
                self._statement(events)
                return
            if word == "do":
                self._advance()
                self._statement(events)
                self._expect_keyword("while")
                self._expect_punct("(")
                self._emit_reads(self._expression(), events)
                self._expect_punct(")")
                self._expect_punct(";")
                return
            if word == "for":
                self._for_statement(events)
                return
            if word == "foreach":
                self._foreach_statement(events)
                return
            if word == "switch":
                self._switch_statement(events)
                return
            if word == "return":
                self._advance()
                if not self._at_punct(";"):
                    self._emit_reads(self._expression(), events)
                self._expect_punct(";")
                return
            if word in ("break", "continue"):
                self._advance()
                self._expect_punct(";")
                return
            if word in PREDEFINED_TYPES and word != "void":
                self._local_decl(events)
                return
        if t.kind is TokenKind.IDENTIFIER and self._starts_local_decl():
            self._local_decl(events)
            return
        self._emit_reads(self._expression(), events)
        self._expect_punct(";")

    def _starts_local_decl(self) -> bool:
        mark = self.pos
        try:
            self._type_text()
        except ParseError:
            self.pos = mark
            return False
        t = self._cur()
        self.pos = mark
        return t is not None and t.kind is TokenKind.IDENTIFIER

    def _local_decl(self, events: list[BodyEvent], terminated: bool = True) -> None:
        type_name = self._type_text()
        while True:
            name = self._expect_ident("local variable name").lexeme
            events.append(LocalEvent(name=name, type_name=type_name))
            if self._at_op("="):
                self._advance()
                self._emit_reads(self._expression(), events)
                events.append(UseEvent(name=name, kind="write"))
            if self._at_punct(","):
                self._advance()
                continue
            break
        if terminated:
            self._expect_punct(";")

    def _if_statement(self, events: list[BodyEvent]) -> None:
        self._expect_keyword("if")
        self._expect_punct("(")
        self._emit_reads(self._expression(), events)
        self._expect_punct(")")
        self._statement(events)
        if self._at_keyword("else"):
            self._advance()
            self._statement(events)

    def _for_statement(self, events: list[BodyEvent]) -> None:
        # events appear in source order: initializer, condition, increment, body
        self._expect_keyword("for")
        self._expect_punct("(")
        if not self._at_punct(";"):
            tk = self._cur()
            is_decl = (tk is not None and tk.kind is TokenKind.KEYWORD
                       and tk.lexeme in PREDEFINED_TYPES and tk.lexeme != "void")
            if not is_decl and tk is not None and tk.kind is TokenKind.IDENTIFIER:
                is_decl = self._starts_local_decl()
            if is_decl:
                self._local_decl(events, terminated=False)
            else:
                self._emit_reads(self._expression(), events)
                while self._at_punct(","):
                    self._advance()
                    self._emit_reads(self._expression(), events)
        self._expect_punct(";")
        if not self._at_punct(";"):
            self._emit_reads(self._expression(), events)
        self._expect_punct(";")
        if not self._at_punct(")"):
            self._emit_reads(self._expression(), events)
            while self._at_punct(","):
                self._advance()
                self._emit_reads(self._expression(), events)
        self._expect_punct(")")
        self._statement(events)

    def _foreach_statement(self, events: list[BodyEvent]) -> None:
        self._expect_keyword("foreach")
        self._expect_punct("(")
        type_name = self._type_text()
        name = self._expect_ident("loop variable name").lexeme
        t = self._cur()
        if t is None or t.kind is not TokenKind.IDENTIFIER or t.lexeme != "in":
            raise self._err("'in'", t)
        self._advance()
        events.append(LocalEvent(name=name, type_name=type_name))
        self._emit_reads(self._expression(), events)
        events.append(UseEvent(name=name, kind="write"))
        self._expect_punct(")")
        self._statement(events)

    def _switch_statement(self, events: list[BodyEvent]) -> None:
        self._expect_keyword("switch")
        self._expect_punct("(")
        self._emit_reads(self._expression(), events)
        self._expect_punct(")")
        self._expect_punct("{")
        while not self._at_punct("}"):
            if self._at_end():
                raise self._err("'}'", None)
            if self._at_keyword("case"):
                self._advance()
                self._emit_reads(self._conditional(), events)
                self._expect_punct(":")
                continue
            if self._at_keyword("default"):
                self._advance()
                self._expect_punct(":")
                continue
            try:
                self._statement(events)
            except ParseError as e:
                self.errors.append(e)
                self._panic()
        self._advance()

    # ── expressions (parsed to a small tree, then flattened) ──────

    def _expression(self):
        left = self._conditional()
        if self._at_op(*_ASSIGN_OPS):
            op_tok = self._advance()
            if not isinstance(left, (_Name, _Member, _Index)):
                raise ParseError(op_tok.line, op_tok.col, "assignable expression",
                                 op_tok.lexeme)
            value = self._expression()
            return _Assign(target=left, op=op_tok.lexeme, value=value)
        return left

    def _conditional(self):
        cond = self._binary(0)
        if self._at_op("?"):
            self._advance()
            then = self._expression()
            self._expect_punct(":")
            other = self._expression()
            return _Ternary(cond=cond, then=then, other=other)
        return cond

    _BINARY_LEVELS = (
        ("??",), ("||",), ("&&",), ("|",), ("^",), ("&",),
        ("==", "!="), ("<", ">", "<=", ">="), ("<<", ">>"),
        ("+", "-"), ("*", "/", "%"),
    )

    def _binary(self, level: int):
        if level >= len(self._BINARY_LEVELS):
            return self._unary()
        ops = self._BINARY_LEVELS[level]
        left = self._binary(level + 1)
        while self._at_op(*ops):
            self._advance()
            right = self._binary(level + 1)
            left = _Binary(left=left, right=right)
        return left

    def _unary(self):
        if self._at_op("!", "-", "+", "~"):
            self._advance()
            return _Unary(operand=self._unary())
        if self._at_op("++", "--"):
            tok = self._advance()
            operand = self._unary()
            if not isinstance(operand, (_Name, _Member, _Index)):
                raise ParseError(tok.line, tok.col, "assignable expression", tok.lexeme)
            return _IncDec(target=operand)
        if self._at_punct("(") and self._cast_ahead():
            self._advance()
            self._type_text()
            self._expect_punct(")")
            return _Cast(operand=self._unary())
        return self._postfix()

    def _cast_ahead(self) -> bool:
        """At '(': true when '(type)' is followed by the start of an operand."""
        mark = self.pos
        self._advance()
        ok = False
        if self._type_text_quiet() is not None and self._at_punct(")"):
            nxt = self._peek()
            if nxt is not None and (
                nxt.kind in (TokenKind.IDENTIFIER, *_LITERAL_KINDS)
                or (nxt.kind is TokenKind.PUNCT and nxt.lexeme == "(")
                or (nxt.kind is TokenKind.KEYWORD and nxt.lexeme in ("this", "base", "new", "null"))
                or (nxt.kind is TokenKind.OPERATOR and nxt.lexeme in ("!", "~"))
            ):
                ok = True
        self.pos = mark
        return ok

    def _postfix(self):
        expr = self._primary()
        while True:
            if self._at_punct("."):
                self._advance()
                name = self._expect_ident("member name").lexeme
                if isinstance(expr, _Name):
                    expr.parts.append(name)
                else:
                    expr = _Member(obj=expr, name=name)
                continue
            if self._at_punct("("):
                args = self._arg_list()
                if isinstance(expr, _Name):
                    expr = _CallName(parts=expr.parts, args=args)
                elif isinstance(expr, _Member):
                    expr = _CallOn(obj=expr.obj, name=expr.name, args=args)
                else:
                    t = self._cur()
                    raise self._err("callable expression", t)
                continue
            if self._at_punct("["):
                self._advance()
                indexes = [self._expression()]
                while self._at_punct(","):
                    self._advance()
                    indexes.append(self._expression())
                self._expect_punct("]")
                expr = _Index(obj=expr, indexes=indexes)
                continue
            if self._at_op("++", "--"):
                tok = self._advance()
                if not isinstance(expr, (_Name, _Member, _Index)):
                    raise ParseError(tok.line, tok.col, "assignable expression", tok.lexeme)
                expr = _IncDec(target=expr)
                continue
            return expr

    def _primary(self):
        t = self._cur()
        if t is None:
            raise self._err("expression", None)
        if t.kind is TokenKind.IDENTIFIER:
            self._advance()
            return _Name(parts=[t.lexeme])
        if t.kind in _LITERAL_KINDS:
            self._advance()
            return _Lit()
        if t.kind is TokenKind.KEYWORD:
            if t.lexeme in ("this", "base"):
                self._advance()
                return _Name(parts=[t.lexeme])
            if t.lexeme == "null":
                self._advance()
                return _Lit()
            if t.lexeme == "new":
                self._advance()
                type_name = self._type_text()
                if self._at_punct("["):
                    self._advance()
                    size = self._expression()
                    self._expect_punct("]")
                    return _NewArray(type_name=type_name, size=size)
                args = self._arg_list()
                return _New(type_name=type_name, args=args)
            if t.lexeme in PREDEFINED_TYPES:
                # predefined type as a call qualifier, e.g. string.Format(...)
                self._advance()
                return _Name(parts=[t.lexeme])
        if self._at_punct("("):
            self._advance()
            inner = self._expression()
            self._expect_punct(")")
            return inner
        raise self._err("expression", t)

    def _arg_list(self) -> list:
        self._expect_punct("(")
        args = []
        if not self._at_punct(")"):
            while True:
                args.append(self._expression())
                if self._at_punct(","):
                    self._advance()
                    continue
                break
        self._expect_punct(")")
        return args

    # ── event emission (source evaluation order) ──────────────────

    def _emit_reads(self, expr, events: list[BodyEvent]) -> None:
        if isinstance(expr, _Lit):
            return
        if isinstance(expr, _Name):
            parts = _strip_this(expr.parts)
            if parts and parts[0] != "base":
                events.append(UseEvent(name=parts[0], kind="read"))
            return
        if isinstance(expr, _Member):
            self._emit_reads(expr.obj, events)
            return
        if isinstance(expr, _Index):
            self._emit_reads(expr.obj, events)
            for ix in expr.indexes:
                self._emit_reads(ix, events)
            return
        if isinstance(expr, _CallName):
            parts = _strip_this(expr.parts)
            qualifier = None
            if len(parts) > 1:
                qualifier = ".".join(parts[:-1])
                if parts[0] != "base":
                    events.append(UseEvent(name=parts[0], kind="read"))
            for a in expr.args:
                self._emit_reads(a, events)
            events.append(CallEvent(name=parts[-1], argc=len(expr.args), qualifier=qualifier))
            return
        if isinstance(expr, _CallOn):
            # receiver is computed (call result, index, paren); its type is unknowable
            self._emit_reads(expr.obj, events)
            for a in expr.args:
                self._emit_reads(a, events)
            events.append(CallEvent(name=expr.name, argc=len(expr.args), qualifier="?"))
            return
        if isinstance(expr, _New):
            for a in expr.args:
                self._emit_reads(a, events)
            events.append(NewEvent(type_name=expr.type_name, argc=len(expr.args)))
            return
        if isinstance(expr, _NewArray):
            # array allocation constructs no element instances
            self._emit_reads(expr.size, events)
            return
        if isinstance(expr, _Assign):
            target_name = _simple_target(expr.target)
            if expr.op == "=":
                if target_name is not None:
                    self._emit_reads(expr.value, events)
                    events.append(UseEvent(name=target_name, kind="write"))
                else:
                    self._emit_target_reads(expr.target, events)
                    self._emit_reads(expr.value, events)
            else:
                if target_name is not None:
                    events.append(UseEvent(name=target_name, kind="read"))
                    self._emit_reads(expr.value, events)
                    events.append(UseEvent(name=target_name, kind="write"))
                else:
                    self._emit_target_reads(expr.target, events)
                    self._emit_reads(expr.value, events)
            return
        if isinstance(expr, _IncDec):
            target_name = _simple_target(expr.target)
            if target_name is not None:
                events.append(UseEvent(name=target_name, kind="read"))
                events.append(UseEvent(name=target_name, kind="write"))
            else:
                self._emit_target_reads(expr.target, events)
            return
        if isinstance(expr, _Unary):
            self._emit_reads(expr.operand, events)
            return
        if isinstance(expr, _Binary):
            self._emit_reads(expr.left, events)
            self._emit_reads(expr.right, events)
            return
        if isinstance(expr, _Ternary):
            self._emit_reads(expr.cond, events)
            self._emit_reads(expr.then, events)
            self._emit_reads(expr.other, events)
            return
        if isinstance(expr, _Cast):
            self._emit_reads(expr.operand, events)
            return
        raise TypeError(f"unhandled expression node {type(expr).__name__}")

    def _emit_target_reads(self, target, events: list[BodyEvent]) -> None:
        """Reads performed while locating a non-simple assignment target."""
        if isinstance(target, _Name):
            parts = _strip_this(target.parts)
            if parts and parts[0] != "base":
                events.append(UseEvent(name=parts[0], kind="read"))
            return
        if isinstance(target, _Member):
            self._emit_reads(target.obj, events)
            return
        if isinstance(target, _Index):
            self._emit_reads(target.obj, events)
            for ix in target.indexes:
                self._emit_reads(ix, events)
            return
        self._emit_reads(target, events)


def _strip_this(parts: list[str]) -> list[str]:
    if len(parts) > 1 and parts[0] == "this":
        return parts[1:]
    if parts == ["this"]:
        return []
    return list(parts)


def _simple_target(target) -> str | None:
    """Name of a plain identifier (or this-qualified field) target, else None."""
    if isinstance(target, _Name):
        parts = _strip_this(target.parts)
        if len(parts) == 1 and parts[0] != "base":
            return parts[0]
    return None


def _doc_blocks(tokens: list[Token]) -> dict[int, str]:
    """Map of line number -> text of the contiguous comment block ending there.

    A comment joins a doc block only when it is the first token on its line;
    trailing comments after code never document the next declaration.
    """
    first_col_on_line: dict[int, int] = {}
    for t in tokens:
        if t.line not in first_col_on_line or t.col < first_col_on_line[t.line]:
            first_col_on_line[t.line] = t.col
    blocks: dict[int, str] = {}
    cur_texts: list[str] = []
    cur_end = None
    for t in tokens:
        if t.kind is not TokenKind.COMMENT:
            continue
        if first_col_on_line.get(t.line) != t.col:
            continue
        end_line = t.line + t.lexeme.count("\n")
        text = _comment_text(t.lexeme)
        if cur_end is not None and t.line <= cur_end + 1:
            cur_texts.append(text)
            cur_end = end_line
        else:
            if cur_end is not None:
                joined = "\n".join(x for x in cur_texts if x)
                if joined:
                    blocks[cur_end] = joined
            cur_texts = [text]
            cur_end = end_line
    if cur_end is not None:
        joined = "\n".join(x for x in cur_texts if x)
        if joined:
            blocks[cur_end] = joined
    return blocks


def _comment_text(lexeme: str) -> str:
    if lexeme.startswith("//"):
        text = lexeme[2:]
        if text.startswith(" "):
            text = text[1:]
        return text.rstrip()
    inner = lexeme[2:-2]
    lines = []
    for raw in inner.split("\n"):
        stripped = raw.strip()
        if stripped.startswith("*"):
            stripped = stripped[1:]
            if stripped.startswith(" "):
                stripped = stripped[1:]
        lines.append(stripped.rstrip())
    while lines and not lines[0]:
        lines.pop(0)
    while lines and not lines[-1]:
        lines.pop()
    return "\n".join(lines)


def parse(tokens: list[Token]) -> SyntaxTree:
    """Parse tokens into a SyntaxTree; raises the first ParseError found."""
    p = Parser(tokens)
    tree = p.parse()
    if p.errors:
        raise p.errors[0]
    return tree


def parse_source(source: str) -> SyntaxTree:
    return parse(tokenize(source))
