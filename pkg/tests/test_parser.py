from __future__ import annotations

import random

import pytest

from cstracer.parser import ParseError, Parser, parse, parse_source
from cstracer.syntax import (
    CallEvent,
    ClassDecl,
    ConstructorDecl,
    DelegateDecl,
    FieldDecl,
    MethodDecl,
    NamespaceDecl,
    PropertyDecl,
    UseEvent,
)
from cstracer.tokens import tokenize

from helpers import event_sig, random_body, wrap_body


def method_body(source: str, params: str = "") -> list:
    tree = parse_source(
        "namespace N { class C { private Renderer rd; private Curve m_drag_curve; "
        "private Control glControl; private int x; private Curve y; "
        f"public void M({params}) {{ {source} }} }} }}")
    cls = tree.members[0].members[0]
    method = [m for m in cls.members if isinstance(m, MethodDecl)][0]
    return method.body


def test_single_call_with_literal_args():
    body = method_body("ZoomOut(2, true);")
    assert body == [CallEvent(name="ZoomOut", argc=2, qualifier=None, seq=1)]


def test_write_then_qualified_call():
    body = method_body("m_drag_curve = null; rd.Render(glControl);")
    assert body == [
        UseEvent(name="m_drag_curve", kind="write", seq=1),
        UseEvent(name="rd", kind="read", seq=2),
        UseEvent(name="glControl", kind="read", seq=3),
        CallEvent(name="Render", argc=1, qualifier="rd", seq=4),
    ]


def test_if_contributes_no_structure():
    body = method_body("if (x > 0) { x = x - 1; }")
    assert body == [
        UseEvent(name="x", kind="read", seq=1),
        UseEvent(name="x", kind="read", seq=2),
        UseEvent(name="x", kind="write", seq=3),
    ]


def test_assignment_rhs_reads_before_target_write():
    body = method_body("x = y;", params="int y")
    assert [event_sig(e) for e in body] == [("use", "y", "read"), ("use", "x", "write")]


def test_compound_assignment_reads_then_writes_target():
    body = method_body("x += y;", params="int y")
    assert [event_sig(e) for e in body] == [
        ("use", "x", "read"), ("use", "y", "read"), ("use", "x", "write")]


def test_increment_emits_read_then_write():
    assert [event_sig(e) for e in method_body("x++;")] == [
        ("use", "x", "read"), ("use", "x", "write")]
    assert [event_sig(e) for e in method_body("--x;")] == [
        ("use", "x", "read"), ("use", "x", "write")]


def test_call_argument_order_receiver_args_call():
    body = method_body("rd.Render(x, y);")
    assert [event_sig(e) for e in body] == [
        ("use", "rd", "read"), ("use", "x", "read"), ("use", "y", "read"),
        ("call", "rd", "Render", 2)]


def test_nested_call_completes_before_outer():
    body = method_body("Outer(Inner(x));")
    assert [event_sig(e) for e in body] == [
        ("use", "x", "read"), ("call", None, "Inner", 1), ("call", None, "Outer", 1)]


def test_new_emits_args_then_event():
    body = method_body("y = new Curve(x);")
    assert [event_sig(e) for e in body] == [
        ("use", "x", "read"), ("new", "Curve", 1), ("use", "y", "write")]


def test_local_declaration_events():
    body = method_body("Curve c = new Curve(x); int n;")
    assert [event_sig(e) for e in body] == [
        ("local", "c", "Curve"), ("use", "x", "read"), ("new", "Curve", 1),
        ("use", "c", "write"), ("local", "n", "int")]


def test_deep_member_access_keeps_first_identifier():
    body = method_body("a.b.c(x);", params="Thing a")
    assert [event_sig(e) for e in body] == [
        ("use", "a", "read"), ("use", "x", "read"), ("call", "a.b", "c", 1)]


def test_member_read_emits_base_identifier_only():
    body = method_body("x = a.b;", params="Thing a")
    assert [event_sig(e) for e in body] == [("use", "a", "read"), ("use", "x", "write")]


def test_member_target_assignment_has_no_write_event():
    body = method_body("a.b = x;", params="Thing a")
    assert [event_sig(e) for e in body] == [("use", "a", "read"), ("use", "x", "read")]


def test_this_qualifier_is_stripped():
    body = method_body("this.x = y; this.Go(x);", params="int y")
    assert [event_sig(e) for e in body] == [
        ("use", "y", "read"), ("use", "x", "write"),
        ("use", "x", "read"), ("call", None, "Go", 1)]


def test_chained_call_receiver_is_unknown():
    body = method_body("Maker().Act(x);")
    assert [event_sig(e) for e in body] == [
        ("call", None, "Maker", 0), ("use", "x", "read"), ("call", "?", "Act", 1)]


def test_index_target_reads_base_and_index():
    body = method_body("y[x] = a;", params="int a")
    assert [event_sig(e) for e in body] == [
        ("use", "y", "read"), ("use", "x", "read"), ("use", "a", "read")]


def test_ternary_records_all_arms():
    body = method_body("x = a ? b : c;", params="bool a, int b, int c")
    assert [event_sig(e) for e in body] == [
        ("use", "a", "read"), ("use", "b", "read"), ("use", "c", "read"),
        ("use", "x", "write")]


def test_for_loop_source_order():
    body = method_body("for (int i = 0; i < x; i++) { Use(i); }")
    assert [event_sig(e) for e in body] == [
        ("local", "i", "int"), ("use", "i", "write"),
        ("use", "i", "read"), ("use", "x", "read"),
        ("use", "i", "read"), ("use", "i", "write"),
        ("use", "i", "read"), ("call", None, "Use", 1)]


def test_foreach_declares_and_writes_loop_variable():
    body = method_body("foreach (Curve c in y) { Plot(c); }")
    assert [event_sig(e) for e in body] == [
        ("local", "c", "Curve"), ("use", "y", "read"), ("use", "c", "write"),
        ("use", "c", "read"), ("call", None, "Plot", 1)]


def test_switch_records_subject_and_case_labels():
    body = method_body("switch (x) { case 1: Go(x); break; default: break; }")
    assert [event_sig(e) for e in body] == [
        ("use", "x", "read"), ("use", "x", "read"), ("call", None, "Go", 1)]


def test_cast_is_transparent():
    body = method_body("x = (int) y;", params="object y")
    assert [event_sig(e) for e in body] == [("use", "y", "read"), ("use", "x", "write")]


def test_control_flow_transparency_random_bodies():
    rng = random.Random(20260808)
    for _ in range(50):
        body = random_body(rng)
        plain = parse_source(wrap_body(body))
        wrapped = parse_source(wrap_body(f"if (true) {{ {body} }}"))
        plain_events = plain.members[0].members[0].members[-1].body
        wrapped_events = wrapped.members[0].members[0].members[-1].body
        assert [event_sig(e) for e in plain_events] == [event_sig(e) for e in wrapped_events]


def test_seq_values_are_contiguous():
    body = method_body("x = y; rd.Render(x); y = new Curve(x);", params="int y")
    assert [e.seq for e in body] == list(range(1, len(body) + 1))


def test_determinism():
    source = "namespace A.B { class C { public void M(int a) { M(a); } } }"
    assert parse_source(source) == parse_source(source)


# ── declarations ──────────────────────────────────────────────────

def test_full_declaration_surface():
    tree = parse_source("""
using System;
using System.Drawing;

namespace Outer.Mid
{
    namespace Inner
    {
        public delegate void Ticker(int count);

        // Renders frames.
        public class Screen : Canvas, IDisposable
        {
            private int width, height;
            public event Ticker Ticked;

            public Screen(int w) : base(w)
            {
                width = w;
            }

            public int Width
            {
                get { return width; }
                set { width = value; }
            }

            protected static bool Flush(Buffer b) { return true; }

            class Nested { }
        }
    }
}
""")
    assert tree.usings == ["System", "System.Drawing"]
    outer = tree.members[0]
    assert isinstance(outer, NamespaceDecl) and outer.name == "Outer.Mid"
    inner = outer.members[0]
    assert inner.name == "Inner"
    delegate, screen = inner.members
    assert isinstance(delegate, DelegateDecl)
    assert delegate.returns == "void" and delegate.params[0].name == "count"
    assert isinstance(screen, ClassDecl)
    assert screen.accessibility == "public"
    assert screen.bases == ["Canvas", "IDisposable"]
    assert screen.doc == "Renders frames."
    kinds = [type(m).__name__ for m in screen.members]
    assert kinds == ["FieldDecl", "FieldDecl", "EventDecl", "ConstructorDecl",
                     "PropertyDecl", "MethodDecl", "ClassDecl"]
    ctor = screen.members[3]
    assert isinstance(ctor, ConstructorDecl)
    assert [event_sig(e) for e in ctor.body] == [
        ("use", "w", "read"), ("call", None, "base", 1),
        ("use", "w", "read"), ("use", "width", "write")]
    prop = screen.members[4]
    assert isinstance(prop, PropertyDecl)
    assert [event_sig(e) for e in prop.getter] == [("use", "width", "read")]
    assert [event_sig(e) for e in prop.setter] == [
        ("use", "value", "read"), ("use", "width", "write")]
    method = screen.members[5]
    assert method.accessibility == "protected"


def test_doc_comment_attachment_rules():
    tree = parse_source("""
namespace N
{
    // attached line one
    // attached line two
    class A { }

    // not attached: blank line follows

    class B { }

    class C { } // trailing comment is never a doc

    class D { }

    /* block
     * comment */
    class E { }
}
""")
    by_name = {c.name: c for c in tree.members[0].members}
    assert by_name["A"].doc == "attached line one\nattached line two"
    assert by_name["B"].doc is None
    assert by_name["D"].doc is None
    assert by_name["E"].doc == "block\ncomment"


def test_multi_declarator_field_with_initializer():
    tree = parse_source("namespace N { class C { private int a = 1, b; } }")
    fields = tree.members[0].members[0].members
    assert [f.name for f in fields] == ["a", "b"]
    assert all(isinstance(f, FieldDecl) and f.type_name == "int" for f in fields)


def test_rejected_constructs():
    for source in (
        "namespace N { interface I { } }",
        "namespace N { struct S { } }",
        "namespace N { enum E { } }",
        "namespace N { class C<T> { } }",
        "namespace N { [Attr] class C { } }",
    ):
        with pytest.raises(ParseError):
            parse(tokenize(source))


def test_error_recovery_collects_all_and_keeps_good_members():
    source = """
namespace N
{
    class C
    {
        public void Good() { Go(1); }
        public void Bad() { x = ; }
        public void AlsoBad( { }
        public void Fine() { Go(2); }
    }
}
"""
    parser = Parser(tokenize(source))
    tree = parser.parse()
    assert len(parser.errors) >= 2
    cls = tree.members[0].members[0]
    names = [m.name for m in cls.members if isinstance(m, MethodDecl)]
    assert "Good" in names and "Fine" in names
    with pytest.raises(ParseError):
        parse(tokenize(source))


def test_parse_error_carries_position_and_expectation():
    with pytest.raises(ParseError) as exc:
        parse(tokenize("namespace N { class C { public void M() { x = ; } } }"))
    err = exc.value
    assert err.line == 1 and err.col > 0
    assert err.found == ";"
