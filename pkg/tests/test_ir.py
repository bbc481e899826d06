from __future__ import annotations

import pytest

from cstracer.ir import IRDocument, IRSchemaError, emit_ir, load_ir
from cstracer.parser import parse_source
from cstracer.syntax import SyntaxTree

from helpers import overload_chain_source


def test_empty_tree_exact_output():
    assert emit_ir(SyntaxTree(), "x.cs") == '<Project>\n  <File path="x.cs"/>\n</Project>'


def test_corpus_elements(corpus_source):
    xml = emit_ir(parse_source(corpus_source), "corpus/cleanup.cs")
    assert '<Namespace name="GeomKernel.CmdsCleanup">' in xml
    assert xml.count('<Method name="ZoomOut"') == 2
    assert '<Call name="Render" argc="1" seq="4" qualifier="rd"/>' in xml


def test_load_of_empty_emit():
    doc = load_ir(emit_ir(SyntaxTree(), "x.cs"))
    assert doc.file_path == "x.cs"
    assert doc.usings == [] and doc.members == []


def test_hand_written_minimal_file():
    doc = load_ir('<Project><File path="a.cs"><Class name="Widget" access="public"/>'
                  "</File></Project>")
    assert len(doc.members) == 1
    assert doc.members[0].name == "Widget"
    assert doc.members[0].accessibility == "public"


def test_round_trip_on_parsed_sources(corpus_source):
    sources = [("corpus/cleanup.cs", corpus_source)]
    sources += [(f"gen{i}.cs", overload_chain_source(i)) for i in range(10)]
    for path, source in sources:
        tree = parse_source(source)
        xml = emit_ir(tree, path)
        doc = load_ir(xml)
        assert doc == IRDocument(file_path=path, tree=tree)
        assert emit_ir(doc.tree, doc.file_path) == xml


def test_doc_comments_round_trip():
    tree = parse_source("""
namespace N
{
    // Holds <weird> & "quoted" text.
    class C
    {
        // two
        // lines
        private int x;
    }
}
""")
    xml = emit_ir(tree, "d.cs")
    doc = load_ir(xml)
    cls = doc.members[0].members[0]
    assert cls.doc == 'Holds <weird> & "quoted" text.'
    assert cls.members[0].doc == "two\nlines"


def test_property_accessors_serialize_with_roles():
    tree = parse_source(
        "namespace N { class C { private int w; "
        "public int W { get { return w; } set { w = value; } } } }")
    xml = emit_ir(tree, "p.cs")
    assert '<Body role="get">' in xml and '<Body role="set">' in xml
    assert load_ir(xml).tree == tree


def test_call_missing_seq_rejected():
    xml = ('<Project><File path="a.cs"><Namespace name="N">'
           '<Class name="C" access="none"><Method name="M" returns="void" access="public">'
           '<Body><Call name="Go" argc="0"/></Body></Method></Class>'
           "</Namespace></File></Project>")
    with pytest.raises(IRSchemaError) as exc:
        load_ir(xml)
    assert "seq" in str(exc.value)


def test_unknown_element_rejected():
    xml = '<Project><File path="a.cs"><Mystery/></File></Project>'
    with pytest.raises(IRSchemaError):
        load_ir(xml)


def test_non_monotonic_seq_rejected():
    xml = ('<Project><File path="a.cs"><Namespace name="N">'
           '<Class name="C" access="none"><Method name="M" returns="void" access="public">'
           '<Body><Use name="x" kind="read" seq="2"/></Body></Method></Class>'
           "</Namespace></File></Project>")
    with pytest.raises(IRSchemaError) as exc:
        load_ir(xml)
    assert "seq" in str(exc.value)


def test_bad_use_kind_rejected():
    xml = ('<Project><File path="a.cs"><Namespace name="N">'
           '<Class name="C" access="none"><Method name="M" returns="void" access="public">'
           '<Body><Use name="x" kind="mutate" seq="1"/></Body></Method></Class>'
           "</Namespace></File></Project>")
    with pytest.raises(IRSchemaError):
        load_ir(xml)


def test_malformed_xml_rejected():
    with pytest.raises(IRSchemaError):
        load_ir("<Project><File path='a.cs'>")


def test_schema_error_carries_path():
    xml = '<Project><File path="a.cs"><Namespace name="N"><Bogus/></Namespace></File></Project>'
    with pytest.raises(IRSchemaError) as exc:
        load_ir(xml)
    assert "Namespace(N)" in exc.value.path
