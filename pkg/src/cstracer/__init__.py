"""Traceability knowledge extraction for a C# subset.

Pipeline: source text -> tokens -> syntax tree -> XML IR -> knowledge base,
then interactive forward/reverse traceability queries over the result.
"""

from .tokens import LexError, Token, TokenKind, tokenize
from .parser import ParseError, Parser, parse, parse_source
from .ir import IRDocument, IRSchemaError, emit_ir, load_ir
from .kb import (
    KnowledgeBase,
    KnowledgeObject,
    KnowledgeType,
    LinkObject,
    LinkType,
    restore,
)
from .extractor import ResolutionContext, extract, resolve_use
from .query import (
    NotExpandable,
    Selection,
    TraceTreeNode,
    expand,
    object_attributes,
    reverse_related,
    visible_set,
)

__version__ = "0.1.0"

__all__ = [
    "LexError", "Token", "TokenKind", "tokenize",
    "ParseError", "Parser", "parse", "parse_source",
    "IRDocument", "IRSchemaError", "emit_ir", "load_ir",
    "KnowledgeBase", "KnowledgeObject", "KnowledgeType", "LinkObject", "LinkType",
    "restore",
    "ResolutionContext", "extract", "resolve_use",
    "NotExpandable", "Selection", "TraceTreeNode",
    "expand", "object_attributes", "reverse_related", "visible_set",
    "__version__",
]
