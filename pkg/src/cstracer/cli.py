"""Command-line entry points: extract, ir, query, tree, serve.

Exit codes: 0 success, 1 usage error, 2 input error (lex/parse/schema),
with file/line/column diagnostics on stderr. Parse errors do not void a
file: extraction continues with whatever was recovered and still reports 2.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .extractor import extract
from .ids import split_id_list
from .ir import IRDocument, IRSchemaError, emit_ir
from .kb import KBError, KBSchemaError, restore
from .parser import Parser
from .query import Selection, expand, visible_set
from .tokens import LexError, tokenize


class _UsageError(Exception):
    pass


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message: str):
        raise _UsageError(message)


def _build_parser() -> _ArgumentParser:
    parser = _ArgumentParser(prog="tracer",
                             description="C# traceability knowledge extraction")
    sub = parser.add_subparsers(dest="command", metavar="command")

    p_extract = sub.add_parser("extract", help="parse sources and write a knowledge base")
    p_extract.add_argument("paths", nargs="+", metavar="path",
                           help=".cs files or directories to scan")
    p_extract.add_argument("--out", required=True, help="knowledge base XML output file")
    p_extract.add_argument("--ir-dir", help="also write per-file IR XML into this directory")

    p_ir = sub.add_parser("ir", help="parse one source file and write its IR XML")
    p_ir.add_argument("file", help=".cs source file")
    p_ir.add_argument("--out", required=True, help="IR XML output file")

    p_query = sub.add_parser("query", help="column visibility for checked objects")
    p_query.add_argument("--kb", required=True, help="knowledge base XML file")
    p_query.add_argument("--check", default="", help="comma-separated checked object ids")
    p_query.add_argument("--link-types", help="comma-separated link types to follow")
    p_query.add_argument("--max-depth", type=int, help="hop limit from checked objects")
    p_query.add_argument("--format", choices=("text", "json"), default="text")

    p_tree = sub.add_parser("tree", help="print an expansion tree for an object")
    p_tree.add_argument("--kb", required=True, help="knowledge base XML file")
    p_tree.add_argument("--root", required=True, help="object id to expand")
    p_tree.add_argument("--depth", type=int, default=3, help="expansion depth (default 3)")

    p_serve = sub.add_parser("serve", help="serve the HTTP API (and optional UI)")
    p_serve.add_argument("--kb", required=True, help="knowledge base XML file")
    p_serve.add_argument("--port", type=int, default=7130)
    p_serve.add_argument("--static", help="directory of UI assets to serve at /")

    return parser


def _collect_sources(paths: list[str]) -> list[str]:
    files: list[str] = []
    for raw in paths:
        path = Path(raw)
        if path.is_dir():
            files.extend(str(p) for p in path.rglob("*.cs"))
        else:
            files.append(raw)
    return sorted(set(files))


def _parse_file(path: str, diagnostics: list[str]) -> IRDocument | None:
    try:
        source = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        diagnostics.append(f"{path}: {e}")
        return None
    try:
        tokens = tokenize(source)
    except LexError as e:
        diagnostics.append(f"{path}:{e.line}:{e.col}: {e.message}")
        return None
    parser = Parser(tokens)
    tree = parser.parse()
    for err in parser.errors:
        diagnostics.append(f"{path}:{err.line}:{err.col}: expected {err.expected}, "
                           f"found {err.found}")
    return IRDocument(file_path=path, tree=tree)


def _cmd_extract(args) -> int:
    diagnostics: list[str] = []
    irs: list[IRDocument] = []
    for path in _collect_sources(args.paths):
        doc = _parse_file(path, diagnostics)
        if doc is not None:
            irs.append(doc)
    if args.ir_dir:
        ir_dir = Path(args.ir_dir)
        ir_dir.mkdir(parents=True, exist_ok=True)
        for doc in irs:
            target = ir_dir / (Path(doc.file_path).stem + ".xml")
            target.write_text(emit_ir(doc.tree, doc.file_path), encoding="utf-8")
    kb = extract(irs)
    Path(args.out).write_text(kb.persist(), encoding="utf-8")
    print(f"wrote {args.out} ({len(kb.objects)} objects, {len(kb.links)} links)")
    for diag in diagnostics:
        print(diag, file=sys.stderr)
    return 2 if diagnostics else 0


def _cmd_ir(args) -> int:
    diagnostics: list[str] = []
    doc = _parse_file(args.file, diagnostics)
    if doc is not None:
        Path(args.out).write_text(emit_ir(doc.tree, doc.file_path), encoding="utf-8")
    for diag in diagnostics:
        print(diag, file=sys.stderr)
    return 2 if diagnostics else 0


def _load_kb(path: str):
    return restore(Path(path).read_text(encoding="utf-8"))


def _cmd_query(args) -> int:
    kb = _load_kb(args.kb)
    checked = set(split_id_list(args.check))
    link_types = None
    if args.link_types is not None:
        link_types = set(split_id_list(args.link_types))
    selection = Selection(checked_ids=checked, enabled_link_types=link_types,
                          max_depth=args.max_depth)
    grouped = visible_set(kb, selection)
    if args.format == "json":
        print(json.dumps({t: sorted(ids) for t, ids in grouped.items()},
                         indent=2, sort_keys=True))
        return 0
    for type_id in sorted(kb.types, key=lambda t: (kb.types[t].display_order, t)):
        ids = grouped.get(type_id, set())
        if not ids:
            continue
        print(f"{type_id}:")
        for object_id in sorted(ids):
            print(f"  {object_id}")
    return 0


def _cmd_tree(args) -> int:
    kb = _load_kb(args.kb)
    root = kb.objects.get(args.root)
    if root is None:
        print(f"{args.kb}: unknown object id {args.root!r}", file=sys.stderr)
        return 2
    print(root.name)
    _print_tree(kb, [root.id], args.depth, indent=1)
    return 0


def _print_tree(kb, path: list[str], depth: int, indent: int) -> None:
    if depth <= 0:
        return
    try:
        nodes = expand(kb, path)
    except Exception:
        return
    for node in nodes:
        markers = ""
        if node.cyclic:
            markers += " [cycle]"
        if node.object_id and kb.objects[node.object_id].external:
            markers += " [external]"
        print(f"{'  ' * indent}{node.label}{markers}")
        if node.expandable and node.object_id:
            _print_tree(kb, path + [node.object_id], depth - 1, indent + 1)


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    app = create_app(args.kb, static_dir=args.static)
    uvicorn.run(app, host="127.0.0.1", port=args.port)
    return 0


def run_cli(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as e:
        print(f"tracer: {e}", file=sys.stderr)
        parser.print_usage(sys.stderr)
        return 1
    if args.command is None:
        parser.print_usage(sys.stderr)
        return 1
    handlers = {
        "extract": _cmd_extract,
        "ir": _cmd_ir,
        "query": _cmd_query,
        "tree": _cmd_tree,
        "serve": _cmd_serve,
    }
    try:
        return handlers[args.command](args)
    except (IRSchemaError, KBSchemaError) as e:
        print(f"tracer: {e}", file=sys.stderr)
        return 2
    except KBError as e:
        print(f"tracer: {e}", file=sys.stderr)
        return 2
    except OSError as e:
        print(f"tracer: {e}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
