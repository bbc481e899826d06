"""XML intermediate representation: serialize a SyntaxTree and load it back.

The IR is a frozen public contract so other tools can consume it. Output is
canonical: 2-space indent, LF line endings, attributes in schema order,
self-closing empty elements, no XML declaration. Token positions are not
represented; nothing downstream needs them.
"""

from __future__ import annotations

import xml.etree.ElementTree as ET
from dataclasses import dataclass

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


class IRSchemaError(Exception):
    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path
        self.message = message


@dataclass
class IRDocument:
    file_path: str
    tree: SyntaxTree

    @property
    def usings(self) -> list[str]:
        return self.tree.usings

    @property
    def members(self):
        return self.tree.members


# ── emission ──────────────────────────────────────────────────────

def _esc_attr(value: str) -> str:
    return (value.replace("&", "&amp;").replace("<", "&lt;")
            .replace(">", "&gt;").replace('"', "&quot;"))


def _esc_text(value: str) -> str:
    return value.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")


def _tag(out: list[str], depth: int, name: str, attrs: list[tuple[str, str | None]],
         self_close: bool) -> None:
    parts = [f'{"  " * depth}<{name}']
    for key, value in attrs:
        if value is not None:
            parts.append(f' {key}="{_esc_attr(value)}"')
    parts.append("/>" if self_close else ">")
    out.append("".join(parts))


def emit_ir(tree: SyntaxTree, file_path: str) -> str:
    out: list[str] = ["<Project>"]
    file_attrs = [("path", file_path)]
    if not tree.usings and not tree.members:
        _tag(out, 1, "File", file_attrs, self_close=True)
    else:
        _tag(out, 1, "File", file_attrs, self_close=False)
        for name in tree.usings:
            _tag(out, 2, "Using", [("name", name)], self_close=True)
        for member in tree.members:
            _emit_member(out, 2, member)
        out.append("  </File>")
    out.append("</Project>")
    return "\n".join(out)


def _emit_member(out: list[str], depth: int, member) -> None:
    if isinstance(member, NamespaceDecl):
        if not member.members and member.doc is None:
            _tag(out, depth, "Namespace", [("name", member.name)], self_close=True)
            return
        _tag(out, depth, "Namespace", [("name", member.name)], self_close=False)
        _emit_doc(out, depth + 1, member.doc)
        for child in member.members:
            _emit_member(out, depth + 1, child)
        out.append(f'{"  " * depth}</Namespace>')
        return
    if isinstance(member, ClassDecl):
        attrs = [("name", member.name), ("access", member.accessibility),
                 ("bases", ",".join(member.bases) if member.bases else None)]
        if not member.members and member.doc is None:
            _tag(out, depth, "Class", attrs, self_close=True)
            return
        _tag(out, depth, "Class", attrs, self_close=False)
        _emit_doc(out, depth + 1, member.doc)
        for child in member.members:
            _emit_member(out, depth + 1, child)
        out.append(f'{"  " * depth}</Class>')
        return
    if isinstance(member, FieldDecl):
        attrs = [("name", member.name), ("type", member.type_name),
                 ("access", member.accessibility)]
        if member.doc is None:
            _tag(out, depth, "Field", attrs, self_close=True)
        else:
            _tag(out, depth, "Field", attrs, self_close=False)
            _emit_doc(out, depth + 1, member.doc)
            out.append(f'{"  " * depth}</Field>')
        return
    if isinstance(member, MethodDecl):
        attrs = [("name", member.name), ("returns", member.returns),
                 ("access", member.accessibility)]
        _tag(out, depth, "Method", attrs, self_close=False)
        _emit_doc(out, depth + 1, member.doc)
        _emit_params(out, depth + 1, member.params)
        _emit_body(out, depth + 1, member.body, role=None)
        out.append(f'{"  " * depth}</Method>')
        return
    if isinstance(member, ConstructorDecl):
        _tag(out, depth, "Constructor", [("access", member.accessibility)], self_close=False)
        _emit_doc(out, depth + 1, member.doc)
        _emit_params(out, depth + 1, member.params)
        _emit_body(out, depth + 1, member.body, role=None)
        out.append(f'{"  " * depth}</Constructor>')
        return
    if isinstance(member, PropertyDecl):
        attrs = [("name", member.name), ("type", member.type_name),
                 ("access", member.accessibility)]
        if member.doc is None and member.getter is None and member.setter is None:
            _tag(out, depth, "Property", attrs, self_close=True)
            return
        _tag(out, depth, "Property", attrs, self_close=False)
        _emit_doc(out, depth + 1, member.doc)
        if member.getter is not None:
            _emit_body(out, depth + 1, member.getter, role="get")
        if member.setter is not None:
            _emit_body(out, depth + 1, member.setter, role="set")
        out.append(f'{"  " * depth}</Property>')
        return
    if isinstance(member, EventDecl):
        attrs = [("name", member.name), ("type", member.type_name),
                 ("access", member.accessibility)]
        if member.doc is None:
            _tag(out, depth, "Event", attrs, self_close=True)
        else:
            _tag(out, depth, "Event", attrs, self_close=False)
            _emit_doc(out, depth + 1, member.doc)
            out.append(f'{"  " * depth}</Event>')
        return
    if isinstance(member, DelegateDecl):
        attrs = [("name", member.name), ("returns", member.returns),
                 ("access", member.accessibility)]
        if member.doc is None and not member.params:
            _tag(out, depth, "Delegate", attrs, self_close=True)
            return
        _tag(out, depth, "Delegate", attrs, self_close=False)
        _emit_doc(out, depth + 1, member.doc)
        _emit_params(out, depth + 1, member.params)
        out.append(f'{"  " * depth}</Delegate>')
        return
    raise TypeError(f"unhandled declaration {type(member).__name__}")


def _emit_doc(out: list[str], depth: int, doc: str | None) -> None:
    if doc is not None:
        out.append(f'{"  " * depth}<Doc>{_esc_text(doc)}</Doc>')


def _emit_params(out: list[str], depth: int, params: list[Param]) -> None:
    for p in params:
        _tag(out, depth, "Param", [("name", p.name), ("type", p.type_name)], self_close=True)


def _emit_body(out: list[str], depth: int, body: list[BodyEvent], role: str | None) -> None:
    attrs = [("role", role)]
    if not body:
        _tag(out, depth, "Body", attrs, self_close=True)
        return
    _tag(out, depth, "Body", attrs, self_close=False)
    for ev in body:
        if isinstance(ev, CallEvent):
            _tag(out, depth + 1, "Call",
                 [("name", ev.name), ("argc", str(ev.argc)), ("seq", str(ev.seq)),
                  ("qualifier", ev.qualifier)], self_close=True)
        elif isinstance(ev, UseEvent):
            _tag(out, depth + 1, "Use",
                 [("name", ev.name), ("kind", ev.kind), ("seq", str(ev.seq))], self_close=True)
        elif isinstance(ev, NewEvent):
            _tag(out, depth + 1, "New",
                 [("type", ev.type_name), ("argc", str(ev.argc)), ("seq", str(ev.seq))],
                 self_close=True)
        elif isinstance(ev, LocalEvent):
            _tag(out, depth + 1, "Local",
                 [("name", ev.name), ("type", ev.type_name), ("seq", str(ev.seq))],
                 self_close=True)
        else:
            raise TypeError(f"unhandled body event {type(ev).__name__}")
    out.append(f'{"  " * depth}</Body>')


# ── loading ───────────────────────────────────────────────────────

_ALLOWED_ATTRS = {
    "Project": set(),
    "File": {"path"},
    "Using": {"name"},
    "Namespace": {"name"},
    "Class": {"name", "access", "bases"},
    "Field": {"name", "type", "access"},
    "Method": {"name", "returns", "access"},
    "Constructor": {"access"},
    "Property": {"name", "type", "access"},
    "Event": {"name", "type", "access"},
    "Delegate": {"name", "returns", "access"},
    "Param": {"name", "type"},
    "Doc": set(),
    "Body": {"role"},
    "Call": {"name", "argc", "seq", "qualifier"},
    "Use": {"name", "kind", "seq"},
    "New": {"type", "argc", "seq"},
    "Local": {"name", "type", "seq"},
}


def _check_elem(elem: ET.Element, path: str, required: tuple[str, ...]) -> None:
    allowed = _ALLOWED_ATTRS.get(elem.tag)
    if allowed is None:
        raise IRSchemaError(path, f"unknown element <{elem.tag}>")
    for attr in elem.attrib:
        if attr not in allowed:
            raise IRSchemaError(path, f"unknown attribute '{attr}' on <{elem.tag}>")
    for attr in required:
        if attr not in elem.attrib:
            raise IRSchemaError(path, f"missing required attribute '{attr}' on <{elem.tag}>")


def _int_attr(elem: ET.Element, attr: str, path: str) -> int:
    raw = elem.attrib[attr]
    try:
        return int(raw)
    except ValueError:
        raise IRSchemaError(path, f"attribute '{attr}' must be an integer, got {raw!r}") from None


def load_ir(xml: str) -> IRDocument:
    try:
        root = ET.fromstring(xml)
    except ET.ParseError as e:
        raise IRSchemaError("/", f"not well-formed XML: {e}") from None
    if root.tag != "Project":
        raise IRSchemaError("/", f"root element must be <Project>, found <{root.tag}>")
    _check_elem(root, "Project", ())
    files = list(root)
    if len(files) != 1 or files[0].tag != "File":
        raise IRSchemaError("Project", "expected exactly one <File> child")
    file_elem = files[0]
    path = "Project/File"
    _check_elem(file_elem, path, ("path",))
    tree = SyntaxTree()
    for child in file_elem:
        if child.tag == "Using":
            _check_elem(child, f"{path}/Using", ("name",))
            tree.usings.append(child.attrib["name"])
        else:
            tree.members.append(_load_member(child, path, top=True))
    return IRDocument(file_path=file_elem.attrib["path"], tree=tree)


def _load_member(elem: ET.Element, parent_path: str, top: bool):
    tag = elem.tag
    path = f"{parent_path}/{tag}"
    if "name" in elem.attrib:
        path += f"({elem.attrib['name']})"
    if tag == "Namespace":
        _check_elem(elem, path, ("name",))
        ns = NamespaceDecl(name=elem.attrib["name"])
        for child in elem:
            if child.tag == "Doc":
                ns.doc = _load_doc(ns.doc, child, path)
            elif child.tag in ("Namespace", "Class", "Delegate"):
                ns.members.append(_load_member(child, path, top=False))
            else:
                raise IRSchemaError(path, f"unknown element <{child.tag}> in <Namespace>")
        return ns
    if tag == "Class":
        _check_elem(elem, path, ("name", "access"))
        decl = ClassDecl(name=elem.attrib["name"], accessibility=elem.attrib["access"])
        bases = elem.attrib.get("bases")
        if bases:
            decl.bases = bases.split(",")
        for child in elem:
            if child.tag == "Doc":
                decl.doc = _load_doc(decl.doc, child, path)
            elif child.tag in ("Class", "Delegate", "Field", "Method",
                               "Constructor", "Property", "Event"):
                decl.members.append(_load_member(child, path, top=False))
            else:
                raise IRSchemaError(path, f"unknown element <{child.tag}> in <Class>")
        return decl
    if tag == "Delegate":
        _check_elem(elem, path, ("name", "returns", "access"))
        decl = DelegateDecl(name=elem.attrib["name"], returns=elem.attrib["returns"],
                            accessibility=elem.attrib["access"])
        for child in elem:
            if child.tag == "Doc":
                decl.doc = _load_doc(decl.doc, child, path)
            elif child.tag == "Param":
                decl.params.append(_load_param(child, path))
            else:
                raise IRSchemaError(path, f"unknown element <{child.tag}> in <Delegate>")
        return decl
    if top:
        raise IRSchemaError(path, f"unknown element <{tag}> in <File>")
    if tag == "Field":
        _check_elem(elem, path, ("name", "type", "access"))
        decl = FieldDecl(name=elem.attrib["name"], type_name=elem.attrib["type"],
                         accessibility=elem.attrib["access"])
        for child in elem:
            if child.tag == "Doc":
                decl.doc = _load_doc(decl.doc, child, path)
            else:
                raise IRSchemaError(path, f"unknown element <{child.tag}> in <Field>")
        return decl
    if tag == "Method":
        _check_elem(elem, path, ("name", "returns", "access"))
        decl = MethodDecl(name=elem.attrib["name"], returns=elem.attrib["returns"],
                          accessibility=elem.attrib["access"])
        bodies = 0
        for child in elem:
            if child.tag == "Doc":
                decl.doc = _load_doc(decl.doc, child, path)
            elif child.tag == "Param":
                decl.params.append(_load_param(child, path))
            elif child.tag == "Body":
                bodies += 1
                decl.body = _load_body(child, path, allow_role=False)
            else:
                raise IRSchemaError(path, f"unknown element <{child.tag}> in <Method>")
        if bodies != 1:
            raise IRSchemaError(path, "expected exactly one <Body> in <Method>")
        return decl
    if tag == "Constructor":
        _check_elem(elem, path, ("access",))
        decl = ConstructorDecl(accessibility=elem.attrib["access"])
        bodies = 0
        for child in elem:
            if child.tag == "Doc":
                decl.doc = _load_doc(decl.doc, child, path)
            elif child.tag == "Param":
                decl.params.append(_load_param(child, path))
            elif child.tag == "Body":
                bodies += 1
                decl.body = _load_body(child, path, allow_role=False)
            else:
                raise IRSchemaError(path, f"unknown element <{child.tag}> in <Constructor>")
        if bodies != 1:
            raise IRSchemaError(path, "expected exactly one <Body> in <Constructor>")
        return decl
    if tag == "Property":
        _check_elem(elem, path, ("name", "type", "access"))
        decl = PropertyDecl(name=elem.attrib["name"], type_name=elem.attrib["type"],
                            accessibility=elem.attrib["access"])
        for child in elem:
            if child.tag == "Doc":
                decl.doc = _load_doc(decl.doc, child, path)
            elif child.tag == "Body":
                role = child.attrib.get("role")
                if role == "get":
                    if decl.getter is not None:
                        raise IRSchemaError(path, "duplicate get accessor body")
                    decl.getter = _load_body(child, path, allow_role=True)
                elif role == "set":
                    if decl.setter is not None:
                        raise IRSchemaError(path, "duplicate set accessor body")
                    decl.setter = _load_body(child, path, allow_role=True)
                else:
                    raise IRSchemaError(path, "property <Body> requires role=\"get\" or \"set\"")
            else:
                raise IRSchemaError(path, f"unknown element <{child.tag}> in <Property>")
        return decl
    if tag == "Event":
        _check_elem(elem, path, ("name", "type", "access"))
        decl = EventDecl(name=elem.attrib["name"], type_name=elem.attrib["type"],
                         accessibility=elem.attrib["access"])
        for child in elem:
            if child.tag == "Doc":
                decl.doc = _load_doc(decl.doc, child, path)
            else:
                raise IRSchemaError(path, f"unknown element <{child.tag}> in <Event>")
        return decl
    raise IRSchemaError(path, f"unknown element <{tag}>")


def _load_doc(existing: str | None, elem: ET.Element, path: str) -> str:
    if existing is not None:
        raise IRSchemaError(path, "duplicate <Doc> element")
    _check_elem(elem, f"{path}/Doc", ())
    return elem.text or ""


def _load_param(elem: ET.Element, path: str) -> Param:
    _check_elem(elem, f"{path}/Param", ("name", "type"))
    return Param(name=elem.attrib["name"], type_name=elem.attrib["type"])


def _load_body(elem: ET.Element, parent_path: str, allow_role: bool) -> list[BodyEvent]:
    path = f"{parent_path}/Body"
    if not allow_role and "role" in elem.attrib:
        raise IRSchemaError(path, "unexpected role attribute on <Body>")
    events: list[BodyEvent] = []
    for child in elem:
        cpath = f"{path}/{child.tag}"
        if child.tag == "Call":
            _check_elem(child, cpath, ("name", "argc", "seq"))
            argc = _int_attr(child, "argc", cpath)
            if argc < 0:
                raise IRSchemaError(cpath, "argc must be non-negative")
            events.append(CallEvent(name=child.attrib["name"], argc=argc,
                                    qualifier=child.attrib.get("qualifier"),
                                    seq=_int_attr(child, "seq", cpath)))
        elif child.tag == "Use":
            _check_elem(child, cpath, ("name", "kind", "seq"))
            kind = child.attrib["kind"]
            if kind not in ("read", "write"):
                raise IRSchemaError(cpath, f"kind must be read or write, got {kind!r}")
            events.append(UseEvent(name=child.attrib["name"], kind=kind,
                                   seq=_int_attr(child, "seq", cpath)))
        elif child.tag == "New":
            _check_elem(child, cpath, ("type", "argc", "seq"))
            argc = _int_attr(child, "argc", cpath)
            if argc < 0:
                raise IRSchemaError(cpath, "argc must be non-negative")
            events.append(NewEvent(type_name=child.attrib["type"], argc=argc,
                                   seq=_int_attr(child, "seq", cpath)))
        elif child.tag == "Local":
            _check_elem(child, cpath, ("name", "type", "seq"))
            events.append(LocalEvent(name=child.attrib["name"],
                                     type_name=child.attrib["type"],
                                     seq=_int_attr(child, "seq", cpath)))
        else:
            raise IRSchemaError(path, f"unknown element <{child.tag}> in <Body>")
    for i, ev in enumerate(events):
        if ev.seq != i + 1:
            raise IRSchemaError(path, f"non-monotonic seq: expected {i + 1}, got {ev.seq}")
    return events
