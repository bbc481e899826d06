"""Typed object/link knowledge base with annotations, change events, and XML persistence.

Every mutation appends a ChangeEvent so listeners (the service's polling
clients, mainly) can refresh. The change log is in-memory only; a restored
knowledge base starts with an empty log.
"""

from __future__ import annotations

import xml.etree.ElementTree as ET
from collections import Counter
from dataclasses import dataclass, field

BUILTIN_KNOWLEDGE_TYPES = (
    "Namespace", "Class", "Constructor", "Method",
    "Property", "Variable", "Delegate", "Event",
)
BUILTIN_LINK_TYPES = (
    "Contains", "Calls", "Reads", "Writes",
    "Instantiates", "HasParameter", "TypeOf", "Related",
)
ACCESS_LEVELS = frozenset({"public", "private", "protected", "internal", "none", "unknown"})
NOTE_LEVELS = frozenset({"info", "solved", "open"})
CHANGE_KINDS = ("ObjectAdded", "ObjectUpdated", "LinkAdded", "LinkRemoved", "TypeAdded")


class KBError(Exception):
    pass


class DuplicateId(KBError):
    pass


class UnknownType(KBError):
    pass


class UnknownObject(KBError):
    pass


class UnknownEndpoint(KBError):
    pass


class UnknownLinkType(KBError):
    pass


class DuplicateLink(KBError):
    pass


class EmptyText(KBError):
    pass


class ContainsViolation(KBError):
    """A Contains link would give an object a second parent or close a cycle."""


class KBSchemaError(KBError):
    pass


@dataclass
class KnowledgeType:
    id: str
    display_order: int


@dataclass
class LinkType:
    id: str
    directed: bool = True


@dataclass
class Note:
    level: str
    text: str


@dataclass
class DocLink:
    href: str
    anchor: str | None = None


@dataclass
class KnowledgeObject:
    id: str
    type_id: str
    name: str
    accessibility: str = "none"
    external: bool = False
    description: str = ""
    version: str = ""
    notes: list[Note] = field(default_factory=list)
    doc_links: list[DocLink] = field(default_factory=list)


@dataclass(frozen=True)
class LinkObject:
    link_type_id: str
    parent_id: str
    child_id: str
    seq: int | None = None


@dataclass(frozen=True)
class ChangeEvent:
    seq_no: int
    kind: str
    subject_id: str


class KnowledgeBase:
    def __init__(self, register_builtins: bool = True):
        self.types: dict[str, KnowledgeType] = {}
        self.link_types: dict[str, LinkType] = {}
        self.objects: dict[str, KnowledgeObject] = {}
        self.links: list[LinkObject] = []
        self.events: list[ChangeEvent] = []
        self._link_keys: set[tuple[str, str, str, int | None]] = set()
        self._links_by_parent: dict[str, list[LinkObject]] = {}
        self._links_by_child: dict[str, list[LinkObject]] = {}
        self._contains_parent: dict[str, str] = {}
        if register_builtins:
            for i, type_id in enumerate(BUILTIN_KNOWLEDGE_TYPES):
                self.types[type_id] = KnowledgeType(id=type_id, display_order=i)
            for type_id in BUILTIN_LINK_TYPES:
                self.link_types[type_id] = LinkType(id=type_id)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, KnowledgeBase):
            return NotImplemented
        return (self.types == other.types
                and self.link_types == other.link_types
                and self.objects == other.objects
                and Counter(self.links) == Counter(other.links))

    # ── change log ────────────────────────────────────────────────

    def _record(self, kind: str, subject_id: str) -> None:
        self.events.append(ChangeEvent(seq_no=len(self.events) + 1, kind=kind,
                                       subject_id=subject_id))

    def events_since(self, seq_no: int) -> list[ChangeEvent]:
        if seq_no <= 0:
            return list(self.events)
        return [e for e in self.events if e.seq_no > seq_no]

    # ── registries ────────────────────────────────────────────────

    def add_type(self, type_id: str, display_order: int | None = None) -> KnowledgeType:
        if type_id in self.types:
            raise DuplicateId(f"knowledge type {type_id!r} already registered")
        if display_order is None:
            display_order = max((t.display_order for t in self.types.values()), default=-1) + 1
        kt = KnowledgeType(id=type_id, display_order=display_order)
        self.types[type_id] = kt
        self._record("TypeAdded", type_id)
        return kt

    def add_link_type(self, link_type_id: str) -> LinkType:
        if link_type_id in self.link_types:
            raise DuplicateId(f"link type {link_type_id!r} already registered")
        lt = LinkType(id=link_type_id)
        self.link_types[link_type_id] = lt
        self._record("TypeAdded", link_type_id)
        return lt

    # ── objects and links ─────────────────────────────────────────

    def add_object(self, type_id: str, object_id: str, name: str,
                   accessibility: str = "none", external: bool = False) -> KnowledgeObject:
        if type_id not in self.types:
            raise UnknownType(f"knowledge type {type_id!r} is not registered")
        if object_id in self.objects:
            raise DuplicateId(f"object {object_id!r} already exists")
        if external:
            accessibility = "unknown"
        if accessibility not in ACCESS_LEVELS:
            raise KBError(f"invalid accessibility {accessibility!r}")
        obj = KnowledgeObject(id=object_id, type_id=type_id, name=name,
                              accessibility=accessibility, external=external)
        self.objects[object_id] = obj
        self._record("ObjectAdded", object_id)
        return obj

    def add_link(self, link_type_id: str, parent_id: str, child_id: str,
                 seq: int | None = None) -> LinkObject:
        if link_type_id not in self.link_types:
            raise UnknownLinkType(f"link type {link_type_id!r} is not registered")
        if parent_id not in self.objects:
            raise UnknownEndpoint(f"parent object {parent_id!r} does not exist")
        if child_id not in self.objects:
            raise UnknownEndpoint(f"child object {child_id!r} does not exist")
        key = (link_type_id, parent_id, child_id, seq)
        if key in self._link_keys:
            raise DuplicateLink(f"duplicate link {key}")
        if link_type_id == "Contains":
            self._check_contains(parent_id, child_id)
        link = LinkObject(link_type_id=link_type_id, parent_id=parent_id,
                          child_id=child_id, seq=seq)
        self.links.append(link)
        self._link_keys.add(key)
        self._links_by_parent.setdefault(parent_id, []).append(link)
        self._links_by_child.setdefault(child_id, []).append(link)
        if link_type_id == "Contains":
            self._contains_parent[child_id] = parent_id
        self._record("LinkAdded", f"{parent_id}->{child_id}")
        return link

    def _check_contains(self, parent_id: str, child_id: str) -> None:
        # Contains links must stay a forest: single parent, no cycles.
        if child_id in self._contains_parent:
            raise ContainsViolation(f"object {child_id!r} already has a Contains parent")
        cursor: str | None = parent_id
        while cursor is not None:
            if cursor == child_id:
                raise ContainsViolation(
                    f"Contains link {parent_id!r} -> {child_id!r} would create a cycle")
            cursor = self._contains_parent.get(cursor)

    def links_from(self, parent_id: str) -> list[LinkObject]:
        return self._links_by_parent.get(parent_id, [])

    def links_to(self, child_id: str) -> list[LinkObject]:
        return self._links_by_child.get(child_id, [])

    def has_link(self, link_type_id: str, parent_id: str, child_id: str,
                 seq: int | None = None) -> bool:
        return (link_type_id, parent_id, child_id, seq) in self._link_keys

    def contains_parent_of(self, child_id: str) -> str | None:
        return self._contains_parent.get(child_id)

    # ── annotations ───────────────────────────────────────────────

    def _require_object(self, object_id: str) -> KnowledgeObject:
        obj = self.objects.get(object_id)
        if obj is None:
            raise UnknownObject(f"object {object_id!r} does not exist")
        return obj

    def set_description(self, object_id: str, text: str) -> KnowledgeObject:
        obj = self._require_object(object_id)
        if not text:
            raise EmptyText("description text must not be empty")
        obj.description = text
        self._record("ObjectUpdated", object_id)
        return obj

    def set_version(self, object_id: str, text: str) -> KnowledgeObject:
        obj = self._require_object(object_id)
        if not text:
            raise EmptyText("version text must not be empty")
        obj.version = text
        self._record("ObjectUpdated", object_id)
        return obj

    def add_note(self, object_id: str, level: str, text: str) -> KnowledgeObject:
        obj = self._require_object(object_id)
        if level not in NOTE_LEVELS:
            raise KBError(f"invalid note level {level!r}")
        if not text:
            raise EmptyText("note text must not be empty")
        obj.notes.append(Note(level=level, text=text))
        self._record("ObjectUpdated", object_id)
        return obj

    def add_doc_link(self, object_id: str, href: str, anchor: str | None = None) -> KnowledgeObject:
        obj = self._require_object(object_id)
        if not href:
            raise EmptyText("doc link href must not be empty")
        obj.doc_links.append(DocLink(href=href, anchor=anchor))
        self._record("ObjectUpdated", object_id)
        return obj

    # ── persistence ───────────────────────────────────────────────

    def persist(self) -> str:
        out: list[str] = ['<KnowledgeBase version="1">']
        out.append("  <KnowledgeTypes>")
        for kt in sorted(self.types.values(), key=lambda t: (t.display_order, t.id)):
            out.append(f'    <KnowledgeType id="{_esc(kt.id)}" order="{kt.display_order}"/>')
        out.append("  </KnowledgeTypes>")
        out.append("  <LinkTypes>")
        for lt in sorted(self.link_types.values(), key=lambda t: t.id):
            out.append(f'    <LinkType id="{_esc(lt.id)}"/>')
        out.append("  </LinkTypes>")
        if self.objects:
            out.append("  <Objects>")
            for obj in sorted(self.objects.values(), key=lambda o: o.id):
                attrs = (f'id="{_esc(obj.id)}" type="{_esc(obj.type_id)}" '
                         f'name="{_esc(obj.name)}" access="{_esc(obj.accessibility)}" '
                         f'external="{"true" if obj.external else "false"}" '
                         f'version="{_esc(obj.version)}"')
                has_children = obj.description or obj.notes or obj.doc_links
                if not has_children:
                    out.append(f"    <Object {attrs}/>")
                    continue
                out.append(f"    <Object {attrs}>")
                if obj.description:
                    out.append(f"      <Description>{_esc_text(obj.description)}</Description>")
                for note in obj.notes:
                    out.append(f'      <Note level="{_esc(note.level)}">'
                               f"{_esc_text(note.text)}</Note>")
                for doc in obj.doc_links:
                    anchor = f' anchor="{_esc(doc.anchor)}"' if doc.anchor is not None else ""
                    out.append(f'      <Doc href="{_esc(doc.href)}"{anchor}/>')
                out.append("    </Object>")
            out.append("  </Objects>")
        if self.links:
            out.append("  <Links>")
            for link in sorted(self.links, key=_link_sort_key):
                seq = f' seq="{link.seq}"' if link.seq is not None else ""
                out.append(f'    <Link type="{_esc(link.link_type_id)}" '
                           f'parent="{_esc(link.parent_id)}" '
                           f'child="{_esc(link.child_id)}"{seq}/>')
            out.append("  </Links>")
        out.append("</KnowledgeBase>")
        return "\n".join(out)


def _link_sort_key(link: LinkObject):
    return (link.link_type_id, link.parent_id, link.child_id,
            link.seq is not None, link.seq or 0)


def _esc(value: str) -> str:
    return (value.replace("&", "&amp;").replace("<", "&lt;")
            .replace(">", "&gt;").replace('"', "&quot;"))


def _esc_text(value: str) -> str:
    return value.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")


def restore(xml: str) -> KnowledgeBase:
    """Rebuild a knowledge base from persisted XML; the change log starts empty."""
    try:
        root = ET.fromstring(xml)
    except ET.ParseError as e:
        raise KBSchemaError(f"not well-formed XML: {e}") from None
    if root.tag != "KnowledgeBase":
        raise KBSchemaError(f"root element must be <KnowledgeBase>, found <{root.tag}>")
    if root.attrib.get("version") != "1":
        raise KBSchemaError("unsupported KnowledgeBase version "
                            f"{root.attrib.get('version')!r}")
    kb = KnowledgeBase(register_builtins=False)
    try:
        for section in root:
            if section.tag == "KnowledgeTypes":
                for elem in section:
                    _expect_tag(elem, "KnowledgeType")
                    kb.types[_req(elem, "id")] = KnowledgeType(
                        id=_req(elem, "id"), display_order=_req_int(elem, "order"))
            elif section.tag == "LinkTypes":
                for elem in section:
                    _expect_tag(elem, "LinkType")
                    kb.link_types[_req(elem, "id")] = LinkType(id=_req(elem, "id"))
            elif section.tag == "Objects":
                for elem in section:
                    _expect_tag(elem, "Object")
                    obj = kb.add_object(
                        type_id=_req(elem, "type"), object_id=_req(elem, "id"),
                        name=_req(elem, "name"), accessibility=_req(elem, "access"),
                        external=_req(elem, "external") == "true")
                    version = elem.attrib.get("version", "")
                    if version:
                        obj.version = version
                    for child in elem:
                        if child.tag == "Description":
                            obj.description = child.text or ""
                        elif child.tag == "Note":
                            kb.add_note(obj.id, _req(child, "level"), child.text or "")
                        elif child.tag == "Doc":
                            kb.add_doc_link(obj.id, _req(child, "href"),
                                            child.attrib.get("anchor"))
                        else:
                            raise KBSchemaError(f"unknown element <{child.tag}> in <Object>")
            elif section.tag == "Links":
                for elem in section:
                    _expect_tag(elem, "Link")
                    seq = elem.attrib.get("seq")
                    kb.add_link(link_type_id=_req(elem, "type"),
                                parent_id=_req(elem, "parent"),
                                child_id=_req(elem, "child"),
                                seq=int(seq) if seq is not None else None)
            else:
                raise KBSchemaError(f"unknown section <{section.tag}>")
    except KBSchemaError:
        raise
    except (KBError, ValueError) as e:
        raise KBSchemaError(str(e)) from None
    kb.events.clear()
    return kb


def _expect_tag(elem: ET.Element, tag: str) -> None:
    if elem.tag != tag:
        raise KBSchemaError(f"unexpected element <{elem.tag}>, expected <{tag}>")


def _req(elem: ET.Element, attr: str) -> str:
    value = elem.attrib.get(attr)
    if value is None:
        raise KBSchemaError(f"missing required attribute '{attr}' on <{elem.tag}>")
    return value


def _req_int(elem: ET.Element, attr: str) -> int:
    raw = _req(elem, attr)
    try:
        return int(raw)
    except ValueError:
        raise KBSchemaError(f"attribute '{attr}' must be an integer, got {raw!r}") from None
