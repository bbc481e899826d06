"""Interactive queries over a knowledge base snapshot.

All operations are read-only: checkbox visibility propagation, lazy
execution-ordered tree expansion with cycle flagging, per-object attribute
summaries, and column-to-column reverse traceability.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .kb import KnowledgeBase, KnowledgeObject, LinkObject, UnknownObject, UnknownType


class NotExpandable(Exception):
    pass


@dataclass
class Selection:
    checked_ids: set[str] = field(default_factory=set)
    enabled_link_types: set[str] | None = None  # None = all
    max_depth: int | None = None  # None = unbounded


@dataclass
class TraceTreeNode:
    label: str
    object_id: str | None
    node_kind: str  # Declaration | CallEntry | UseEntry | NewEntry | ParamEntry
    same_class_call: bool = False
    expandable: bool = False
    cyclic: bool = False
    seq: int | None = None
    accessibility: str = "none"
    type_id: str = ""


def visible_set(kb: KnowledgeBase, selection: Selection) -> dict[str, set[str]]:
    """Object ids visible per KnowledgeType under the given selection.

    No checked ids means everything is visible. Otherwise an object is
    visible when it is checked or reachable from a checked object across
    enabled links (followed in both directions), within max_depth hops.
    """
    for object_id in selection.checked_ids:
        if object_id not in kb.objects:
            raise UnknownObject(f"checked object {object_id!r} does not exist")

    grouped: dict[str, set[str]] = {type_id: set() for type_id in kb.types}
    if not selection.checked_ids:
        for obj in kb.objects.values():
            grouped[obj.type_id].add(obj.id)
        return grouped

    enabled = selection.enabled_link_types
    neighbors: dict[str, set[str]] = {}
    for link in kb.links:
        if enabled is not None and link.link_type_id not in enabled:
            continue
        neighbors.setdefault(link.parent_id, set()).add(link.child_id)
        neighbors.setdefault(link.child_id, set()).add(link.parent_id)

    visible: set[str] = set(selection.checked_ids)
    queue: deque[tuple[str, int]] = deque((i, 0) for i in selection.checked_ids)
    while queue:
        current, depth = queue.popleft()
        if selection.max_depth is not None and depth >= selection.max_depth:
            continue
        for nxt in neighbors.get(current, ()):
            if nxt not in visible:
                visible.add(nxt)
                queue.append((nxt, depth + 1))

    for object_id in visible:
        grouped[kb.objects[object_id].type_id].add(object_id)
    return grouped


# ── tree expansion ────────────────────────────────────────────────

_BODY_LINK_TYPES = ("Calls", "Reads", "Writes", "Instantiates")
_MEMBER_HOLDERS = frozenset({"Namespace", "Class"})
_BODY_HOLDERS = frozenset({"Method", "Constructor", "Property", "Delegate"})


def _ordered_child_links(kb: KnowledgeBase, obj: KnowledgeObject) -> list[LinkObject]:
    """Links rendered as children of obj, in display order."""
    outgoing = kb.links_from(obj.id)
    children: list[LinkObject] = []
    if obj.type_id in _MEMBER_HOLDERS:
        contains = [l for l in outgoing if l.link_type_id == "Contains"]
        contains.sort(key=lambda l: (l.seq is None, l.seq or 0, l.child_id))
        children.extend(contains)
    elif obj.type_id in _BODY_HOLDERS:
        params = [l for l in outgoing if l.link_type_id == "HasParameter"]
        params.sort(key=lambda l: (l.seq is None, l.seq or 0, l.child_id))
        children.extend(params)
        body = [l for l in outgoing
                if l.link_type_id in _BODY_LINK_TYPES and l.seq is not None]
        body.sort(key=lambda l: l.seq)
        children.extend(body)
    related = [l for l in outgoing if l.link_type_id == "Related"]
    related.sort(key=lambda l: (l.child_id, l.seq is None, l.seq or 0))
    children.extend(related)
    return children


def _node_for_link(kb: KnowledgeBase, parent: KnowledgeObject, link: LinkObject,
                   ancestors: frozenset[str]) -> TraceTreeNode:
    target = kb.objects[link.child_id]
    cyclic = target.id in ancestors
    expandable = (not cyclic and not target.external
                  and bool(_ordered_child_links(kb, target)))
    if link.link_type_id == "HasParameter":
        kind, label, seq = "ParamEntry", target.name, None
    elif link.link_type_id == "Calls":
        kind, seq = "CallEntry", link.seq
        label = target.name
    elif link.link_type_id in ("Reads", "Writes"):
        kind, seq = "UseEntry", link.seq
        label = f"{target.name} ({'read' if link.link_type_id == 'Reads' else 'write'})"
    elif link.link_type_id == "Instantiates":
        kind, seq = "NewEntry", link.seq
        label = f"new {target.name}"
    else:
        kind, label, seq = "Declaration", target.name, None
    same_class = False
    if kind == "CallEntry":
        same_class = _same_class(kb, parent.id, target.id)
        if same_class:
            label = f"Calls::{label}"
    return TraceTreeNode(
        label=label, object_id=target.id, node_kind=kind,
        same_class_call=same_class, expandable=expandable, cyclic=cyclic,
        seq=seq, accessibility=target.accessibility, type_id=target.type_id,
    )


def _same_class(kb: KnowledgeBase, caller_id: str, callee_id: str) -> bool:
    caller_class = _enclosing_class(kb, caller_id)
    return caller_class is not None and caller_class == _enclosing_class(kb, callee_id)


def _enclosing_class(kb: KnowledgeBase, object_id: str) -> str | None:
    cursor = kb.contains_parent_of(object_id)
    while cursor is not None:
        if kb.objects[cursor].type_id == "Class":
            return cursor
        cursor = kb.contains_parent_of(cursor)
    return None


def expand(kb: KnowledgeBase, path: list[str]) -> list[TraceTreeNode]:
    """Children of the last object on the expansion path.

    Each path element must identify an object that was expandable in context;
    ancestors on the path flag repeated call targets as cyclic.
    """
    if not path:
        raise UnknownObject("expansion path is empty")
    for object_id in path:
        if object_id not in kb.objects:
            raise UnknownObject(f"object {object_id!r} does not exist")
    target = kb.objects[path[-1]]
    ancestors = frozenset(path[:-1])
    if target.id in ancestors:
        raise NotExpandable(f"object {target.id!r} repeats on its own path")
    if target.external:
        raise NotExpandable(f"external object {target.id!r} cannot be expanded")
    links = _ordered_child_links(kb, target)
    if not links:
        raise NotExpandable(f"object {target.id!r} has nothing to expand")
    all_ancestors = frozenset(path)
    return [_node_for_link(kb, target, link, all_ancestors) for link in links]


# ── attribute summary and reverse traceability ────────────────────

@dataclass
class AttributeSummary:
    creates: list[str]
    calls: list[str]
    called_by: list[str]
    reads: list[str]
    writes: list[str]


def object_attributes(kb: KnowledgeBase, object_id: str) -> AttributeSummary:
    if object_id not in kb.objects:
        raise UnknownObject(f"object {object_id!r} does not exist")
    outgoing = kb.links_from(object_id)
    incoming = kb.links_to(object_id)

    def collect(links: list[LinkObject], link_type: str, end: str) -> list[str]:
        ids = {getattr(l, end) for l in links if l.link_type_id == link_type}
        return sorted(ids)

    return AttributeSummary(
        creates=collect(outgoing, "Instantiates", "child_id"),
        calls=collect(outgoing, "Calls", "child_id"),
        called_by=collect(incoming, "Calls", "parent_id"),
        reads=collect(outgoing, "Reads", "child_id"),
        writes=collect(outgoing, "Writes", "child_id"),
    )


def reverse_related(kb: KnowledgeBase, target_ids: set[str], from_type: str,
                    enabled_link_types: set[str] | None = None) -> set[str]:
    """Objects of from_type that parent at least one link into target_ids."""
    if from_type not in kb.types:
        raise UnknownType(f"knowledge type {from_type!r} is not registered")
    for object_id in target_ids:
        if object_id not in kb.objects:
            raise UnknownObject(f"target object {object_id!r} does not exist")
    result: set[str] = set()
    for target_id in target_ids:
        for link in kb.links_to(target_id):
            if enabled_link_types is not None and link.link_type_id not in enabled_link_types:
                continue
            if kb.objects[link.parent_id].type_id == from_type:
                result.add(link.parent_id)
    return result
