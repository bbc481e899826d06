"""Pydantic request/response models for the HTTP API (JSON, camelCase keys)."""

from __future__ import annotations

from pydantic import BaseModel


class TypeInfo(BaseModel):
    id: str
    displayOrder: int


class LinkTypeInfo(BaseModel):
    id: str


class ObjectSummary(BaseModel):
    id: str
    name: str
    access: str
    external: bool


class SelectionRequest(BaseModel):
    checked: list[str] = []
    linkTypes: list[str] | None = None
    maxDepth: int | None = None


class SelectionResponse(BaseModel):
    visible: dict[str, list[str]]


class TreeNode(BaseModel):
    label: str
    objectId: str | None
    nodeKind: str
    sameClassCall: bool
    expandable: bool
    cyclic: bool
    seq: int | None
    access: str
    typeId: str


class NotePayload(BaseModel):
    level: str
    text: str


class DocLinkPayload(BaseModel):
    href: str
    anchor: str | None = None


class TextPayload(BaseModel):
    text: str


class AttributesInfo(BaseModel):
    creates: list[str]
    calls: list[str]
    calledBy: list[str]
    reads: list[str]
    writes: list[str]


class ObjectDetail(BaseModel):
    id: str
    typeId: str
    name: str
    access: str
    external: bool
    description: str
    version: str
    notes: list[NotePayload]
    docLinks: list[DocLinkPayload]
    attributes: AttributesInfo


class LinkCreateRequest(BaseModel):
    parent: str
    child: str
    linkType: str


class LinkInfo(BaseModel):
    linkType: str
    parent: str
    child: str
    seq: int | None


class EventInfo(BaseModel):
    seqNo: int
    kind: str
    subjectId: str
