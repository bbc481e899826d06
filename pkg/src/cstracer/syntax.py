"""Syntax tree for the C# subset: declaration structure plus flattened body events.

Bodies hold no statement structure. Control flow is dropped at parse time and
only the variable uses, calls, object creations, and local declarations inside
it survive, numbered 1..n in source evaluation order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union


@dataclass
class UseEvent:
    name: str
    kind: str  # "read" | "write"
    seq: int = 0


@dataclass
class CallEvent:
    name: str
    argc: int
    qualifier: str | None = None
    seq: int = 0


@dataclass
class NewEvent:
    type_name: str
    argc: int
    seq: int = 0


@dataclass
class LocalEvent:
    name: str
    type_name: str
    seq: int = 0


BodyEvent = Union[UseEvent, CallEvent, NewEvent, LocalEvent]


@dataclass
class Param:
    name: str
    type_name: str


@dataclass
class FieldDecl:
    name: str
    type_name: str
    accessibility: str = "none"
    doc: str | None = None


@dataclass
class MethodDecl:
    name: str
    returns: str
    params: list[Param] = field(default_factory=list)
    body: list[BodyEvent] = field(default_factory=list)
    accessibility: str = "none"
    doc: str | None = None


@dataclass
class ConstructorDecl:
    params: list[Param] = field(default_factory=list)
    body: list[BodyEvent] = field(default_factory=list)
    accessibility: str = "none"
    doc: str | None = None


@dataclass
class PropertyDecl:
    name: str
    type_name: str
    accessibility: str = "none"
    getter: list[BodyEvent] | None = None
    setter: list[BodyEvent] | None = None
    doc: str | None = None


@dataclass
class EventDecl:
    name: str
    type_name: str
    accessibility: str = "none"
    doc: str | None = None


@dataclass
class DelegateDecl:
    name: str
    returns: str
    params: list[Param] = field(default_factory=list)
    accessibility: str = "none"
    doc: str | None = None


@dataclass
class ClassDecl:
    name: str
    accessibility: str = "none"
    bases: list[str] = field(default_factory=list)
    members: list["Member"] = field(default_factory=list)
    doc: str | None = None


Member = Union[
    FieldDecl, MethodDecl, ConstructorDecl, PropertyDecl,
    EventDecl, DelegateDecl, ClassDecl,
]


@dataclass
class NamespaceDecl:
    name: str  # possibly dotted, as written
    members: list[Union["NamespaceDecl", ClassDecl, DelegateDecl]] = field(default_factory=list)
    doc: str | None = None


@dataclass
class SyntaxTree:
    usings: list[str] = field(default_factory=list)
    members: list[Union[NamespaceDecl, ClassDecl, DelegateDecl]] = field(default_factory=list)
