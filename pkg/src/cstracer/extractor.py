"""Populate a KnowledgeBase from IR documents.

Declarations become typed objects wired with Contains/HasParameter links,
body events become execution-ordered Calls/Reads/Writes/Instantiates links,
and anything referenced but not loaded becomes an external stub object.
Extraction never fails on unresolved names; it stubs them.

Two passes keep cross-file references honest: every declaration in every file
is registered before any body is resolved, so a type defined in a later file
still resolves instead of stubbing.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

from .ir import IRDocument
from .kb import KnowledgeBase
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
    PropertyDecl,
    UseEvent,
)
from .tokens import PREDEFINED_TYPES


@dataclass
class ResolutionContext:
    """Name lookup state for one method/constructor/property body.

    Lookup precedence for variable uses: locals, then params, then fields.
    """
    current_method_id: str
    locals: dict[str, str] = field(default_factory=dict)
    params: dict[str, str] = field(default_factory=dict)
    fields: dict[str, str] = field(default_factory=dict)
    class_methods: dict[tuple[str, int], list[str]] = field(default_factory=dict)
    loaded_classes: dict[str, str] = field(default_factory=dict)


def _simple_type(type_text: str) -> str:
    """Lookup key for a declared type: drop array suffixes and qualifiers."""
    while type_text.endswith("[]"):
        type_text = type_text[:-2]
    return type_text.rsplit(".", 1)[-1]


class _Extraction:
    def __init__(self) -> None:
        self.kb = KnowledgeBase()
        self.class_by_name: dict[str, str] = {}
        self.type_by_name: dict[str, str] = {}  # classes and delegates, for TypeOf
        self.class_simple: dict[str, str] = {}
        # (name, argc) can be ambiguous: same-arity overloads share a key,
        # so each key holds the candidates in declaration order
        self.methods_of: dict[str, dict[tuple[str, int], list[str]]] = {}
        self.fields_of: dict[str, dict[str, str]] = {}
        self.var_types: dict[str, str] = {}
        self.contains_seq: dict[str, int] = {}
        self.type_refs: list[tuple[str, str]] = []  # (variable/event id, declared type)
        # (owner id, owning class id, params, events)
        self.bodies: list[tuple[str, str, list, list[BodyEvent]]] = []

    # ── shared helpers ────────────────────────────────────────────

    def _ensure_object(self, type_id: str, object_id: str, name: str,
                       accessibility: str = "none", external: bool = False) -> str:
        if object_id not in self.kb.objects:
            self.kb.add_object(type_id, object_id, name, accessibility, external)
        return object_id

    def _contains(self, parent_id: str, child_id: str, seq: int | None = None) -> None:
        if self.kb.contains_parent_of(child_id) is not None:
            return
        if seq is None:
            seq = self.contains_seq.get(parent_id, 0) + 1
        self.contains_seq[parent_id] = seq
        self.kb.add_link("Contains", parent_id, child_id, seq=seq)

    def _describe(self, object_id: str, doc: str | None) -> None:
        if doc and not self.kb.objects[object_id].description:
            self.kb.set_description(object_id, doc)

    def _stub_class(self, simple_name: str) -> str:
        return self._ensure_object("Class", f"extern:{simple_name}", simple_name,
                                   external=True)

    def _stub_method(self, type_guess: str, name: str, argc: int) -> str:
        return self._ensure_object("Method", f"extern:{type_guess}.{name}/{argc}", name,
                                   external=True)

    def _stub_variable(self, name: str) -> str:
        return self._ensure_object("Variable", f"extern:?.{name}", name, external=True)

    # ── pass 1: declarations ──────────────────────────────────────

    def declare(self, doc: IRDocument) -> None:
        for member in doc.tree.members:
            self._declare_ns_member(member, ns_prefix=None, parent_id=None)

    def _declare_ns_member(self, member, ns_prefix: str | None, parent_id: str | None) -> None:
        if isinstance(member, NamespaceDecl):
            fq = f"{ns_prefix}.{member.name}" if ns_prefix else member.name
            self._ensure_object("Namespace", fq, fq)
            if parent_id is not None:
                self._contains(parent_id, fq)
            self._describe(fq, member.doc)
            for child in member.members:
                self._declare_ns_member(child, ns_prefix=fq, parent_id=fq)
            return
        if isinstance(member, ClassDecl):
            self._declare_class(member, scope=ns_prefix, parent_id=parent_id)
            return
        if isinstance(member, DelegateDecl):
            self._declare_delegate(member, scope=ns_prefix, parent_id=parent_id)
            return
        raise TypeError(f"unexpected member {type(member).__name__}")

    def _declare_class(self, decl: ClassDecl, scope: str | None, parent_id: str | None) -> None:
        class_id = f"{scope}.{decl.name}" if scope else decl.name
        self._ensure_object("Class", class_id, decl.name, decl.accessibility)
        if parent_id is not None:
            self._contains(parent_id, class_id)
        self._describe(class_id, decl.doc)
        self.class_by_name.setdefault(decl.name, class_id)
        self.type_by_name.setdefault(decl.name, class_id)
        self.class_simple[class_id] = decl.name
        methods = self.methods_of.setdefault(class_id, {})
        fields = self.fields_of.setdefault(class_id, {})

        for member in decl.members:
            if isinstance(member, FieldDecl):
                var_id = f"{class_id}.{member.name}"
                self._ensure_object("Variable", var_id, member.name, member.accessibility)
                self._contains(class_id, var_id)
                self._describe(var_id, member.doc)
                fields[member.name] = var_id
                self.var_types[var_id] = member.type_name
                self.type_refs.append((var_id, member.type_name))
            elif isinstance(member, MethodDecl):
                method_id = self._signature_id(class_id, member.name, member.params)
                self._ensure_object("Method", method_id, member.name, member.accessibility)
                self._contains(class_id, method_id)
                self._describe(method_id, member.doc)
                methods.setdefault((member.name, len(member.params)), []).append(method_id)
                self._declare_params(method_id, member.params)
                self.bodies.append((method_id, class_id, member.params, member.body))
            elif isinstance(member, ConstructorDecl):
                ctor_id = self._signature_id(class_id, decl.name, member.params)
                self._ensure_object("Constructor", ctor_id, decl.name, member.accessibility)
                self._contains(class_id, ctor_id)
                self._describe(ctor_id, member.doc)
                methods.setdefault((decl.name, len(member.params)), []).append(ctor_id)
                self._declare_params(ctor_id, member.params)
                self.bodies.append((ctor_id, class_id, member.params, member.body))
            elif isinstance(member, PropertyDecl):
                prop_id = f"{class_id}.{member.name}"
                self._ensure_object("Property", prop_id, member.name, member.accessibility)
                self._contains(class_id, prop_id)
                self._describe(prop_id, member.doc)
                events = _merge_accessor_bodies(member.getter, member.setter)
                self.bodies.append((prop_id, class_id, [], events))
            elif isinstance(member, EventDecl):
                event_id = f"{class_id}.{member.name}"
                self._ensure_object("Event", event_id, member.name, member.accessibility)
                self._contains(class_id, event_id)
                self._describe(event_id, member.doc)
                self.type_refs.append((event_id, member.type_name))
            elif isinstance(member, DelegateDecl):
                self._declare_delegate(member, scope=class_id, parent_id=class_id)
            elif isinstance(member, ClassDecl):
                self._declare_class(member, scope=class_id, parent_id=class_id)
            else:
                raise TypeError(f"unexpected class member {type(member).__name__}")

    def _declare_delegate(self, decl: DelegateDecl, scope: str | None,
                          parent_id: str | None) -> None:
        delegate_id = self._signature_id(scope, decl.name, decl.params) if scope \
            else self._signature_id(None, decl.name, decl.params)
        self._ensure_object("Delegate", delegate_id, decl.name, decl.accessibility)
        if parent_id is not None:
            self._contains(parent_id, delegate_id)
        self._describe(delegate_id, decl.doc)
        self.type_by_name.setdefault(decl.name, delegate_id)
        self._declare_params(delegate_id, decl.params)

    @staticmethod
    def _signature_id(scope: str | None, name: str, params: list) -> str:
        sig = ",".join(p.type_name for p in params)
        base = f"{scope}.{name}" if scope else name
        return f"{base}({sig})"

    def _declare_params(self, owner_id: str, params: list) -> None:
        for i, p in enumerate(params):
            param_id = f"{owner_id}#{p.name}"
            self._ensure_object("Variable", param_id, p.name)
            self.kb.add_link("HasParameter", owner_id, param_id, seq=i + 1)
            self.var_types[param_id] = p.type_name
            self.type_refs.append((param_id, p.type_name))

    # ── pass 2: declared-type links, then bodies ──────────────────

    def link_declared_types(self) -> None:
        for subject_id, type_text in self.type_refs:
            target = self._type_target(type_text)
            if target is not None and not self.kb.has_link("TypeOf", subject_id, target):
                self.kb.add_link("TypeOf", subject_id, target)

    def _type_target(self, type_text: str) -> str | None:
        simple = _simple_type(type_text)
        if simple in PREDEFINED_TYPES:
            return None
        loaded = self.type_by_name.get(simple)
        if loaded is not None:
            return loaded
        return self._stub_class(simple)

    def resolve_bodies(self) -> None:
        for owner_id, class_id, params, events in self.bodies:
            ctx = ResolutionContext(
                current_method_id=owner_id,
                params={p.name: f"{owner_id}#{p.name}" for p in params},
                fields=self.fields_of.get(class_id, {}),
                class_methods=self.methods_of.get(class_id, {}),
                loaded_classes=self.class_by_name,
            )
            for ev in events:
                if isinstance(ev, LocalEvent):
                    local_id = f"{owner_id}#{ev.name}"
                    if local_id not in self.kb.objects:
                        self.kb.add_object("Variable", local_id, ev.name)
                        self._contains(owner_id, local_id, seq=ev.seq)
                    self.var_types.setdefault(local_id, ev.type_name)
                    target = self._type_target(ev.type_name)
                    if target is not None and not self.kb.has_link("TypeOf", local_id, target):
                        self.kb.add_link("TypeOf", local_id, target)
                    ctx.locals[ev.name] = local_id
                elif isinstance(ev, UseEvent):
                    var_id = resolve_use(self.kb, ctx, ev.name)
                    link_type = "Reads" if ev.kind == "read" else "Writes"
                    self.kb.add_link(link_type, owner_id, var_id, seq=ev.seq)
                elif isinstance(ev, CallEvent):
                    target = self._resolve_call(ctx, class_id, ev)
                    self.kb.add_link("Calls", owner_id, target, seq=ev.seq)
                elif isinstance(ev, NewEvent):
                    target = self._resolve_new(ev.type_name)
                    self.kb.add_link("Instantiates", owner_id, target, seq=ev.seq)
                else:
                    raise TypeError(f"unexpected body event {type(ev).__name__}")

    @staticmethod
    def _pick_overload(candidates: list[str] | None, caller_id: str) -> str | None:
        """First declared candidate; with several same-arity overloads a call
        never resolves to the calling method itself (argc alone cannot
        distinguish them, and a same-signature self call would not compile)."""
        if not candidates:
            return None
        if len(candidates) > 1:
            for candidate in candidates:
                if candidate != caller_id:
                    return candidate
        return candidates[0]

    def _resolve_call(self, ctx: ResolutionContext, class_id: str, ev: CallEvent) -> str:
        name, argc, qualifier = ev.name, ev.argc, ev.qualifier
        caller = ctx.current_method_id
        if qualifier is None:
            if name == "this":
                # constructor initializer delegating to a same-class constructor
                simple = self.class_simple.get(class_id)
                if simple is not None:
                    target = self._pick_overload(ctx.class_methods.get((simple, argc)), caller)
                    if target is not None:
                        return target
                return self._stub_method("?", name, argc)
            if name == "base":
                return self._stub_method("?", name, argc)
            target = self._pick_overload(ctx.class_methods.get((name, argc)), caller)
            if target is not None:
                return target
            return self._stub_method("?", name, argc)
        if qualifier in ("?", "base") or "." in qualifier:
            return self._stub_method("?", name, argc)
        var_id = (ctx.locals.get(qualifier) or ctx.params.get(qualifier)
                  or ctx.fields.get(qualifier))
        if var_id is not None:
            type_text = self.var_types.get(var_id)
            if type_text is None:
                return self._stub_method("?", name, argc)
            simple = _simple_type(type_text)
            target_class = self.class_by_name.get(simple)
            if target_class is not None:
                target = self._pick_overload(
                    self.methods_of.get(target_class, {}).get((name, argc)), caller)
                if target is not None:
                    return target
            return self._stub_method(simple, name, argc)
        # not a variable: static-style call through a type name
        target_class = self.class_by_name.get(qualifier)
        if target_class is not None:
            target = self._pick_overload(
                self.methods_of.get(target_class, {}).get((name, argc)), caller)
            if target is not None:
                return target
        return self._stub_method(qualifier, name, argc)

    def _resolve_new(self, type_text: str) -> str:
        simple = _simple_type(type_text)
        if simple not in PREDEFINED_TYPES:
            loaded = self.type_by_name.get(simple)
            if loaded is not None:
                return loaded
        return self._stub_class(simple)


def _merge_accessor_bodies(getter: list[BodyEvent] | None,
                           setter: list[BodyEvent] | None) -> list[BodyEvent]:
    """Accessor links attach to the property itself, so renumber the two
    bodies into one strictly increasing stream (getter first)."""
    merged: list[BodyEvent] = []
    for ev in (getter or []) + (setter or []):
        merged.append(replace(ev, seq=len(merged) + 1))
    return merged


def resolve_use(kb: KnowledgeBase, ctx: ResolutionContext, name: str) -> str:
    """Variable id for a used name: locals, then params, then fields;
    unknown names get a reusable external stub."""
    var_id = ctx.locals.get(name) or ctx.params.get(name) or ctx.fields.get(name)
    if var_id is not None:
        return var_id
    stub_id = f"extern:?.{name}"
    if stub_id not in kb.objects:
        kb.add_object("Variable", stub_id, name, external=True)
    return stub_id


def extract(irs: list[IRDocument]) -> KnowledgeBase:
    """Build a knowledge base from IR documents (processed in path order)."""
    ex = _Extraction()
    for doc in sorted(irs, key=lambda d: d.file_path):
        ex.declare(doc)
    ex.link_declared_types()
    ex.resolve_bodies()
    return ex.kb
