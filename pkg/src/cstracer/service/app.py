"""HTTP/JSON service over a knowledge base file.

Mutations are applied one at a time under a lock and written through to the
backing XML file, so the file always matches the in-memory state after a
successful mutating response. Clients poll /api/events to refresh.
"""

from __future__ import annotations

import os
import tempfile
import threading
from pathlib import Path

from fastapi import FastAPI, HTTPException, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles

from .. import kb as kbmod
from ..ids import split_id_list, split_path_ids
from ..query import (
    NotExpandable,
    Selection,
    expand,
    object_attributes,
    reverse_related,
    visible_set,
)
from .schemas import (
    AttributesInfo,
    DocLinkPayload,
    EventInfo,
    LinkCreateRequest,
    LinkInfo,
    LinkTypeInfo,
    NotePayload,
    ObjectDetail,
    ObjectSummary,
    SelectionRequest,
    SelectionResponse,
    TextPayload,
    TreeNode,
    TypeInfo,
)


class ServiceState:
    def __init__(self, kb: kbmod.KnowledgeBase, kb_path: str | Path):
        self.kb = kb
        self.kb_path = Path(kb_path)
        self.lock = threading.Lock()

    def write_through(self) -> None:
        payload = self.kb.persist()
        fd, tmp = tempfile.mkstemp(dir=str(self.kb_path.parent or Path(".")),
                                   prefix=self.kb_path.name, suffix=".tmp")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as fh:
                fh.write(payload)
            os.replace(tmp, self.kb_path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise


def _http_error(exc: kbmod.KBError) -> HTTPException:
    if isinstance(exc, (kbmod.UnknownObject, kbmod.UnknownType,
                        kbmod.UnknownEndpoint, kbmod.UnknownLinkType)):
        return HTTPException(status_code=404, detail=str(exc))
    if isinstance(exc, (kbmod.DuplicateId, kbmod.DuplicateLink, kbmod.ContainsViolation)):
        return HTTPException(status_code=409, detail=str(exc))
    return HTTPException(status_code=400, detail=str(exc))


def create_app(kb_path: str | Path, static_dir: str | Path | None = None) -> FastAPI:
    state = ServiceState(kbmod.restore(Path(kb_path).read_text(encoding="utf-8")), kb_path)
    app = FastAPI(title="tracer", openapi_url=None)
    app.state.service = state

    @app.exception_handler(kbmod.KBError)
    async def kb_error_handler(_request: Request, exc: kbmod.KBError):
        http = _http_error(exc)
        return JSONResponse(status_code=http.status_code, content={"detail": http.detail})

    @app.exception_handler(NotExpandable)
    async def not_expandable_handler(_request: Request, exc: NotExpandable):
        return JSONResponse(status_code=400, content={"detail": str(exc)})

    @app.exception_handler(RequestValidationError)
    async def validation_handler(_request: Request, exc: RequestValidationError):
        return JSONResponse(status_code=400, content={"detail": str(exc)})

    @app.get("/api/types", response_model=list[TypeInfo])
    def get_types():
        types = sorted(state.kb.types.values(), key=lambda t: (t.display_order, t.id))
        return [TypeInfo(id=t.id, displayOrder=t.display_order) for t in types]

    @app.get("/api/linktypes", response_model=list[LinkTypeInfo])
    def get_link_types():
        return [LinkTypeInfo(id=t) for t in sorted(state.kb.link_types)]

    @app.get("/api/objects", response_model=list[ObjectSummary])
    def get_objects(type: str | None = None):
        if type is not None and type not in state.kb.types:
            raise HTTPException(status_code=404, detail=f"unknown knowledge type {type!r}")
        objects = [o for o in state.kb.objects.values()
                   if type is None or o.type_id == type]
        objects.sort(key=lambda o: o.id)
        return [ObjectSummary(id=o.id, name=o.name, access=o.accessibility,
                              external=o.external) for o in objects]

    @app.post("/api/selection", response_model=SelectionResponse)
    def post_selection(req: SelectionRequest):
        selection = Selection(
            checked_ids=set(req.checked),
            enabled_link_types=set(req.linkTypes) if req.linkTypes is not None else None,
            max_depth=req.maxDepth,
        )
        grouped = visible_set(state.kb, selection)
        return SelectionResponse(visible={t: sorted(ids) for t, ids in grouped.items()})

    @app.get("/api/tree", response_model=list[TreeNode])
    def get_tree(path: str):
        ids = split_path_ids(state.kb, path)
        nodes = expand(state.kb, ids)
        return [TreeNode(label=n.label, objectId=n.object_id, nodeKind=n.node_kind,
                         sameClassCall=n.same_class_call, expandable=n.expandable,
                         cyclic=n.cyclic, seq=n.seq, access=n.accessibility,
                         typeId=n.type_id) for n in nodes]

    def _detail(object_id: str) -> ObjectDetail:
        obj = state.kb.objects.get(object_id)
        if obj is None:
            raise kbmod.UnknownObject(f"object {object_id!r} does not exist")
        attrs = object_attributes(state.kb, object_id)
        return ObjectDetail(
            id=obj.id, typeId=obj.type_id, name=obj.name, access=obj.accessibility,
            external=obj.external, description=obj.description, version=obj.version,
            notes=[NotePayload(level=n.level, text=n.text) for n in obj.notes],
            docLinks=[DocLinkPayload(href=d.href, anchor=d.anchor) for d in obj.doc_links],
            attributes=AttributesInfo(
                creates=attrs.creates, calls=attrs.calls, calledBy=attrs.called_by,
                reads=attrs.reads, writes=attrs.writes),
        )

    @app.get("/api/object/{object_id:path}", response_model=ObjectDetail)
    def get_object(object_id: str):
        return _detail(object_id)

    @app.post("/api/object/{object_id:path}/description", response_model=ObjectDetail)
    def post_description(object_id: str, payload: TextPayload):
        with state.lock:
            state.kb.set_description(object_id, payload.text)
            state.write_through()
        return _detail(object_id)

    @app.post("/api/object/{object_id:path}/version", response_model=ObjectDetail)
    def post_version(object_id: str, payload: TextPayload):
        with state.lock:
            state.kb.set_version(object_id, payload.text)
            state.write_through()
        return _detail(object_id)

    @app.post("/api/object/{object_id:path}/notes", response_model=ObjectDetail)
    def post_note(object_id: str, payload: NotePayload):
        with state.lock:
            state.kb.add_note(object_id, payload.level, payload.text)
            state.write_through()
        return _detail(object_id)

    @app.post("/api/object/{object_id:path}/docs", response_model=ObjectDetail)
    def post_doc_link(object_id: str, payload: DocLinkPayload):
        with state.lock:
            state.kb.add_doc_link(object_id, payload.href, payload.anchor)
            state.write_through()
        return _detail(object_id)

    @app.post("/api/links", response_model=LinkInfo)
    def post_link(req: LinkCreateRequest):
        with state.lock:
            link = state.kb.add_link(req.linkType, req.parent, req.child)
            state.write_through()
        return LinkInfo(linkType=link.link_type_id, parent=link.parent_id,
                        child=link.child_id, seq=link.seq)

    @app.get("/api/reverse", response_model=list[str])
    def get_reverse(type: str, targets: str):
        target_ids = set(split_id_list(targets))
        return sorted(reverse_related(state.kb, target_ids, type))

    @app.get("/api/events", response_model=list[EventInfo])
    def get_events(since: int = 0):
        return [EventInfo(seqNo=e.seq_no, kind=e.kind, subjectId=e.subject_id)
                for e in state.kb.events_since(since)]

    if static_dir is not None:
        app.mount("/", StaticFiles(directory=str(static_dir), html=True), name="ui")

    return app
