from __future__ import annotations

import pytest
from fastapi.testclient import TestClient

from cstracer.kb import restore
from cstracer.service import create_app

from helpers import CLS, F_CURVE, F_GL, M_IB, M_OE, RENDER_STUB


@pytest.fixture
def kb_path(tmp_path, corpus_kb):
    path = tmp_path / "kb.xml"
    path.write_text(corpus_kb.persist(), encoding="utf-8")
    return path


@pytest.fixture
def client(kb_path):
    app = create_app(kb_path)
    with TestClient(app) as c:
        c.kb_path = kb_path
        yield c


def test_types_and_linktypes(client):
    types = client.get("/api/types").json()
    assert [t["id"] for t in types][:3] == ["Namespace", "Class", "Constructor"]
    assert types[0]["displayOrder"] == 0
    link_types = {t["id"] for t in client.get("/api/linktypes").json()}
    assert "Calls" in link_types and "Related" in link_types


def test_objects_by_type(client):
    methods = client.get("/api/objects", params={"type": "Method"}).json()
    assert [m["id"] for m in methods] == sorted([M_IB, M_OE, RENDER_STUB])
    render = [m for m in methods if m["id"] == RENDER_STUB][0]
    assert render["external"] is True and render["access"] == "unknown"
    assert client.get("/api/objects", params={"type": "Mystery"}).status_code == 404


def test_selection_empty_lists_everything(client):
    resp = client.post("/api/selection",
                       json={"checked": [], "linkTypes": None, "maxDepth": None})
    assert resp.status_code == 200
    visible = resp.json()["visible"]
    assert M_IB in visible["Method"]
    assert len(visible["Variable"]) == 7  # 3 fields + 4 parameters


def test_selection_depth_one(client):
    resp = client.post("/api/selection", json={"checked": [M_IB], "maxDepth": 1})
    assert resp.status_code == 200
    visible = resp.json()["visible"]
    got = {i for ids in visible.values() for i in ids}
    assert got == {M_IB, CLS, M_IB + "#factor", M_IB + "#redraw",
                   F_CURVE, "GeomKernel.CmdsCleanup.CleanupControl.rd",
                   F_GL, RENDER_STUB, M_OE}


def test_selection_unknown_id_404(client):
    assert client.post("/api/selection", json={"checked": ["ghost"]}).status_code == 404


def test_selection_malformed_body_400(client):
    assert client.post("/api/selection", json={"checked": "not-a-list"}).status_code == 400


def test_tree_route(client):
    resp = client.get("/api/tree", params={"path": M_OE})
    assert resp.status_code == 200
    nodes = resp.json()
    assert [n["label"] for n in nodes] == ["sender", "e", "Calls::ZoomOut"]
    call = nodes[2]
    assert call["sameClassCall"] and call["expandable"] and not call["cyclic"]
    deeper = client.get("/api/tree", params={"path": f"{M_OE}/{M_IB}"}).json()
    direct = client.get("/api/tree", params={"path": M_IB}).json()
    assert deeper == direct


def test_tree_not_expandable_400(client):
    resp = client.get("/api/tree", params={"path": f"{M_IB}/{RENDER_STUB}"})
    assert resp.status_code == 400


def test_object_detail_includes_attributes(client):
    resp = client.get(f"/api/object/{M_IB}")
    assert resp.status_code == 200
    detail = resp.json()
    assert detail["typeId"] == "Method" and detail["name"] == "ZoomOut"
    assert detail["attributes"]["calledBy"] == [M_OE]
    assert detail["attributes"]["writes"] == [F_CURVE]


def test_object_detail_for_stub_with_slash_in_id(client):
    resp = client.get(f"/api/object/{RENDER_STUB}")
    assert resp.status_code == 200
    assert resp.json()["external"] is True


def test_object_unknown_404(client):
    assert client.get("/api/object/ghost").status_code == 404


def test_annotation_routes_and_write_through(client):
    resp = client.post(f"/api/object/{M_IB}/description", json={"text": "zooms out"})
    assert resp.status_code == 200
    assert resp.json()["description"] == "zooms out"
    assert client.post(f"/api/object/{M_IB}/version", json={"text": "b42"}).status_code == 200
    resp = client.post(f"/api/object/{M_IB}/notes",
                       json={"level": "open", "text": "slow on large curves"})
    assert resp.status_code == 200
    assert resp.json()["notes"] == [{"level": "open", "text": "slow on large curves"}]
    resp = client.post(f"/api/object/{M_IB}/docs",
                       json={"href": "design.docx", "anchor": "zoom-spec"})
    assert resp.status_code == 200
    assert resp.json()["docLinks"] == [{"href": "design.docx", "anchor": "zoom-spec"}]

    on_disk = restore(client.kb_path.read_text(encoding="utf-8"))
    obj = on_disk.objects[M_IB]
    assert obj.description == "zooms out" and obj.version == "b42"
    assert [(n.level, n.text) for n in obj.notes] == [("open", "slow on large curves")]


def test_annotation_empty_text_400(client):
    assert client.post(f"/api/object/{M_IB}/description",
                       json={"text": ""}).status_code == 400


def test_link_create_events_and_duplicate_409(client):
    since = client.get("/api/events").json()
    last = since[-1]["seqNo"] if since else 0
    resp = client.post("/api/links",
                       json={"parent": CLS, "child": M_IB, "linkType": "Related"})
    assert resp.status_code == 200
    assert resp.json() == {"linkType": "Related", "parent": CLS, "child": M_IB, "seq": None}
    events = client.get("/api/events", params={"since": last}).json()
    assert any(e["kind"] == "LinkAdded" for e in events)
    assert client.post("/api/links", json={
        "parent": CLS, "child": M_IB, "linkType": "Related"}).status_code == 409
    on_disk = restore(client.kb_path.read_text(encoding="utf-8"))
    assert any(l.link_type_id == "Related" for l in on_disk.links)


def test_link_unknown_endpoint_404(client):
    assert client.post("/api/links", json={
        "parent": "ghost", "child": M_IB, "linkType": "Related"}).status_code == 404
    assert client.post("/api/links", json={
        "parent": CLS, "child": M_IB, "linkType": "Mystery"}).status_code == 404


def test_reverse_route(client):
    resp = client.get("/api/reverse", params={"type": "Method", "targets": F_CURVE})
    assert resp.status_code == 200
    assert resp.json() == [M_IB]
    assert client.get("/api/reverse",
                      params={"type": "Method", "targets": "ghost"}).status_code == 404


def test_events_polling(client):
    assert client.get("/api/events").json() == []
    client.post("/api/links", json={"parent": CLS, "child": M_OE, "linkType": "Related"})
    events = client.get("/api/events", params={"since": 0}).json()
    assert [e["seqNo"] for e in events] == [1]
    assert events[0]["kind"] == "LinkAdded"
    assert client.get("/api/events", params={"since": 1}).json() == []


def test_unknown_route_404(client):
    assert client.get("/api/nothing-here").status_code == 404
