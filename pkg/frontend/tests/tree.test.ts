import assert from "node:assert/strict";
import test from "node:test";

import { ApiClient, ApiError } from "../src/api.js";
import { TreeModel } from "../src/tree.js";
import { IB_CHILDREN, M_IB, M_OE, OE_CHILDREN, RENDER_STUB, fakeService } from "./fake.js";

test("expanding a method lists params then body entries in service order", async () => {
  const tree = new TreeModel(new ApiClient(fakeService().fetch));
  await tree.expand([M_OE]);
  const rows = tree.rowsUnder(M_OE);
  assert.deepEqual(rows.map((r) => r.node.label), ["sender", "e", "Calls::ZoomOut"]);
  assert.deepEqual(rows.map((r) => r.depth), [1, 1, 1]);
});

test("same-class call keeps the Calls:: prefix and its subtree matches the overload", async () => {
  const tree = new TreeModel(new ApiClient(fakeService().fetch));
  await tree.expand([M_OE]);
  await tree.expand([M_OE, M_IB]);
  const rows = tree.rowsUnder(M_OE);
  const nested = rows.filter((r) => r.depth === 2).map((r) => r.node);
  assert.deepEqual(nested, IB_CHILDREN);
  const callRow = rows.find((r) => r.node.nodeKind === "CallEntry" && r.depth === 1)!;
  assert.equal(callRow.node.label, "Calls::ZoomOut");
  assert.ok(callRow.node.sameClassCall);
});

test("external and cyclic nodes show no expander", () => {
  const externalCall = IB_CHILDREN.at(-1)!;
  assert.equal(externalCall.objectId, RENDER_STUB);
  assert.ok(!TreeModel.hasExpander(externalCall));
  const cyclic = { ...externalCall, expandable: false, cyclic: true };
  assert.ok(!TreeModel.hasExpander(cyclic));
  const callEntry = OE_CHILDREN.at(-1)!;
  assert.ok(TreeModel.hasExpander(callEntry));
});

test("a refused expansion leaves the node collapsed", async () => {
  const tree = new TreeModel(new ApiClient(fakeService().fetch));
  await assert.rejects(tree.expand([RENDER_STUB]), (err: unknown) =>
    err instanceof ApiError && err.status === 400);
  assert.ok(!tree.isExpanded([RENDER_STUB]));
});

test("collapse hides the subtree but keeps cached children", async () => {
  const service = fakeService();
  const tree = new TreeModel(new ApiClient(service.fetch));
  await tree.expand([M_OE]);
  tree.collapse([M_OE]);
  assert.deepEqual(tree.rowsUnder(M_OE), []);
  const before = service.requests.length;
  await tree.expand([M_OE]);
  assert.equal(service.requests.length, before);  // served from cache
  assert.equal(tree.rowsUnder(M_OE).length, OE_CHILDREN.length);
});
