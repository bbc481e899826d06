// Browser entry point: renders the column board, detail tabs, and toolbar,
// and wires every interaction to the service. All query/selection logic
// lives in the models; this file only moves state into the DOM.

import { ApiClient } from "./api.js";
import { ColumnLayout } from "./columns.js";
import { DetailModel } from "./detail.js";
import { dropLink } from "./links.js";
import { EventPoller } from "./poller.js";
import { SelectionModel } from "./selection.js";
import { TreeModel, TreeRow } from "./tree.js";
import { ballColor, NOTE_LEVEL_COLORS, textColor, TYPE_TEXT_COLORS } from "./styles.js";
import type { ObjectSummary, TreeNode } from "./types.js";

const api = new ApiClient((url, init) => fetch(url, init));

let layout: ColumnLayout;
let selection: SelectionModel;
let trees: Map<string, TreeModel>;
let detail: DetailModel;
let dragSourceId: string | null = null;

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K, className?: string, text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

function banner(message: string): void {
  const host = document.getElementById("banner")!;
  const item = el("div", "banner-item", message);
  host.appendChild(item);
  setTimeout(() => item.remove(), 5000);
}

function guard(promise: Promise<unknown>): void {
  promise.catch((err) => banner(err instanceof Error ? err.message : String(err)));
}

function ball(access: string): HTMLElement {
  const dot = el("span", "ball");
  dot.style.backgroundColor = ballColor(access);
  return dot;
}

function makeDraggable(row: HTMLElement, objectId: string): void {
  row.draggable = true;
  row.addEventListener("dragstart", (ev) => {
    dragSourceId = objectId;
    ev.dataTransfer?.setData("text/plain", objectId);
  });
  row.addEventListener("dragover", (ev) => ev.preventDefault());
  row.addEventListener("drop", (ev) => {
    ev.preventDefault();
    const source = dragSourceId ?? ev.dataTransfer?.getData("text/plain") ?? "";
    dragSourceId = null;
    if (!source) return;
    guard(dropLink(api, source, objectId, (def) => window.prompt("Link type:", def))
      .then(async (result) => {
        if (result.outcome === "created") {
          await refreshAfterMutation();
        } else if (result.message) {
          banner(result.message);
        }
      }));
  });
}

function treeRowElement(typeId: string, row: TreeRow): HTMLElement {
  const node = row.node;
  const line = el("div", "row tree-row");
  line.style.paddingLeft = `${row.depth * 16 + 22}px`;
  const tree = trees.get(typeId)!;
  if (TreeModel.hasExpander(node) && node.objectId) {
    const expander = el("span", "expander", tree.isExpanded(row.path) ? "▾" : "▸");
    expander.addEventListener("click", () => {
      if (tree.isExpanded(row.path)) {
        tree.collapse(row.path);
        renderColumns();
      } else {
        guard(tree.expand(row.path).then(renderColumns));
      }
    });
    line.appendChild(expander);
  } else {
    line.appendChild(el("span", "expander-spacer"));
  }
  line.appendChild(ball(node.access));
  const label = el("span", "label", node.label);
  label.style.color = textColor(node);
  line.appendChild(label);
  if (node.cyclic) {
    line.appendChild(el("span", "cycle-glyph", "↺"));
  }
  if (node.objectId) {
    const objectId = node.objectId;
    label.addEventListener("click", () => guard(selectObject(objectId)));
    makeDraggable(line, objectId);
  }
  return line;
}

function columnElement(typeId: string): HTMLElement {
  const column = el("section", "column");
  column.dataset.type = typeId;
  const header = el("header", "column-header", typeId);
  header.style.color = TYPE_TEXT_COLORS[typeId] ?? "black";
  header.draggable = true;
  header.addEventListener("dragstart", (ev) => {
    ev.dataTransfer?.setData("text/column", typeId);
  });
  header.addEventListener("dragover", (ev) => ev.preventDefault());
  header.addEventListener("drop", (ev) => {
    const moved = ev.dataTransfer?.getData("text/column");
    if (moved && moved !== typeId) {
      ev.preventDefault();
      ev.stopPropagation();
      layout.move(moved, layout.visibleOrder().indexOf(typeId));
      renderBoard();
    }
  });
  const hide = el("button", "hide-btn", "×");
  hide.title = "Hide column";
  hide.addEventListener("click", () => {
    layout.hide(typeId);
    renderBoard();
  });
  header.appendChild(hide);
  column.appendChild(header);

  const body = el("div", "column-body");
  const tree = trees.get(typeId)!;
  for (const obj of selection.rows(typeId)) {
    body.appendChild(rootRowElement(typeId, obj));
    for (const row of tree.rowsUnder(obj.id)) {
      body.appendChild(treeRowElement(typeId, row));
    }
  }
  column.appendChild(body);
  return column;
}

function rootRowElement(typeId: string, obj: ObjectSummary): HTMLElement {
  const line = el("div", "row root-row");
  const checkbox = el("input") as HTMLInputElement;
  checkbox.type = "checkbox";
  checkbox.checked = selection.isChecked(obj.id);
  checkbox.addEventListener("change", () => {
    guard(selection.toggle(obj.id).then(renderColumns));
  });
  line.appendChild(checkbox);
  const tree = trees.get(typeId)!;
  if (!obj.external) {
    const expander = el("span", "expander", tree.isExpanded([obj.id]) ? "▾" : "▸");
    expander.addEventListener("click", () => {
      if (tree.isExpanded([obj.id])) {
        tree.collapse([obj.id]);
        renderColumns();
      } else {
        guard(tree.expand([obj.id]).then(renderColumns).catch(() => {
          renderColumns();
        }));
      }
    });
    line.appendChild(expander);
  } else {
    line.appendChild(el("span", "expander-spacer"));
  }
  line.appendChild(ball(obj.access));
  const fakeNode = { nodeKind: "Declaration", typeId } as TreeNode;
  const label = el("span", "label", obj.name);
  label.style.color = textColor(fakeNode);
  label.title = obj.id;
  label.addEventListener("click", () => guard(selectObject(obj.id)));
  line.appendChild(label);
  makeDraggable(line, obj.id);
  return line;
}

function renderColumns(): void {
  const board = document.getElementById("board")!;
  board.textContent = "";
  for (const typeId of layout.visibleOrder()) {
    board.appendChild(columnElement(typeId));
  }
}

function renderBoard(): void {
  renderColumns();
  const menu = document.getElementById("hidden-menu")! as HTMLSelectElement;
  menu.textContent = "";
  menu.appendChild(el("option", undefined, "Show column…"));
  for (const typeId of layout.hiddenTypes()) {
    menu.appendChild(el("option", undefined, typeId));
  }
  menu.onchange = () => {
    if (menu.selectedIndex > 0) {
      layout.show(menu.value);
      renderBoard();
    }
  };
}

async function selectObject(objectId: string): Promise<void> {
  await detail.select(objectId);
  renderDetail();
}

function tabButton(index: 1 | 2 | 3 | 4, title: string): HTMLElement {
  const button = el("button", detail.activeTab === index ? "tab active" : "tab", title);
  button.addEventListener("click", () => {
    detail.activeTab = index;
    renderDetail();
  });
  return button;
}

function renderDetail(): void {
  const host = document.getElementById("detail")!;
  host.textContent = "";
  if (detail.removed) {
    host.appendChild(el("div", "placeholder", "object removed"));
    return;
  }
  const data = detail.detail;
  if (!data) {
    host.appendChild(el("div", "placeholder", "select an object"));
    return;
  }
  const tabs = el("nav", "tabs");
  tabs.append(tabButton(1, "Object"), tabButton(2, "Attributes"),
              tabButton(3, "Notes"), tabButton(4, "Documents"));
  host.appendChild(tabs);
  const pane = el("div", "tab-pane");
  host.appendChild(pane);

  if (detail.activeTab === 1) {
    pane.appendChild(el("h2", undefined, data.name));
    pane.appendChild(el("div", "muted", data.typeId));
    const description = el("textarea") as HTMLTextAreaElement;
    description.value = data.description;
    pane.appendChild(description);
    const save = el("button", undefined, "Save description");
    save.addEventListener("click", () => {
      guard(detail.saveDescription(description.value).then(renderDetail));
    });
    pane.appendChild(save);
    const version = el("input") as HTMLInputElement;
    version.value = data.version;
    version.placeholder = "version";
    pane.appendChild(version);
    const saveVersion = el("button", undefined, "Save version");
    saveVersion.addEventListener("click", () => {
      guard(detail.saveVersion(version.value).then(renderDetail));
    });
    pane.appendChild(saveVersion);
    pane.appendChild(el("div", "muted", `ID: ${data.id}`));
  } else if (detail.activeTab === 2) {
    const attrs = data.attributes;
    const rows: Array<[string, string[]]> = [
      ["Creates", attrs.creates], ["Calls", attrs.calls], ["Called by", attrs.calledBy],
      ["Reads", attrs.reads], ["Writes", attrs.writes]];
    for (const [title, ids] of rows) {
      pane.appendChild(el("h3", undefined, title));
      const list = el("ul");
      for (const id of ids) {
        list.appendChild(el("li", undefined, id));
      }
      pane.appendChild(list);
    }
  } else if (detail.activeTab === 3) {
    const list = el("ul", "notes");
    for (const note of data.notes) {
      const item = el("li");
      const dot = el("span", "ball");
      dot.style.backgroundColor = NOTE_LEVEL_COLORS[note.level];
      item.append(dot, el("span", undefined, note.text));
      list.appendChild(item);
    }
    pane.appendChild(list);
    const level = el("select") as HTMLSelectElement;
    for (const name of ["info", "solved", "open"]) {
      level.appendChild(el("option", undefined, name));
    }
    const text = el("input") as HTMLInputElement;
    text.placeholder = "note text";
    const add = el("button", undefined, "Add note");
    add.addEventListener("click", () => {
      guard(detail.addNote(level.value, text.value).then(renderDetail));
    });
    pane.append(level, text, add);
  } else {
    const list = el("ul", "docs");
    for (const doc of data.docLinks) {
      const item = el("li");
      const anchor = el("a", undefined,
                        doc.anchor ? `${doc.href}#${doc.anchor}` : doc.href) as HTMLAnchorElement;
      anchor.href = doc.href;
      anchor.target = "_blank";
      anchor.rel = "noopener";
      item.appendChild(anchor);
      list.appendChild(item);
    }
    pane.appendChild(list);
    const href = el("input") as HTMLInputElement;
    href.placeholder = "file or URL";
    const anchorInput = el("input") as HTMLInputElement;
    anchorInput.placeholder = "bookmark (optional)";
    const add = el("button", undefined, "Add document link");
    add.addEventListener("click", () => {
      guard(detail.addDocLink(href.value, anchorInput.value || null).then(renderDetail));
    });
    pane.append(href, anchorInput, add);
  }
}

async function refreshAfterMutation(): Promise<void> {
  await selection.refreshObjects();
  await selection.apply();
  for (const tree of trees.values()) {
    tree.collapseAll();
  }
  renderColumns();
  if (detail.detail) {
    await detail.select(detail.detail.id);
    renderDetail();
  }
}

async function start(): Promise<void> {
  const types = await api.types();
  const typeIds = types.sort((a, b) => a.displayOrder - b.displayOrder).map((t) => t.id);
  layout = new ColumnLayout(typeIds);
  selection = new SelectionModel(api, typeIds);
  trees = new Map(typeIds.map((t) => [t, new TreeModel(api)]));
  detail = new DetailModel(api);
  await selection.refreshObjects();

  const depthInput = document.getElementById("max-depth")! as HTMLInputElement;
  depthInput.addEventListener("change", () => {
    selection.maxDepth = depthInput.value === "" ? null : Number(depthInput.value);
    guard(selection.apply().then(renderColumns));
  });

  const poller = new EventPoller(api, refreshAfterMutation);
  setInterval(() => guard(poller.poll()), 2000);

  renderBoard();
  renderDetail();
}

window.addEventListener("load", () => guard(start()));
