// Checkbox state and the visibility query. Checking any box narrows every
// column to the service's answer; with nothing checked all objects show.
// Hidden columns keep their check state but cannot be changed while hidden.

import type { ApiClient } from "./api.js";
import type { ObjectSummary } from "./types.js";

export class SelectionModel {
  readonly checked = new Set<string>();
  maxDepth: number | null = null;
  enabledLinkTypes: string[] | null = null;

  /** Full per-type object lists, fetched once and after change events. */
  private allObjects = new Map<string, ObjectSummary[]>();
  /** Current visibility answer; null means "no selection, show everything". */
  private visible: Map<string, Set<string>> | null = null;

  constructor(private readonly api: ApiClient, private readonly typeIds: string[]) {}

  async refreshObjects(): Promise<void> {
    const lists = await Promise.all(this.typeIds.map((t) => this.api.objects(t)));
    this.allObjects = new Map(this.typeIds.map((t, i) => [t, lists[i]]));
  }

  objectsOf(typeId: string): ObjectSummary[] {
    return this.allObjects.get(typeId) ?? [];
  }

  isChecked(id: string): boolean {
    return this.checked.has(id);
  }

  async toggle(id: string): Promise<void> {
    if (this.checked.has(id)) {
      this.checked.delete(id);
    } else {
      this.checked.add(id);
    }
    await this.apply();
  }

  async apply(): Promise<void> {
    if (this.checked.size === 0) {
      this.visible = null;
      return;
    }
    const resp = await this.api.selection({
      checked: [...this.checked].sort(),
      linkTypes: this.enabledLinkTypes,
      maxDepth: this.maxDepth,
    });
    this.visible = new Map(
      Object.entries(resp.visible).map(([t, ids]) => [t, new Set(ids)]),
    );
  }

  /** Rows a column shows right now: exactly the service's visible set. */
  rows(typeId: string): ObjectSummary[] {
    const objects = this.objectsOf(typeId);
    if (this.visible === null) {
      return objects;
    }
    const allowed = this.visible.get(typeId) ?? new Set<string>();
    return objects.filter((o) => allowed.has(o.id));
  }
}
