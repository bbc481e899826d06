// Detail panel model: four tabs over one selected object.
//   1 identity (name, type, editable description, version, id)
//   2 attributes (creates / calls / called-by / reads / writes)
//   3 leveled notes
//   4 document links

import { ApiClient, ApiError } from "./api.js";
import type { ObjectDetail } from "./types.js";

export type TabIndex = 1 | 2 | 3 | 4;

export class DetailModel {
  detail: ObjectDetail | null = null;
  activeTab: TabIndex = 1;
  /** Set when the selected object disappeared server-side. */
  removed = false;

  constructor(private readonly api: ApiClient) {}

  async select(objectId: string): Promise<void> {
    try {
      this.detail = await this.api.object(objectId);
      this.removed = false;
    } catch (err) {
      if (err instanceof ApiError && err.status === 404) {
        this.detail = null;
        this.removed = true;
        return;
      }
      throw err;
    }
  }

  private requireId(): string {
    if (!this.detail) {
      throw new Error("no object selected");
    }
    return this.detail.id;
  }

  async saveDescription(text: string): Promise<void> {
    this.detail = await this.api.setDescription(this.requireId(), text);
  }

  async saveVersion(text: string): Promise<void> {
    this.detail = await this.api.setVersion(this.requireId(), text);
  }

  async addNote(level: string, text: string): Promise<void> {
    this.detail = await this.api.addNote(this.requireId(), level, text);
  }

  async addDocLink(href: string, anchor: string | null): Promise<void> {
    this.detail = await this.api.addDocLink(this.requireId(), href, anchor);
  }
}
