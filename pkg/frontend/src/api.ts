// Thin typed client over the tracer service. `fetch` is injectable so the
// logic layers are testable without a browser or a running server.

import type {
  EventInfo,
  LinkInfo,
  LinkTypeInfo,
  ObjectDetail,
  ObjectSummary,
  SelectionRequest,
  SelectionResponse,
  TreeNode,
  TypeInfo,
} from "./types.js";

export type FetchLike = (url: string, init?: {
  method?: string;
  headers?: Record<string, string>;
  body?: string;
}) => Promise<{ ok: boolean; status: number; json(): Promise<unknown> }>;

export class ApiError extends Error {
  constructor(readonly status: number, message: string) {
    super(message);
  }
}

export class ApiClient {
  constructor(
    private readonly doFetch: FetchLike,
    private readonly base: string = "",
  ) {}

  private async request<T>(method: string, url: string, body?: unknown): Promise<T> {
    const init: Parameters<FetchLike>[1] = { method };
    if (body !== undefined) {
      init.headers = { "Content-Type": "application/json" };
      init.body = JSON.stringify(body);
    }
    const resp = await this.doFetch(this.base + url, init);
    const payload = (await resp.json().catch(() => ({}))) as { detail?: string };
    if (!resp.ok) {
      throw new ApiError(resp.status, payload.detail ?? `HTTP ${resp.status}`);
    }
    return payload as T;
  }

  types(): Promise<TypeInfo[]> {
    return this.request("GET", "/api/types");
  }

  linkTypes(): Promise<LinkTypeInfo[]> {
    return this.request("GET", "/api/linktypes");
  }

  objects(typeId: string): Promise<ObjectSummary[]> {
    return this.request("GET", `/api/objects?type=${encodeURIComponent(typeId)}`);
  }

  selection(req: SelectionRequest): Promise<SelectionResponse> {
    return this.request("POST", "/api/selection", req);
  }

  tree(path: string[]): Promise<TreeNode[]> {
    return this.request("GET", `/api/tree?path=${encodeURIComponent(path.join("/"))}`);
  }

  object(id: string): Promise<ObjectDetail> {
    return this.request("GET", `/api/object/${encodeURIComponent(id)}`);
  }

  setDescription(id: string, text: string): Promise<ObjectDetail> {
    return this.request("POST", `/api/object/${encodeURIComponent(id)}/description`, { text });
  }

  setVersion(id: string, text: string): Promise<ObjectDetail> {
    return this.request("POST", `/api/object/${encodeURIComponent(id)}/version`, { text });
  }

  addNote(id: string, level: string, text: string): Promise<ObjectDetail> {
    return this.request("POST", `/api/object/${encodeURIComponent(id)}/notes`, { level, text });
  }

  addDocLink(id: string, href: string, anchor: string | null): Promise<ObjectDetail> {
    return this.request("POST", `/api/object/${encodeURIComponent(id)}/docs`, { href, anchor });
  }

  createLink(parent: string, child: string, linkType: string): Promise<LinkInfo> {
    return this.request("POST", "/api/links", { parent, child, linkType });
  }

  events(since: number): Promise<EventInfo[]> {
    return this.request("GET", `/api/events?since=${since}`);
  }
}
