// Wire types for the tracer HTTP API.

export interface TypeInfo {
  id: string;
  displayOrder: number;
}

export interface LinkTypeInfo {
  id: string;
}

export interface ObjectSummary {
  id: string;
  name: string;
  access: string;
  external: boolean;
}

export interface SelectionRequest {
  checked: string[];
  linkTypes: string[] | null;
  maxDepth: number | null;
}

export interface SelectionResponse {
  visible: Record<string, string[]>;
}

export interface TreeNode {
  label: string;
  objectId: string | null;
  nodeKind: "Declaration" | "CallEntry" | "UseEntry" | "NewEntry" | "ParamEntry";
  sameClassCall: boolean;
  expandable: boolean;
  cyclic: boolean;
  seq: number | null;
  access: string;
  typeId: string;
}

export interface NotePayload {
  level: "info" | "solved" | "open";
  text: string;
}

export interface DocLinkPayload {
  href: string;
  anchor: string | null;
}

export interface AttributesInfo {
  creates: string[];
  calls: string[];
  calledBy: string[];
  reads: string[];
  writes: string[];
}

export interface ObjectDetail {
  id: string;
  typeId: string;
  name: string;
  access: string;
  external: boolean;
  description: string;
  version: string;
  notes: NotePayload[];
  docLinks: DocLinkPayload[];
  attributes: AttributesInfo;
}

export interface LinkInfo {
  linkType: string;
  parent: string;
  child: string;
  seq: number | null;
}

export interface EventInfo {
  seqNo: number;
  kind: string;
  subjectId: string;
}
