// Node text colors and accessibility ball colors. These tables are a fixed
// contract with the column renderer; tests assert them verbatim.

import type { TreeNode } from "./types.js";

export const TYPE_TEXT_COLORS: Record<string, string> = {
  Method: "red",
  Namespace: "grey",
  Class: "blue",
  Constructor: "brown",
  Property: "olive",
  Variable: "magenta",
  Delegate: "teal",
  Event: "purple",
};

export const NODE_KIND_TEXT_COLORS: Record<string, string> = {
  CallEntry: "red",
  ParamEntry: "orange",
  UseEntry: "magenta",
  NewEntry: "blue",
};

export const BALL_COLORS: Record<string, string> = {
  public: "green",
  private: "red",
  protected: "yellow",
  internal: "yellow",
  none: "yellow",
  unknown: "yellow",
};

// Same ball scheme reused for note levels, severity-increasing.
export const NOTE_LEVEL_COLORS: Record<string, string> = {
  info: "green",
  solved: "yellow",
  open: "red",
};

export function textColor(node: Pick<TreeNode, "nodeKind" | "typeId">): string {
  if (node.nodeKind !== "Declaration" && node.nodeKind in NODE_KIND_TEXT_COLORS) {
    return NODE_KIND_TEXT_COLORS[node.nodeKind];
  }
  return TYPE_TEXT_COLORS[node.typeId] ?? "black";
}

export function ballColor(access: string): string {
  return BALL_COLORS[access] ?? "yellow";
}
