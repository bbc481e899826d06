// Drag-to-link flow: dropping one object onto another creates a relationship
// after the user confirms a link type (default Related). Self drops and
// cancelled prompts never reach the service.

import { ApiClient, ApiError } from "./api.js";

export type LinkTypePrompt = (defaultType: string) => string | null;

export interface DropResult {
  outcome: "created" | "rejected" | "cancelled" | "duplicate" | "error";
  message?: string;
}

export async function dropLink(
  api: ApiClient,
  sourceId: string,
  targetId: string,
  prompt: LinkTypePrompt,
): Promise<DropResult> {
  if (sourceId === targetId) {
    return { outcome: "rejected", message: "cannot link an object to itself" };
  }
  const linkType = prompt("Related");
  if (linkType === null || linkType === "") {
    return { outcome: "cancelled" };
  }
  try {
    await api.createLink(sourceId, targetId, linkType);
    return { outcome: "created" };
  } catch (err) {
    if (err instanceof ApiError && err.status === 409) {
      return { outcome: "duplicate", message: err.message };
    }
    return { outcome: "error", message: err instanceof Error ? err.message : String(err) };
  }
}
