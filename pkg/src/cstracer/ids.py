"""Parsing object-id lists out of CLI arguments and query strings.

Ids are not separator-safe: method ids carry commas inside their signature
parentheses, and external method stubs carry one '/'. List parsing must
respect both.
"""

from __future__ import annotations

from .kb import KnowledgeBase


def split_id_list(text: str) -> list[str]:
    """Split a comma-separated id list, ignoring commas inside parentheses."""
    parts: list[str] = []
    depth = 0
    current: list[str] = []
    for ch in text:
        if ch == "," and depth == 0:
            parts.append("".join(current))
            current = []
            continue
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth = max(0, depth - 1)
        current.append(ch)
    parts.append("".join(current))
    return [p for p in (s.strip() for s in parts) if p]


def split_path_ids(kb: KnowledgeBase, raw: str) -> list[str]:
    """Split a '/'-separated expansion path; '/' inside a known id (external
    method stubs) is absorbed back into that id."""
    segments = [s for s in raw.split("/") if s]
    ids: list[str] = []
    i = 0
    while i < len(segments):
        candidate = segments[i]
        j = i + 1
        while candidate not in kb.objects and j < len(segments):
            candidate = f"{candidate}/{segments[j]}"
            j += 1
        ids.append(candidate)
        i = j
    return ids
