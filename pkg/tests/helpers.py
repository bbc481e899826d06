"""Shared test fixtures: corpus ids, source generators, and independent oracles."""

from __future__ import annotations

import random
from pathlib import Path

from cstracer.kb import BUILTIN_KNOWLEDGE_TYPES, BUILTIN_LINK_TYPES, KBError, KnowledgeBase
from cstracer.syntax import CallEvent, LocalEvent, NewEvent, UseEvent

CORPUS_DIR = Path(__file__).resolve().parent.parent / "corpus"
CORPUS_FILE = CORPUS_DIR / "cleanup.cs"

NS = "GeomKernel.CmdsCleanup"
CLS = NS + ".CleanupControl"
M_OE = CLS + ".ZoomOut(object,EventArgs)"
M_IB = CLS + ".ZoomOut(int,bool)"
F_RD = CLS + ".rd"
F_CURVE = CLS + ".m_drag_curve"
F_GL = CLS + ".glControl"
RENDER_STUB = "extern:Renderer.Render/1"


def event_sig(ev) -> tuple:
    """Body-event identity without its seq number."""
    if isinstance(ev, UseEvent):
        return ("use", ev.name, ev.kind)
    if isinstance(ev, CallEvent):
        return ("call", ev.qualifier, ev.name, ev.argc)
    if isinstance(ev, NewEvent):
        return ("new", ev.type_name, ev.argc)
    if isinstance(ev, LocalEvent):
        return ("local", ev.name, ev.type_name)
    raise TypeError(type(ev).__name__)


def overload_chain_source(seed: int) -> str:
    """One class whose same-name overloads call strictly deeper overloads.

    Arities are distinct and no overload calls back up the chain, so call
    entries are same-class, resolvable, and acyclic.
    """
    rng = random.Random(seed)
    cls = rng.choice(("Widget", "Mixer", "Router", "Canvas")) + str(seed)
    method = rng.choice(("Refresh", "Apply", "Advance"))
    depth = rng.randint(2, 4)
    lines = [
        f"namespace Gen.Pack{seed}",
        "{",
        f"    class {cls}",
        "    {",
        "        private int counter;",
        f"        private Helper{seed} helper;",
        "",
    ]
    for arity in range(1, depth + 1):
        params = ", ".join(f"int a{i}" for i in range(arity))
        lines.append(f"        public void {method}({params})")
        lines.append("        {")
        lines.append("            counter = a0;")
        if arity < depth:
            args = ", ".join(f"a{i}" for i in range(arity)) + f", a{arity - 1}"
            lines.append(f"            {method}({args});")
        elif rng.random() < 0.5:
            lines.append("            helper.Act(counter);")
        else:
            lines.append(f"            Sink{seed} s = new Sink{seed}(counter);")
        lines.append("        }")
        lines.append("")
    lines.extend(["    }", "}", ""])
    return "\n".join(lines)


_BODY_STATEMENTS = (
    "x = a + b;",
    "x = x - 1;",
    "y = null;",
    "Notify(a, 1);",
    "rd.Render(b);",
    "y = new Curve(c);",
    "x += b;",
    "x++;",
    "int t{i} = a;",
    "Notify(Lift(a), c);",
)


def random_body(rng: random.Random) -> str:
    stmts = []
    for i in range(rng.randint(1, 6)):
        stmts.append(rng.choice(_BODY_STATEMENTS).replace("{i}", str(i)))
    return " ".join(stmts)


def wrap_body(body: str) -> str:
    return (
        "namespace Gen.Flow { class Holder { "
        "private Renderer rd; private int x; private Curve y; "
        "public void Run(int a, int b, int c) { " + body + " } } }"
    )


def random_kb(seed: int, max_objects: int = 200, max_links: int = 800) -> KnowledgeBase:
    rng = random.Random(seed)
    kb = KnowledgeBase()
    ids = [f"obj{i}" for i in range(rng.randint(1, max_objects))]
    for object_id in ids:
        kb.add_object(rng.choice(BUILTIN_KNOWLEDGE_TYPES), object_id, object_id)
    wanted = rng.randint(0, max_links)
    added = attempts = 0
    while added < wanted and attempts < wanted * 3 + 10:
        attempts += 1
        seq = rng.randint(1, 50) if rng.random() < 0.3 else None
        try:
            kb.add_link(rng.choice(BUILTIN_LINK_TYPES), rng.choice(ids),
                        rng.choice(ids), seq)
            added += 1
        except KBError:
            continue
    return kb


def bfs_visible(kb: KnowledgeBase, checked: set[str],
                enabled: set[str] | None, max_depth: int | None) -> set[str]:
    """Independent level-by-level closure over the undirected link graph."""
    adjacency: dict[str, set[str]] = {}
    for link in kb.links:
        if enabled is not None and link.link_type_id not in enabled:
            continue
        adjacency.setdefault(link.parent_id, set()).add(link.child_id)
        adjacency.setdefault(link.child_id, set()).add(link.parent_id)
    seen = set(checked)
    frontier = set(checked)
    depth = 0
    while frontier and (max_depth is None or depth < max_depth):
        layer: set[str] = set()
        for node in frontier:
            for neighbor in adjacency.get(node, ()):
                if neighbor not in seen:
                    seen.add(neighbor)
                    layer.add(neighbor)
        frontier = layer
        depth += 1
    return seen
