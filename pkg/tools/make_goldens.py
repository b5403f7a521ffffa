#!/usr/bin/env python3
"""Regenerate test fixtures and golden outputs.

Run from the repository root after an intentional format or geometry
change, then review the diff:

    python3 tools/make_goldens.py
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from scriptgrove import (  # noqa: E402
    build_from_log, compute_layout, export_graph, export_layout,
    generate_random_log, parse_log, serialize_log, LayoutParams, render_svg,
)
from scriptgrove.editlog import AtomicEdit, EditLog  # noqa: E402

ROOT = Path(__file__).resolve().parents[1]
FIXTURES = ROOT / "tests" / "fixtures"
GOLDEN = ROOT / "tests" / "golden"

BASE = 1_600_000_000_000
DAY = 86_400_000


def abcd() -> EditLog:
    """The five-operation worked example: final text "D", A/B/C all dead."""
    e = [
        AtomicEdit.insert(BASE + 1000, 0, "A"),
        AtomicEdit.insert(BASE + 2000, 1, "BC"),
        AtomicEdit.delete(BASE + 3000, 0, 2),
        AtomicEdit.insert(BASE + 4000, 0, "D"),
        AtomicEdit.delete(BASE + 5000, 1, 1),
    ]
    return EditLog(doc_id="abcd", created_at=BASE, edits=tuple(e))


def twopara() -> EditLog:
    """Body typed first, intro prepended afterwards: two bursts, two branches."""
    body = "The body of the piece was written first, top to bottom."
    intro = "An introduction, added once the body stood.\n\n"
    edits = []
    t = BASE
    cursor = 0
    for ch in body:
        t += 150
        edits.append(AtomicEdit.insert(t, cursor, ch))
        cursor += 1
    # jump to the start and type the intro
    cursor = 0
    for ch in intro:
        t += 150
        edits.append(AtomicEdit.insert(t, cursor, ch))
        cursor += 1
    return EditLog(doc_id="twopara", created_at=BASE, edits=tuple(edits))


def threeday() -> EditLog:
    """Journal kept newest-entry-first across three calendar days.

    Each day prepends its entry at offset 0, so every day is its own
    burst; day three also trims a phrase typed on day two.
    """
    chunks = [
        (BASE + 1000, "Day one lays the groundwork.\n"),
        (BASE + DAY + 1000, "Day two keeps the effort going.\n"),
        (BASE + 2 * DAY + 1000, "Day three wraps it up.\n"),
    ]
    edits = []
    t = BASE
    for start, text in chunks:
        t = start
        for cursor, ch in enumerate(text):
            edits.append(AtomicEdit.insert(t, cursor, ch))
            t += 120
    # day three rereads day two and cuts "the effort " from it
    offset = len(chunks[2][1]) + len("Day two keeps ")
    edits.append(AtomicEdit.delete(t + 500, offset, len("the effort ")))
    return EditLog(doc_id="threeday", created_at=BASE, edits=tuple(edits))


def write_log(log: EditLog) -> Path:
    path = FIXTURES / f"{log.doc_id}.jsonl"
    path.write_text(serialize_log(log), encoding="utf-8")
    return path


def write_goldens(log: EditLog) -> None:
    g = build_from_log(log)
    params = LayoutParams()
    layouts = compute_layout(g, params=params)
    (GOLDEN / f"{log.doc_id}.svg").write_bytes(render_svg(layouts, params))
    for name, obj in ((f"{log.doc_id}.graph.json", export_graph(g)),
                      (f"{log.doc_id}.layout.json", export_layout(g, layouts, params))):
        (GOLDEN / name).write_bytes(
            (json.dumps(obj, indent=2, ensure_ascii=False) + "\n").encode("utf-8"))


def main() -> None:
    FIXTURES.mkdir(parents=True, exist_ok=True)
    GOLDEN.mkdir(parents=True, exist_ok=True)
    sample = generate_random_log(42, 150, typo_rate=0.2, doc_id="sample42")
    logs = [abcd(), twopara(), threeday(), sample]
    for log in logs:
        write_log(log)
    for log in (logs[0], logs[1], logs[3]):  # abcd, twopara, sample42
        write_goldens(log)
    print(f"fixtures: {sorted(p.name for p in FIXTURES.iterdir())}")
    print(f"goldens:  {sorted(p.name for p in GOLDEN.iterdir())}")


if __name__ == "__main__":
    main()
