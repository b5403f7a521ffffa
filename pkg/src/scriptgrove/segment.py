"""Branch segmentation of the final text, plus document statistics.

The spanning tree's root has exactly one child (the first insertion —
the trunk), so cutting at raw tree depth would never split anything.
Cut level d instead counts branching levels below the trunk: every live
character is attributed to its insert node's ancestor at tree depth
min(own depth, d + 1), and maximal runs sharing that anchor become
segments. At d=1 the anchors are the trunk and its immediate branches.
"""

from __future__ import annotations

from dataclasses import dataclass

from .burst import Burst
from .editlog import INSERT, EditLog
from .graph import OpGraph, SpanningTree

SEGMENTS_SCHEMA = "scriptgrove-segments/1"
STATS_SCHEMA = "scriptgrove-stats/1"


@dataclass(frozen=True)
class Segment:
    """A maximal run of final-text characters anchored to one branch.

    Char counts and sessions cover the insertions anchored to this branch
    (exclusive of deeper branches that form their own segments), so they
    sum cleanly across distinct branch roots.
    """

    branch_root: int
    start: int
    end: int  # exclusive
    text: str
    depth: int
    color_index: int
    live_chars: int
    dead_chars: int
    sessions: tuple[int, ...]


def _anchor_map(g: OpGraph, tree: SpanningTree, depth: int) -> dict[int, int]:
    cut = depth + 1  # tree depth of the anchors: trunk=1, its branches=2, ...
    return {
        nid: tree.ancestor_at(nid, min(tree.depth(nid), cut))
        for nid in tree.entries
    }


def segment_by_branches(g: OpGraph, tree: SpanningTree | None = None,
                        depth: int = 1) -> list[Segment]:
    """Partition the final text into branch-anchored segments.

    Segments concatenate to ``g.reconstruct_text()``; raising the depth
    only ever splits segments further.
    """
    if depth < 1:
        raise ValueError("cut depth must be >= 1")
    if tree is None:
        tree = g.spanning_tree()
    anchors = _anchor_map(g, tree, depth)

    live: dict[int, int] = {}
    dead: dict[int, int] = {}
    sessions: dict[int, set] = {}
    for nid, anchor in anchors.items():
        node = g.nodes[nid]
        d = sum(1 for k in node.killed_by if k is not None)
        dead[anchor] = dead.get(anchor, 0) + d
        live[anchor] = live.get(anchor, 0) + node.n - d
        sessions.setdefault(anchor, set()).add(node.session)

    text = g.reconstruct_text()
    segments: list[Segment] = []
    run_anchor = None
    run_start = 0
    refs = g.live_char_refs()

    def close(end: int):
        if run_anchor is None:
            return
        a = g.nodes[run_anchor]
        segments.append(Segment(
            branch_root=run_anchor, start=run_start, end=end,
            text=text[run_start:end], depth=tree.depth(run_anchor),
            color_index=a.session % 8, live_chars=live[run_anchor],
            dead_chars=dead[run_anchor],
            sessions=tuple(sorted(sessions[run_anchor])),
        ))

    for pos, ref in enumerate(refs):
        anchor = anchors[ref.node]
        if anchor != run_anchor:
            close(pos)
            run_anchor, run_start = anchor, pos
    close(len(refs))
    return segments


@dataclass(frozen=True)
class DocStats:
    words: int
    operations: int
    bursts: int
    sessions: int
    live_chars: int
    dead_chars: int
    deletion_ratio: float
    branch_density: dict  # depth-1 branch root -> atomic ops per live char


def compute_stats(log: EditLog, bursts: list[Burst], g: OpGraph,
                  tree: SpanningTree | None = None) -> DocStats:
    """Aggregate writing-process statistics for one document."""
    if len(bursts) != len(g.nodes) - 1:
        raise ValueError(
            f"{len(bursts)} bursts do not match graph with {len(g.nodes) - 1} operations"
        )
    if tree is None:
        tree = g.spanning_tree()
    live, dead = g.char_totals()
    total = live + dead

    anchors = _anchor_map(g, tree, depth=1)
    branch_live: dict[int, int] = {}
    branch_ops: dict[int, int] = {}
    for nid, anchor in anchors.items():
        node = g.nodes[nid]
        alive = node.n - sum(1 for k in node.killed_by if k is not None)
        branch_live[anchor] = branch_live.get(anchor, 0) + alive
        branch_ops.setdefault(anchor, 0)
    for burst, node in zip(bursts, g.nodes[1:]):
        if node.kind == INSERT:
            anchor = anchors[node.id]
        else:
            owner = g.resolve_visual_parent(node.bundle[0]).node
            anchor = anchors[owner]
        branch_ops[anchor] = branch_ops.get(anchor, 0) + burst.atomic_count

    density = {
        nid: branch_ops[nid] / max(1, branch_live.get(nid, 0))
        for nid in sorted(branch_ops)
    }
    return DocStats(
        words=len(g.reconstruct_text().split()),
        operations=len(log.edits),
        bursts=len(bursts),
        sessions=len({n.session for n in g.nodes[1:]}),
        live_chars=live,
        dead_chars=dead,
        deletion_ratio=dead / total if total else 0.0,
        branch_density=density,
    )


def segments_to_json(g: OpGraph, segments: list[Segment], depth: int) -> dict:
    return {
        "schema": SEGMENTS_SCHEMA,
        "doc_id": g.doc_id,
        "depth": depth,
        "final_text": g.reconstruct_text(),
        "segments": [
            {
                "branch_root": s.branch_root, "start": s.start, "end": s.end,
                "text": s.text, "depth": s.depth, "color_index": s.color_index,
                "live_chars": s.live_chars, "dead_chars": s.dead_chars,
                "sessions": list(s.sessions),
            }
            for s in segments
        ],
    }


def stats_to_json(stats: DocStats, doc_id: str, description: str = "") -> dict:
    return {
        "schema": STATS_SCHEMA,
        "doc_id": doc_id,
        "description": description,
        "words": stats.words,
        "operations": stats.operations,
        "bursts": stats.bursts,
        "sessions": stats.sessions,
        "live_chars": stats.live_chars,
        "dead_chars": stats.dead_chars,
        "deletion_ratio": round(stats.deletion_ratio, 4),
        "branch_density": {
            str(nid): round(v, 4) for nid, v in stats.branch_density.items()
        },
    }


def stats_table(stats: DocStats, doc_id: str, description: str = "") -> str:
    """Aligned text report; headline columns doc/description/words/operations."""
    headers = ("doc", "description", "words", "operations")
    row = (doc_id or "-", description or "-", str(stats.words), str(stats.operations))
    widths = [max(len(h), len(v)) for h, v in zip(headers, row)]
    lines = [
        "  ".join(h.ljust(w) for h, w in zip(headers, widths)).rstrip(),
        "  ".join(v.ljust(w) for v, w in zip(row, widths)).rstrip(),
        "",
        f"bursts: {stats.bursts}",
        f"sessions: {stats.sessions}",
        f"live chars: {stats.live_chars}",
        f"dead chars: {stats.dead_chars}",
        f"deletion ratio: {stats.deletion_ratio:.3f}",
        "branch density:",
    ]
    for nid, v in stats.branch_density.items():
        lines.append(f"  node {nid}: {v:.3f}")
    return "\n".join(lines) + "\n"
