"""Operation DAG for document evolution.

Nodes are operations (one root, inserts, deletes); edges are slots, the
places of insertion (POIs) where the cursor can sit. An insert of n
characters consumes one free slot and opens n+1 new ones; a delete of m
characters bundles m+1 adjacent free slots back into a single fresh slot
and marks the m characters between them dead. The current document surface
is kept as an explicit alternating slot/char sequence, so a document of
length L always exposes L+1 free slots.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from datetime import datetime, timezone as _tzmod
from zoneinfo import ZoneInfo

from .burst import Burst
from .editlog import DELETE, INSERT, EditLog

ROOT = "root"

GRAPH_SCHEMA = "scriptgrove-graph/1"


class PoiOutOfRange(IndexError):
    def __init__(self, poi: int, count: int, doc_len: int):
        self.poi = poi
        self.count = count
        self.doc_len = doc_len
        super().__init__(
            f"POI {poi} (+{count}) out of range for document of length {doc_len}"
        )


class NotAnInsertNode(TypeError):
    def __init__(self, node_id: int, kind: str):
        super().__init__(f"node {node_id} is a {kind} node, not an insert")


@dataclass(frozen=True)
class SlotRef:
    """One out-edge of a node: (owner id, slot index)."""

    node: int
    index: int


@dataclass(frozen=True)
class CharRef:
    """One character of an insert node: (owner id, char index)."""

    node: int
    index: int


@dataclass
class OpNode:
    id: int
    kind: str
    t0: int
    t1: int
    session: int
    text: str = ""
    killed_by: list = field(default_factory=list)  # per char: deleter id or None
    deleted_count: int = 0
    bundle: tuple = ()  # delete only: consumed SlotRefs, leftmost first
    slots: list = field(default_factory=list)  # out-edges: target id or None (free)
    in_slot: SlotRef | None = None  # insert only: the slot it consumed

    @property
    def n(self) -> int:
        return len(self.text)


class DaySessionRule:
    """Session = calendar day of the timestamp, ordinals in order of first use."""

    def __init__(self, timezone: str = "UTC"):
        self.timezone = timezone
        self._tz = _tzmod.utc if timezone == "UTC" else ZoneInfo(timezone)
        self._ordinals: dict = {}

    def ordinal(self, t_ms: int) -> int:
        day = datetime.fromtimestamp(t_ms / 1000.0, self._tz).date()
        if day not in self._ordinals:
            self._ordinals[day] = len(self._ordinals)
        return self._ordinals[day]


@dataclass(frozen=True)
class TreeEntry:
    """One insert node's place in the spanning tree."""

    id: int
    parent: int
    gap: int
    fraction: float
    depth: int


class SpanningTree:
    """Insertion-only tree extracted from the graph for visualization.

    Each insert node's visual parent is the owner of the slot its in-edge
    consumed; a delete owner resolves recursively through the delete's
    leftmost bundled slot. This is one admissible spanning tree of the DAG
    (the choice is not unique); deletions have no node of their own here.
    """

    def __init__(self, entries: list[TreeEntry], root: int):
        self.root = root
        self.entries: dict[int, TreeEntry] = {e.id: e for e in entries}
        kids: dict[int, list[TreeEntry]] = {}
        for e in entries:
            kids.setdefault(e.parent, []).append(e)
        self._children = {
            pid: tuple(x.id for x in sorted(group, key=lambda x: x.gap))
            for pid, group in kids.items()
        }

    def __len__(self) -> int:
        return len(self.entries)

    def __contains__(self, nid: int) -> bool:
        return nid in self.entries

    def children(self, nid: int) -> tuple[int, ...]:
        return self._children.get(nid, ())

    def entry(self, nid: int) -> TreeEntry:
        return self.entries[nid]

    def depth(self, nid: int) -> int:
        return self.entries[nid].depth

    def ancestor_at(self, nid: int, depth: int) -> int:
        """The ancestor of nid sitting at the given depth (<= nid's own)."""
        e = self.entries[nid]
        while e.depth > depth:
            e = self.entries[e.parent]
        return e.id

    def preorder(self, nid: int | None = None):
        """Yield node ids of the subtree rooted at nid (default: whole tree)."""
        stack = list(reversed(self.children(self.root) if nid is None else (nid,)))
        while stack:
            cur = stack.pop()
            yield cur
            stack.extend(reversed(self.children(cur)))


class OpGraph:
    """Single-writer operation graph with an explicit document surface."""

    def __init__(self, doc_id: str = "", created_at: int = 0, root_session: int = 0):
        self.doc_id = doc_id
        self.created_at = created_at
        root = OpNode(
            id=0, kind=ROOT, t0=created_at, t1=created_at,
            session=root_session, slots=[None],
        )
        self.nodes: list[OpNode] = [root]
        # Alternating SlotRef, CharRef, ..., SlotRef over the live surface.
        self.inorder: list = [SlotRef(0, 0)]

    # -- surface queries ---------------------------------------------------

    @property
    def live_length(self) -> int:
        return (len(self.inorder) - 1) // 2

    @property
    def free_poi_count(self) -> int:
        return (len(self.inorder) + 1) // 2

    def reconstruct_text(self) -> str:
        """In-order readout of the live characters."""
        return "".join(
            self.nodes[ref.node].text[ref.index] for ref in self.inorder[1::2]
        )

    def live_char_refs(self) -> list[CharRef]:
        return self.inorder[1::2]

    def insert_ids(self) -> list[int]:
        return [n.id for n in self.nodes if n.kind == INSERT]

    def delete_ids(self) -> list[int]:
        return [n.id for n in self.nodes if n.kind == DELETE]

    def last_time(self) -> int:
        return max(n.t1 for n in self.nodes)

    # -- mutation ----------------------------------------------------------

    def apply_insert(self, poi: int, text: str, t0: int, t1: int | None = None,
                     session: int = 0) -> int:
        if not text:
            raise ValueError("insert text must be non-empty")
        if not 0 <= poi <= self.live_length:
            raise PoiOutOfRange(poi, 0, self.live_length)
        consumed: SlotRef = self.inorder[2 * poi]
        nid = len(self.nodes)
        n = len(text)
        node = OpNode(
            id=nid, kind=INSERT, t0=t0, t1=t1 if t1 is not None else t0,
            session=session, text=text, killed_by=[None] * n,
            slots=[None] * (n + 1), in_slot=consumed,
        )
        self.nodes.append(node)
        self.nodes[consumed.node].slots[consumed.index] = nid
        surface: list = [SlotRef(nid, 0)]
        for i in range(n):
            surface.append(CharRef(nid, i))
            surface.append(SlotRef(nid, i + 1))
        self.inorder[2 * poi : 2 * poi + 1] = surface
        return nid

    def apply_delete(self, poi: int, m: int, t0: int, t1: int | None = None,
                     session: int = 0) -> int:
        if m < 1 or poi < 0 or poi + m > self.live_length:
            raise PoiOutOfRange(poi, m, self.live_length)
        lo, hi = 2 * poi, 2 * (poi + m)
        taken = self.inorder[lo : hi + 1]
        nid = len(self.nodes)
        node = OpNode(
            id=nid, kind=DELETE, t0=t0, t1=t1 if t1 is not None else t0,
            session=session, deleted_count=m,
            bundle=tuple(taken[0::2]), slots=[None],
        )
        self.nodes.append(node)
        for ref in node.bundle:
            self.nodes[ref.node].slots[ref.index] = nid
        for ref in taken[1::2]:
            self.nodes[ref.node].killed_by[ref.index] = nid
        self.inorder[lo : hi + 1] = [SlotRef(nid, 0)]
        return nid

    # -- derived structure ---------------------------------------------------

    def resolve_visual_parent(self, ref: SlotRef) -> SlotRef:
        """Follow delete ownership down to an insert (or root) slot."""
        while self.nodes[ref.node].kind == DELETE:
            ref = self.nodes[ref.node].bundle[0]
        return ref

    def spanning_tree(self) -> SpanningTree:
        entries: list[TreeEntry] = []
        depths = {0: 0}
        for node in self.nodes:
            if node.kind != INSERT:
                continue
            ref = self.resolve_visual_parent(node.in_slot)
            owner = self.nodes[ref.node]
            fraction = ref.index / owner.n if owner.kind == INSERT else 0.0
            depth = depths[owner.id] + 1
            depths[node.id] = depth
            entries.append(TreeEntry(
                id=node.id, parent=owner.id, gap=ref.index,
                fraction=fraction, depth=depth,
            ))
        return SpanningTree(entries, root=0)

    def branch_text(self, nid: int, tree: SpanningTree | None = None) -> str:
        """Annotated in-order text of the subtree below an insert node.

        Dead spans are wrapped in square brackets (one span per deleting
        node), and boundaries where child insertions attach are marked with
        a pipe.
        """
        node = self.nodes[nid]
        if node.kind != INSERT:
            raise NotAnInsertNode(nid, node.kind)
        if tree is None:
            tree = self.spanning_tree()
        return self._branch_text(nid, tree)

    def _branch_text(self, nid: int, tree: SpanningTree) -> str:
        node = self.nodes[nid]
        by_gap = {tree.entry(c).gap: c for c in tree.children(nid)}
        pieces: list[str] = []  # own-text chunks and child subtexts, pipe-joined
        own: list[str] = []  # rendered runs of the current own chunk
        run: list[str] = []  # chars of the current same-deleter run
        run_killer: object = None

        def end_run():
            nonlocal run
            if run:
                chunk = "".join(run)
                own.append(chunk if run_killer is None else f"[{chunk}]")
                run = []

        def end_piece():
            end_run()
            if own:
                pieces.append("".join(own))
                own.clear()

        for i in range(node.n + 1):
            if i in by_gap:
                end_piece()
                pieces.append(self._branch_text(by_gap[i], tree))
            if i < node.n:
                killer = node.killed_by[i]
                if run and killer != run_killer:
                    end_run()
                run_killer = killer
                run.append(node.text[i])
        end_piece()
        return "|".join(pieces)

    # -- consistency ---------------------------------------------------------

    def check_poi_law(self) -> None:
        """Free slots must always outnumber live characters by exactly one."""
        if self.free_poi_count != self.live_length + 1:
            raise AssertionError(
                f"POI law violated: {self.free_poi_count} free POIs for "
                f"{self.live_length} characters"
            )

    def char_totals(self) -> tuple[int, int]:
        """(live, dead) character counts across all insert nodes."""
        live = dead = 0
        for node in self.nodes:
            if node.kind == INSERT:
                dead_here = sum(1 for k in node.killed_by if k is not None)
                dead += dead_here
                live += node.n - dead_here
        return live, dead


def build(bursts: list[Burst], created_at: int, session_rule=None,
          doc_id: str = "") -> OpGraph:
    """Apply a burst sequence to a fresh graph.

    Session ordinals default to calendar days (UTC); pass any object with
    an ``ordinal(t_ms)`` method to override.
    """
    rule = session_rule if session_rule is not None else DaySessionRule()
    g = OpGraph(doc_id=doc_id, created_at=created_at,
                root_session=rule.ordinal(created_at))
    for b in bursts:
        session = rule.ordinal(b.start_time)
        if b.kind == INSERT:
            g.apply_insert(b.anchor_offset, b.text, b.start_time, b.end_time, session)
        else:
            g.apply_delete(b.anchor_offset, b.length, b.start_time, b.end_time, session)
    return g


def atomic_bursts(log: EditLog) -> list[Burst]:
    """Wrap each atomic edit as its own single-operation burst (debug mode)."""
    out = []
    for e in log.edits:
        out.append(Burst(
            kind=e.kind, start_time=e.t, end_time=e.t,
            anchor_offset=e.offset, text=e.text, length=e.length,
            atomic_count=1,
        ))
    return out


def build_from_log(log: EditLog, condense_log: bool = True,
                   idle_ms: int | None = None, session_rule=None) -> OpGraph:
    """Convenience wrapper: condense (or not) and build in one step."""
    from .burst import condense

    bursts = condense(log, idle_ms=idle_ms) if condense_log else atomic_bursts(log)
    return build(bursts, log.created_at, session_rule=session_rule, doc_id=log.doc_id)


def export_graph(g: OpGraph) -> dict:
    """JSON-ready graph export: nodes, spanning tree, branch texts."""
    tree = g.spanning_tree()
    nodes = []
    for node in g.nodes:
        rec: dict = {
            "id": node.id, "kind": node.kind,
            "t0": node.t0, "t1": node.t1, "session": node.session,
        }
        if node.kind == INSERT:
            rec["text"] = node.text
            rec["live"] = "".join("0" if k is not None else "1" for k in node.killed_by)
            rec["killed_by"] = list(node.killed_by)
        elif node.kind == DELETE:
            rec["deleted_count"] = node.deleted_count
            rec["bundle"] = [[r.node, r.index] for r in node.bundle]
        rec["slots"] = list(node.slots)
        nodes.append(rec)
    return {
        "schema": GRAPH_SCHEMA,
        "doc_id": g.doc_id,
        "created_at": g.created_at,
        "final_text": g.reconstruct_text(),
        "nodes": nodes,
        "tree": [
            {
                "id": e.id, "parent": e.parent, "gap": e.gap,
                "fraction": e.fraction, "depth": e.depth,
            }
            for e in (tree.entry(nid) for nid in sorted(tree.entries))
        ],
        "branch_texts": {str(nid): g.branch_text(nid, tree) for nid in sorted(tree.entries)},
    }
