"""Condense atomic edits into linear keystroke bursts.

A burst is a maximal run of edits with no voluntary cursor movement between
them. Since the log records edits only, cursor continuity is operationalized
as: an insert lands exactly at the tracked cursor, or a delete stays
adjacent to it. Inserts that were immediately deleted again (typo
corrections) fold away and leave no trace in the burst text.
"""

from __future__ import annotations

from dataclasses import dataclass

from .editlog import DELETE, INSERT, EditLog

__all__ = ["Burst", "condense", "replay_bursts"]


@dataclass(frozen=True)
class Burst:
    """A condensed linear run of edits of one kind."""

    kind: str
    start_time: int
    end_time: int
    anchor_offset: int
    text: str = ""
    length: int = 0
    atomic_count: int = 1

    @property
    def size(self) -> int:
        return len(self.text) if self.kind == INSERT else self.length


class _Open:
    """Mutable burst under construction, plus the tracked cursor."""

    __slots__ = ("kind", "start", "end", "anchor", "chars", "length", "count", "cursor")

    def __init__(self, edit):
        self.kind = edit.kind
        self.start = edit.t
        self.end = edit.t
        self.anchor = edit.offset
        self.count = 1
        if edit.kind == INSERT:
            self.chars = list(edit.text)
            self.length = 0
            self.cursor = edit.offset + len(edit.text)
        else:
            self.chars = []
            self.length = edit.length
            self.cursor = edit.offset

    def finish(self) -> Burst | None:
        if self.kind == INSERT and not self.chars:
            return None  # everything typed was deleted again
        return Burst(
            kind=self.kind,
            start_time=self.start,
            end_time=self.end,
            anchor_offset=self.anchor,
            text="".join(self.chars),
            length=self.length,
            atomic_count=self.count,
        )


def condense(log: EditLog, idle_ms: int | None = None) -> list[Burst]:
    """Group a validated log's edits into bursts.

    An insert at the tracked cursor extends the current insert burst; a
    delete whose range lies entirely inside the current insert burst's text
    folds into it; a delete adjacent to the current delete burst's anchor
    (held backspace or repeated forward-delete) extends it. Anything else
    closes the burst. ``idle_ms``, when set, additionally closes a burst
    whenever the gap to the next edit exceeds it.
    """
    bursts: list[Burst] = []
    cur: _Open | None = None

    def close():
        nonlocal cur
        if cur is not None:
            done = cur.finish()
            if done is not None:
                bursts.append(done)
            cur = None

    for edit in log.edits:
        if cur is not None and idle_ms is not None and edit.t - cur.end > idle_ms:
            close()
        if cur is None:
            cur = _Open(edit)
            continue

        if cur.kind == INSERT:
            extent = cur.anchor + len(cur.chars)
            if edit.kind == INSERT and edit.offset == cur.cursor:
                pos = edit.offset - cur.anchor
                cur.chars[pos:pos] = edit.text
                cur.cursor = edit.offset + len(edit.text)
            elif (
                edit.kind == DELETE
                and edit.offset >= cur.anchor
                and edit.offset + edit.length <= extent
            ):
                pos = edit.offset - cur.anchor
                del cur.chars[pos : pos + edit.length]
                cur.cursor = edit.offset
            else:
                close()
                cur = _Open(edit)
                continue
        else:
            if edit.kind == DELETE and (
                edit.offset + edit.length == cur.anchor or edit.offset == cur.anchor
            ):
                cur.anchor = min(cur.anchor, edit.offset)
                cur.length += edit.length
                cur.cursor = edit.offset
            else:
                close()
                cur = _Open(edit)
                continue

        cur.end = edit.t
        cur.count += 1

    close()
    return bursts


def replay_bursts(bursts: list[Burst], upto_time: int | None = None) -> str:
    """Splice bursts into a document string.

    Equals ``replay_naive`` of the source log; with ``upto_time`` set, only
    bursts ending at or before the cutoff are applied.
    """
    doc = ""
    for b in bursts:
        if upto_time is not None and b.end_time > upto_time:
            break
        if b.kind == INSERT:
            doc = doc[: b.anchor_offset] + b.text + doc[b.anchor_offset :]
        else:
            doc = doc[: b.anchor_offset] + doc[b.anchor_offset + b.length :]
    return doc
