"""JSONL edit-log parsing, validation, replay, and synthetic log generation.

The log format is one JSON object per line: a header line carrying
``doc_id`` and ``created_at`` (epoch milliseconds), followed by edit lines

    {"t": <ms>, "kind": "insert", "offset": <int>, "text": <str>}
    {"t": <ms>, "kind": "delete", "offset": <int>, "length": <int>}

Offsets are 0-based character positions (Unicode scalar values, not bytes).
``replay_naive`` is the string-splicing oracle everything else is checked
against.
"""

from __future__ import annotations

import io
import json
import random
from dataclasses import dataclass, field

INSERT = "insert"
DELETE = "delete"


class LogError(ValueError):
    """Base class for edit-log validation failures."""


class MalformedLine(LogError):
    def __init__(self, line_no: int, reason: str):
        self.line_no = line_no
        self.reason = reason
        super().__init__(f"line {line_no}: {reason}")


class OutOfBoundsEdit(LogError):
    def __init__(self, index: int, offset: int, doc_len: int):
        self.index = index
        self.offset = offset
        self.doc_len = doc_len
        super().__init__(
            f"edit {index}: offset {offset} out of bounds for document of length {doc_len}"
        )


class NonMonotonicTimestamp(LogError):
    def __init__(self, index: int, t: int, previous: int):
        self.index = index
        self.t = t
        self.previous = previous
        super().__init__(f"edit {index}: timestamp {t} precedes {previous}")


@dataclass(frozen=True)
class AtomicEdit:
    """One timestamped insert or delete at a character offset."""

    t: int
    kind: str
    offset: int
    text: str = ""
    length: int = 0

    @classmethod
    def insert(cls, t: int, offset: int, text: str) -> AtomicEdit:
        if not text:
            raise ValueError("insert text must be non-empty")
        return cls(t=t, kind=INSERT, offset=offset, text=text)

    @classmethod
    def delete(cls, t: int, offset: int, length: int) -> AtomicEdit:
        if length < 1:
            raise ValueError("delete length must be >= 1")
        return cls(t=t, kind=DELETE, offset=offset, length=length)

    @property
    def size(self) -> int:
        """Characters added (insert) or removed (delete)."""
        return len(self.text) if self.kind == INSERT else self.length


@dataclass(frozen=True)
class EditLog:
    doc_id: str
    created_at: int
    edits: tuple[AtomicEdit, ...] = field(default_factory=tuple)

    def __len__(self) -> int:
        return len(self.edits)


def _require(obj: dict, key: str, typ, line_no: int):
    if key not in obj:
        raise MalformedLine(line_no, f"missing field {key!r}")
    value = obj[key]
    if not isinstance(value, typ) or isinstance(value, bool):
        raise MalformedLine(line_no, f"field {key!r} has wrong type")
    return value


def parse_log(data) -> EditLog:
    """Parse and validate a JSONL edit log.

    Accepts bytes, str, or a text file object. Every offset is checked by
    incremental replay of document length; any violation aborts with a
    positioned error.
    """
    if isinstance(data, bytes):
        text = data.decode("utf-8")
    elif isinstance(data, str):
        text = data
    else:
        text = data.read()
        if isinstance(text, bytes):
            text = text.decode("utf-8")

    lines = io.StringIO(text).read().splitlines()
    header = None
    edits: list[AtomicEdit] = []
    doc_len = 0
    prev_t: int | None = None

    for line_no, raw in enumerate(lines, start=1):
        if not raw.strip():
            continue
        try:
            obj = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise MalformedLine(line_no, f"invalid JSON ({exc.msg})") from exc
        if not isinstance(obj, dict):
            raise MalformedLine(line_no, "expected a JSON object")

        if header is None:
            doc_id = _require(obj, "doc_id", str, line_no)
            created_at = _require(obj, "created_at", int, line_no)
            header = (doc_id, created_at)
            prev_t = created_at
            continue

        index = len(edits)
        t = _require(obj, "t", int, line_no)
        kind = _require(obj, "kind", str, line_no)
        offset = _require(obj, "offset", int, line_no)
        if prev_t is not None and t < prev_t:
            raise NonMonotonicTimestamp(index, t, prev_t)
        prev_t = t

        if kind == INSERT:
            ins_text = _require(obj, "text", str, line_no)
            if not ins_text:
                raise MalformedLine(line_no, "insert text must be non-empty")
            if "length" in obj:
                raise MalformedLine(line_no, "insert must not carry a length field")
            if offset < 0 or offset > doc_len:
                raise OutOfBoundsEdit(index, offset, doc_len)
            edits.append(AtomicEdit.insert(t, offset, ins_text))
            doc_len += len(ins_text)
        elif kind == DELETE:
            length = _require(obj, "length", int, line_no)
            if length < 1:
                raise MalformedLine(line_no, "delete length must be >= 1")
            if "text" in obj:
                raise MalformedLine(line_no, "delete must not carry a text field")
            if offset < 0 or offset + length > doc_len:
                raise OutOfBoundsEdit(index, offset, doc_len)
            edits.append(AtomicEdit.delete(t, offset, length))
            doc_len -= length
        else:
            raise MalformedLine(line_no, f"unknown edit kind {kind!r}")

    if header is None:
        raise MalformedLine(1, "missing header line")
    return EditLog(doc_id=header[0], created_at=header[1], edits=tuple(edits))


def serialize_log(log: EditLog) -> str:
    """Render a log back to its canonical JSONL form."""
    out = [json.dumps({"doc_id": log.doc_id, "created_at": log.created_at})]
    for e in log.edits:
        if e.kind == INSERT:
            rec = {"t": e.t, "kind": INSERT, "offset": e.offset, "text": e.text}
        else:
            rec = {"t": e.t, "kind": DELETE, "offset": e.offset, "length": e.length}
        out.append(json.dumps(rec, ensure_ascii=False))
    return "\n".join(out) + "\n"


def replay_naive(log: EditLog, upto_time: int | None = None) -> str:
    """Replay edits by direct string splicing.

    Applies every edit with timestamp <= ``upto_time`` (all edits if None).
    This is the reference oracle; it assumes a validated log.
    """
    doc = ""
    for e in log.edits:
        if upto_time is not None and e.t > upto_time:
            break
        if e.kind == INSERT:
            doc = doc[: e.offset] + e.text + doc[e.offset :]
        else:
            doc = doc[: e.offset] + doc[e.offset + e.length :]
    return doc


@dataclass(frozen=True)
class GenStats:
    """Bookkeeping from generate_random_log, for test assertions."""

    typo_patterns: int
    inserted_chars: int
    deleted_chars: int


_WORD_CHARS = "abcdefghijklmnopqrstuvwxyz"
_EXOTIC = "éüßñ日本語"


def generate_random_log(
    seed: int,
    ops: int,
    typo_rate: float = 0.0,
    doc_id: str | None = None,
    with_stats: bool = False,
):
    """Produce a deterministic pseudo-random valid edit log.

    The generator mostly types linearly at a tracked cursor, occasionally
    jumping position, backspacing, or pasting. With probability
    ``typo_rate`` a typed word is followed by stray characters that get
    backspaced away and retyped (the typo pattern), which burst
    condensation must fold.
    """
    if ops < 0:
        raise ValueError("ops must be >= 0")
    if not 0.0 <= typo_rate <= 1.0:
        raise ValueError("typo_rate must be within [0, 1]")

    rng = random.Random(seed)
    created_at = 1_600_000_000_000
    t = created_at
    edits: list[AtomicEdit] = []
    doc_len = 0
    cursor = 0
    typo_patterns = 0

    def tick() -> int:
        nonlocal t
        t += rng.randint(40, 900)
        return t

    def emit_insert(offset: int, text: str) -> None:
        nonlocal doc_len, cursor
        edits.append(AtomicEdit.insert(tick(), offset, text))
        doc_len += len(text)
        cursor = offset + len(text)

    def emit_delete(offset: int, length: int) -> None:
        nonlocal doc_len, cursor
        edits.append(AtomicEdit.delete(tick(), offset, length))
        doc_len -= length
        cursor = offset

    def random_word() -> str:
        chars = [rng.choice(_WORD_CHARS) for _ in range(rng.randint(2, 8))]
        if rng.random() < 0.05:
            chars[rng.randrange(len(chars))] = rng.choice(_EXOTIC)
        return "".join(chars)

    while len(edits) < ops:
        roll = rng.random()
        if doc_len == 0 or roll < 0.55:
            # Type a word (plus trailing space) character by character.
            word = random_word() + (" " if rng.random() < 0.8 else "")
            if rng.random() < typo_rate and len(word) >= 2:
                split = rng.randint(1, len(word) - 1)
                stray = "".join(rng.choice(_WORD_CHARS) for _ in range(rng.randint(1, 3)))
                pattern_start = len(edits)
                for ch in word[:split] + stray:
                    emit_insert(cursor, ch)
                for _ in stray:
                    emit_delete(cursor - 1, 1)
                for ch in word[split:]:
                    emit_insert(cursor, ch)
                # A pattern only folds anything if at least one backspace
                # survives the ops cutoff.
                if pattern_start + split + len(stray) < ops:
                    typo_patterns += 1
            else:
                for ch in word:
                    emit_insert(cursor, ch)
        elif roll < 0.70:
            # Move the cursor somewhere else, then type.
            cursor = rng.randint(0, doc_len)
            emit_insert(cursor, random_word())
        elif roll < 0.80:
            # Held backspace.
            if cursor == 0:
                cursor = rng.randint(min(1, doc_len), doc_len)
            for _ in range(rng.randint(1, min(4, cursor))):
                if cursor == 0:
                    break
                emit_delete(cursor - 1, 1)
        elif roll < 0.90:
            # Selection delete of a random range.
            offset = rng.randint(0, doc_len - 1)
            length = rng.randint(1, min(6, doc_len - offset))
            emit_delete(offset, length)
        elif roll < 0.95:
            # Paragraph break.
            emit_insert(cursor, "\n")
        else:
            # Paste a chunk.
            emit_insert(rng.randint(0, doc_len), random_word() + " " + random_word())

    del edits[ops:]
    log = EditLog(
        doc_id=doc_id or f"generated-{seed}",
        created_at=created_at,
        edits=tuple(edits),
    )
    if with_stats:
        ins = sum(e.size for e in log.edits if e.kind == INSERT)
        dele = sum(e.size for e in log.edits if e.kind == DELETE)
        return log, GenStats(typo_patterns=typo_patterns, inserted_chars=ins, deleted_chars=dele)
    return log
