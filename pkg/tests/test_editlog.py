from __future__ import annotations

import io

import pytest

from scriptgrove import (
    AtomicEdit,
    EditLog,
    MalformedLine,
    NonMonotonicTimestamp,
    OutOfBoundsEdit,
    generate_random_log,
    parse_log,
    replay_naive,
    serialize_log,
)

BASE = 1_600_000_000_000


def make_log(*edits):
    return EditLog(doc_id="t", created_at=BASE, edits=tuple(edits))


def test_roundtrip_preserves_log(abcd_log):
    assert parse_log(serialize_log(abcd_log)) == abcd_log


def test_parse_accepts_bytes_str_and_file(abcd_log):
    text = serialize_log(abcd_log)
    assert parse_log(text.encode("utf-8")) == abcd_log
    assert parse_log(io.StringIO(text)) == abcd_log


def test_parse_header_fields():
    log = parse_log('{"doc_id": "x", "created_at": 5}\n')
    assert log.doc_id == "x"
    assert log.created_at == 5
    assert len(log) == 0


@pytest.mark.parametrize("line,reason", [
    ("", "empty"),
    ('{"created_at": 1}', "doc_id"),
    ('{"doc_id": "x"}', "created_at"),
    ('{"doc_id": 3, "created_at": 1}', "doc_id"),
    ('{"doc_id": "x", "created_at": true}', "created_at"),
    ("not json", "json"),
])
def test_bad_header_raises(line, reason):
    with pytest.raises(MalformedLine) as exc:
        parse_log(line + "\n")
    assert exc.value.line_no == 1


@pytest.mark.parametrize("edit_line", [
    '{"t": 1, "kind": "insert", "offset": 0}',
    '{"t": 1, "kind": "insert", "offset": 0, "text": ""}',
    '{"t": 1, "kind": "delete", "offset": 0, "length": 0}',
    '{"t": 1, "kind": "teleport", "offset": 0, "text": "x"}',
    '{"kind": "insert", "offset": 0, "text": "x"}',
    '{"t": 1, "kind": "insert", "offset": "0", "text": "x"}',
])
def test_bad_edit_line_raises(edit_line):
    data = '{"doc_id": "x", "created_at": 0}\n' + edit_line + "\n"
    with pytest.raises(MalformedLine) as exc:
        parse_log(data)
    assert exc.value.line_no == 2


def test_insert_offset_out_of_bounds():
    data = (
        '{"doc_id": "x", "created_at": 0}\n'
        '{"t": 1, "kind": "insert", "offset": 1, "text": "a"}\n'
    )
    with pytest.raises(OutOfBoundsEdit) as exc:
        parse_log(data)
    assert exc.value.offset == 1
    assert exc.value.doc_len == 0


def test_delete_past_end_out_of_bounds():
    data = (
        '{"doc_id": "x", "created_at": 0}\n'
        '{"t": 1, "kind": "insert", "offset": 0, "text": "ab"}\n'
        '{"t": 2, "kind": "delete", "offset": 1, "length": 2}\n'
    )
    with pytest.raises(OutOfBoundsEdit):
        parse_log(data)


def test_timestamp_before_created_at_rejected():
    data = (
        '{"doc_id": "x", "created_at": 100}\n'
        '{"t": 99, "kind": "insert", "offset": 0, "text": "a"}\n'
    )
    with pytest.raises(NonMonotonicTimestamp):
        parse_log(data)


def test_decreasing_timestamps_rejected_ties_allowed():
    head = '{"doc_id": "x", "created_at": 0}\n'
    tie = (
        '{"t": 5, "kind": "insert", "offset": 0, "text": "a"}\n'
        '{"t": 5, "kind": "insert", "offset": 1, "text": "b"}\n'
    )
    assert replay_naive(parse_log(head + tie)) == "ab"
    dec = (
        '{"t": 5, "kind": "insert", "offset": 0, "text": "a"}\n'
        '{"t": 4, "kind": "insert", "offset": 1, "text": "b"}\n'
    )
    with pytest.raises(NonMonotonicTimestamp):
        parse_log(head + dec)


def test_offsets_count_unicode_scalars():
    log = make_log(
        AtomicEdit.insert(BASE + 1, 0, "日本語"),
        AtomicEdit.insert(BASE + 2, 3, "!"),
        AtomicEdit.delete(BASE + 3, 0, 1),
    )
    assert replay_naive(log) == "本語!"
    assert parse_log(serialize_log(log)) == log


def test_replay_naive_abcd(abcd_log):
    assert replay_naive(abcd_log) == "D"
    assert replay_naive(abcd_log, upto_time=BASE + 2000) == "ABC"
    assert replay_naive(abcd_log, upto_time=BASE + 3000) == "C"


def test_generator_is_deterministic():
    a = generate_random_log(9, 150, typo_rate=0.3)
    b = generate_random_log(9, 150, typo_rate=0.3)
    assert a == b
    assert generate_random_log(10, 150, typo_rate=0.3) != a


@pytest.mark.parametrize("seed", range(8))
def test_generator_output_is_valid_and_bounded(seed):
    log = generate_random_log(seed, 120, typo_rate=0.4)
    assert len(log) <= 120
    # strictly increasing timestamps, first one after created_at
    times = [e.t for e in log.edits]
    assert all(a < b for a, b in zip(times, times[1:]))
    assert times[0] > log.created_at
    # parse_log re-validates every offset
    assert parse_log(serialize_log(log)) == log


def test_generator_reports_typo_stats():
    log, stats = generate_random_log(3, 200, typo_rate=1.0, with_stats=True)
    assert stats.typo_patterns >= 1
    assert stats.inserted_chars == sum(
        e.size for e in log.edits if e.kind == "insert")
    assert stats.deleted_chars == sum(
        e.size for e in log.edits if e.kind == "delete")


def test_generator_rejects_bad_args():
    with pytest.raises(ValueError):
        generate_random_log(0, -1)
    with pytest.raises(ValueError):
        generate_random_log(0, 10, typo_rate=1.5)
