from __future__ import annotations

import pytest

from scriptgrove import (
    build,
    build_from_log,
    compute_stats,
    condense,
    generate_random_log,
    segment_by_branches,
)
from scriptgrove.graph import atomic_bursts
from scriptgrove.segment import segments_to_json, stats_table, stats_to_json

BASE = 1_600_000_000_000


def test_single_burst_is_one_segment():
    log = generate_random_log(0, 0)  # empty; craft a single linear log instead
    from scriptgrove import EditLog
    from scriptgrove.editlog import AtomicEdit

    edits = [AtomicEdit.insert(BASE + 100 + i * 50, i, c)
             for i, c in enumerate("one linear burst")]
    log = EditLog(doc_id="s", created_at=BASE, edits=tuple(edits))
    g = build_from_log(log)
    segs = segment_by_branches(g, depth=1)
    assert len(segs) == 1
    assert segs[0].text == "one linear burst"
    assert segs[0].branch_root == 1
    assert segs[0].depth == 1


def test_empty_document_has_no_segments():
    from scriptgrove import EditLog

    g = build_from_log(EditLog(doc_id="e", created_at=BASE))
    assert segment_by_branches(g, depth=1) == []


def test_twopara_splits_into_two_depth1_segments(twopara_log):
    g = build_from_log(twopara_log)
    segs = segment_by_branches(g, depth=1)
    assert len(segs) == 2
    intro, body = segs
    assert intro.text.startswith("An introduction")
    assert intro.text.endswith("\n\n")
    assert body.text.startswith("The body")
    assert intro.start == 0 and intro.end == body.start
    assert body.end == len(g.reconstruct_text())
    # the prepended intro hangs off the trunk
    assert (intro.depth, body.depth) == (2, 1)


def test_segments_concatenate_to_final_text(twopara_log):
    g = build_from_log(twopara_log)
    for depth in (1, 2, 3):
        segs = segment_by_branches(g, depth=depth)
        assert "".join(s.text for s in segs) == g.reconstruct_text()


@pytest.mark.parametrize("seed", range(8))
def test_partition_and_refinement_on_generated(seed):
    log = generate_random_log(seed, 250, typo_rate=0.3)
    g = build_from_log(log)
    final = g.reconstruct_text()
    previous = None
    for depth in (1, 2, 3, 4):
        segs = segment_by_branches(g, depth=depth)
        assert "".join(s.text for s in segs) == final
        boundaries = {s.start for s in segs} | {len(final)}
        if previous is not None:
            assert previous <= boundaries  # deeper cuts only add boundaries
        previous = boundaries


def test_deeper_cut_never_merges_segments(twopara_log):
    g = build_from_log(twopara_log)
    d1 = segment_by_branches(g, depth=1)
    d2 = segment_by_branches(g, depth=2)
    for seg in d2:
        assert any(s.start <= seg.start and seg.end <= s.end for s in d1)


def test_depth_must_be_positive(twopara_log):
    g = build_from_log(twopara_log)
    with pytest.raises(ValueError):
        segment_by_branches(g, depth=0)


def test_segment_branch_counts_are_exclusive(threeday_log):
    g = build_from_log(threeday_log)
    # depth 1: day three was prepended into day two's entry, so they share
    # a branch; day one is the trunk
    d1 = segment_by_branches(g, depth=1)
    assert [sorted(s.sessions) for s in d1] == [[1, 2], [0]]
    assert sum(s.live_chars for s in d1) == len(g.reconstruct_text())
    # depth 2 splits the days apart
    d2 = segment_by_branches(g, depth=2)
    assert [sorted(s.sessions) for s in d2] == [[2], [1], [0]]
    # day-two entry lost "the effort " to the day-three revision
    lost = next(s for s in d2 if "Day two" in s.text)
    assert lost.dead_chars == len("the effort ")
    assert sum(s.live_chars for s in d2) == len(g.reconstruct_text())


def test_stats_on_abcd(abcd_log):
    bursts = atomic_bursts(abcd_log)
    g = build(bursts, abcd_log.created_at, doc_id="abcd")
    stats = compute_stats(abcd_log, bursts, g)
    assert stats.operations == 5
    assert stats.bursts == 5
    assert stats.words == 1
    assert stats.live_chars == 1
    assert stats.dead_chars == 3
    assert stats.deletion_ratio == pytest.approx(0.75)
    assert stats.sessions == 1


def test_stats_sessions_span_days(threeday_log):
    bursts = condense(threeday_log)
    g = build(bursts, threeday_log.created_at, doc_id=threeday_log.doc_id)
    stats = compute_stats(threeday_log, bursts, g)
    assert stats.sessions == 3
    assert stats.bursts == 4


def test_stats_rejects_mismatched_bursts(abcd_log):
    g = build_from_log(abcd_log)
    with pytest.raises(ValueError):
        compute_stats(abcd_log, atomic_bursts(abcd_log), g)


def test_branch_density_attributes_all_operations(twopara_log):
    bursts = condense(twopara_log)
    g = build(bursts, twopara_log.created_at)
    stats = compute_stats(twopara_log, bursts, g)
    # every atomic edit lands in some depth-1 branch
    total_ops = sum(
        round(d * max(1, live)) for d, live in (
            (stats.branch_density[nid],
             next(s.live_chars for s in segment_by_branches(g, depth=1)
                  if s.branch_root == nid))
            for nid in stats.branch_density
        )
    )
    assert total_ops == len(twopara_log.edits)


def test_stats_table_headline_columns(abcd_log):
    bursts = atomic_bursts(abcd_log)
    g = build(bursts, abcd_log.created_at)
    text = stats_table(compute_stats(abcd_log, bursts, g), "abcd", "worked example")
    head, row = text.splitlines()[:2]
    assert head.split() == ["doc", "description", "words", "operations"]
    assert row.split()[0] == "abcd"
    assert "deletion ratio: 0.750" in text


def test_json_exports_have_schemas(twopara_log):
    bursts = condense(twopara_log)
    g = build(bursts, twopara_log.created_at, doc_id="twopara")
    segs = segment_by_branches(g, depth=1)
    sdoc = segments_to_json(g, segs, 1)
    assert sdoc["schema"].startswith("scriptgrove-segments/")
    assert len(sdoc["segments"]) == 2
    stats = compute_stats(twopara_log, bursts, g)
    jdoc = stats_to_json(stats, "twopara", "fixture")
    assert jdoc["schema"].startswith("scriptgrove-stats/")
    assert jdoc["words"] == stats.words
