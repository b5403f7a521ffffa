from __future__ import annotations

import math
import random

import pytest

from scriptgrove import (
    DEFAULT_PALETTE,
    LayoutParams,
    arc_radius_and_angle,
    build_from_log,
    compute_layout,
    export_layout,
    session_color,
)

BASE = 1_600_000_000_000


def test_worked_example_doubles_once():
    # 20 chars at 2 px/char on base radius 10: 40/10 = 4 > pi,
    # doubling once gives 40/20 = 2 <= pi
    assert arc_radius_and_angle(20, 2.0, 10.0) == (20.0, 2.0)


def test_small_glyph_keeps_base_radius():
    r, alpha = arc_radius_and_angle(1, 2.0, 12.0)
    assert r == 12.0
    assert alpha == pytest.approx(1 / 6)


def test_angle_never_exceeds_half_turn():
    rng = random.Random(0)
    for _ in range(2000):
        n = rng.randint(1, 5000)
        u = rng.uniform(0.1, 10.0)
        r0 = rng.uniform(1.0, 100.0)
        r, alpha = arc_radius_and_angle(n, u, r0)
        assert alpha <= math.pi + 1e-12
        # minimal doubling: half the radius would overflow (unless already base)
        if r > r0:
            assert n * u / (r / 2) > math.pi


def test_arc_needs_a_character():
    with pytest.raises(ValueError):
        arc_radius_and_angle(0, 2.0, 12.0)


def test_session_color_cycles_every_eight():
    for k in range(100):
        assert session_color(k) == session_color(k + 8)
    assert len({session_color(k) for k in range(8)}) == 8


def test_params_validation():
    with pytest.raises(ValueError):
        LayoutParams(palette=("#fff",))
    with pytest.raises(ValueError):
        LayoutParams(phototropism=1.5)
    with pytest.raises(ValueError):
        LayoutParams(base_radius=0)


def test_trunk_grows_straight_up(abcd_log):
    g = build_from_log(abcd_log)
    layouts = compute_layout(g)
    trunk = layouts[0]
    assert trunk.attach == (0.0, 0.0)
    assert trunk.direction == (0.0, -1.0)
    assert trunk.support[1][1] < 0  # screen-up


def test_children_attach_on_parent_circle(twopara_log):
    g = build_from_log(twopara_log)
    tree = g.spanning_tree()
    layouts = {gl.node: gl for gl in compute_layout(g, tree)}
    for nid, gl in layouts.items():
        entry = tree.entry(nid)
        if entry.parent == 0:
            continue
        parent = layouts[entry.parent]
        d = math.dist(gl.attach, parent.attach)
        assert d == pytest.approx(parent.radius)


def test_full_phototropism_points_everything_up(twopara_log):
    g = build_from_log(twopara_log)
    layouts = compute_layout(g, params=LayoutParams(phototropism=1.0))
    for gl in layouts:
        assert gl.direction == pytest.approx((0.0, -1.0))


def test_blend_direction_is_unit_and_between():
    log = _two_node_log()
    g = build_from_log(log)
    layouts = compute_layout(g, params=LayoutParams(phototropism=0.3))
    for gl in layouts:
        assert math.hypot(*gl.direction) == pytest.approx(1.0)


def _two_node_log():
    from scriptgrove import EditLog
    from scriptgrove.editlog import AtomicEdit

    edits = [AtomicEdit.insert(BASE + 100 + i * 50, i, c)
             for i, c in enumerate("hello world, here is some text")]
    edits.append(AtomicEdit.insert(BASE + 5000, 4, "X"))
    return EditLog(doc_id="two", created_at=BASE, edits=tuple(edits))


def test_dead_spans_shrink_and_fade(abcd_log):
    g = build_from_log(abcd_log, condense_log=False)
    params = LayoutParams()
    layouts = {gl.node: gl for gl in compute_layout(g, params=params)}
    bc = layouts[2]
    assert len(bc.spans) == 2  # B and C died to different deletes
    for span in bc.spans:
        assert not span.live
        assert span.radius == pytest.approx(bc.radius * params.dead_radius_ratio)
        assert span.opacity == params.dead_opacity
    d = layouts[4]
    assert len(d.spans) == 1 and d.spans[0].live
    assert d.spans[0].radius == d.radius
    assert d.spans[0].opacity == 1.0


def test_adjacent_dead_runs_by_same_deleter_merge():
    from scriptgrove import EditLog
    from scriptgrove.editlog import AtomicEdit

    edits = [AtomicEdit.insert(BASE + 100 + i * 50, i, c)
             for i, c in enumerate("abcdef")]
    edits.append(AtomicEdit.insert(BASE + 1000, 0, "Z"))  # close the burst
    edits.append(AtomicEdit.delete(BASE + 2000, 2, 3))  # kill bcd in one go
    log = EditLog(doc_id="m", created_at=BASE, edits=tuple(edits))
    g = build_from_log(log)
    layouts = {gl.node: gl for gl in compute_layout(g)}
    trunk = layouts[1]
    assert [(s.start, s.end, s.live) for s in trunk.spans] == [
        (0, 1, True), (1, 4, False), (4, 6, True)]


def test_layout_at_time_hides_future_nodes_and_deletes(abcd_log):
    g = build_from_log(abcd_log, condense_log=False)
    # right after the first insert: only the trunk, still alive
    early = compute_layout(g, at_time=BASE + 1000)
    assert [gl.node for gl in early] == [1]
    assert early[0].spans[0].live
    # after the two-char delete: A and B drawn dead, C alive, D not yet born
    mid = {gl.node: gl for gl in compute_layout(g, at_time=BASE + 3000)}
    assert sorted(mid) == [1, 2]
    assert [s.live for s in mid[1].spans] == [False]
    assert [(s.start, s.end, s.live) for s in mid[2].spans] == [
        (0, 1, False), (1, 2, True)]
    # full history equals the default
    assert compute_layout(g, at_time=BASE + 5000) == compute_layout(g)


def test_glyph_color_follows_session(threeday_log):
    g = build_from_log(threeday_log)
    layouts = compute_layout(g)
    by_node = {gl.node: gl.color_index for gl in layouts}
    assert by_node == {1: 0, 2: 1, 3: 2}


def test_export_layout_rounds_to_three_decimals(twopara_log):
    g = build_from_log(twopara_log)
    params = LayoutParams()
    layouts = compute_layout(g, params=params)
    doc = export_layout(g, layouts, params)
    assert doc["schema"].startswith("scriptgrove-layout/")
    assert doc["palette"] == list(DEFAULT_PALETTE)

    def walk(x):
        if isinstance(x, float):
            assert x == round(x, 3)
            assert not (x == 0 and math.copysign(1, x) < 0)  # no -0.0
        elif isinstance(x, list):
            for v in x:
                walk(v)
        elif isinstance(x, dict):
            for v in x.values():
                walk(v)

    walk(doc)
    assert len(doc["glyphs"]) == len(layouts)
