from __future__ import annotations

import pytest
from sklearn.base import clone
from sklearn.pipeline import Pipeline

from scriptgrove import (
    BranchSegmenter,
    BurstCondenser,
    GlyphLayouter,
    GraphBuilder,
    OpGraph,
    SvgRenderer,
    generate_random_log,
)


@pytest.fixture
def logs():
    return [generate_random_log(s, 120, typo_rate=0.2) for s in (1, 2, 3)]


def test_full_pipeline_produces_svg_per_document(logs):
    pipe = Pipeline([
        ("build", GraphBuilder()),
        ("layout", GlyphLayouter()),
        ("render", SvgRenderer()),
    ])
    svgs = pipe.fit_transform(logs)
    assert len(svgs) == 3
    for svg in svgs:
        assert svg.startswith(b"<?xml")
        assert b"</svg>" in svg


def test_condenser_standalone(logs):
    bursts = BurstCondenser().fit_transform(logs)
    assert len(bursts) == 3
    assert all(isinstance(bs, list) for bs in bursts)


def test_graph_builder_emits_graphs(logs):
    graphs = GraphBuilder().fit_transform(logs)
    assert all(isinstance(g, OpGraph) for g in graphs)
    atomic = GraphBuilder(atomic=True).fit_transform(logs)
    assert [g.reconstruct_text() for g in graphs] == \
        [g.reconstruct_text() for g in atomic]


def test_segmenter_tail(logs):
    pipe = Pipeline([
        ("build", GraphBuilder()),
        ("segment", BranchSegmenter(depth=2)),
    ])
    segmented = pipe.fit_transform(logs)
    graphs = GraphBuilder().fit_transform(logs)
    for segs, g in zip(segmented, graphs):
        assert "".join(s.text for s in segs) == g.reconstruct_text()


def test_estimators_expose_params():
    layouter = GlyphLayouter(base_radius=20.0)
    assert layouter.get_params()["base_radius"] == 20.0
    layouter.set_params(phototropism=0.7)
    assert layouter.get_params()["phototropism"] == 0.7
    assert clone(layouter).get_params() == layouter.get_params()


def test_pipeline_params_reachable_by_prefix(logs):
    pipe = Pipeline([("build", GraphBuilder()), ("segment", BranchSegmenter())])
    pipe.set_params(segment__depth=3, build__idle_ms=2000)
    assert pipe.get_params()["segment__depth"] == 3
    pipe.fit_transform(logs)


def test_type_validation_message():
    with pytest.raises(TypeError, match="GraphBuilder expects"):
        GraphBuilder().transform(["not a log"])
    with pytest.raises(TypeError, match="position 0"):
        BranchSegmenter().transform([42])


def test_layouter_at_time(logs):
    g = GraphBuilder().fit_transform(logs)[:1]
    full = GlyphLayouter().fit_transform(g)[0]
    early = GlyphLayouter(at_time=logs[0].created_at).fit_transform(g)[0]
    assert len(early) == 0
    assert len(full) >= 1


def test_renderer_respects_canvas_params(logs):
    graphs = GraphBuilder().fit_transform(logs[:1])
    layouts = GlyphLayouter().fit_transform(graphs)
    svg = SvgRenderer(width=320, height=240, background="#000").fit_transform(layouts)[0]
    assert b'width="320"' in svg
    assert b'fill="#000"' in svg
