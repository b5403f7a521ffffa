"""scriptgrove: organic tree visualizations of how a text was written.

Feed it a keystroke-granularity edit log (JSONL) and it reconstructs the
writing process as an operation graph, condenses keystrokes into bursts,
lays the insertion tree out as nested circular arcs, renders SVG, and
segments the final text by the branches it grew from.
"""

from __future__ import annotations

from .burst import Burst, condense, replay_bursts
from .editlog import (
    AtomicEdit,
    EditLog,
    LogError,
    MalformedLine,
    NonMonotonicTimestamp,
    OutOfBoundsEdit,
    generate_random_log,
    parse_log,
    replay_naive,
    serialize_log,
)
from .graph import (
    DaySessionRule,
    NotAnInsertNode,
    OpGraph,
    OpNode,
    PoiOutOfRange,
    SpanningTree,
    atomic_bursts,
    build,
    build_from_log,
    export_graph,
)
from .layout import (
    DEFAULT_PALETTE,
    GlyphLayout,
    LayoutParams,
    arc_radius_and_angle,
    compute_layout,
    export_layout,
    session_color,
)
from .pipeline import (
    BranchSegmenter,
    BurstCondenser,
    GlyphLayouter,
    GraphBuilder,
    SvgRenderer,
)
from .render import RenderOptions, render_frames, render_svg
from .segment import DocStats, Segment, compute_stats, segment_by_branches

__version__ = "0.1.0"

__all__ = [
    "AtomicEdit", "EditLog", "LogError", "MalformedLine",
    "NonMonotonicTimestamp", "OutOfBoundsEdit", "parse_log", "serialize_log",
    "replay_naive", "generate_random_log",
    "Burst", "condense", "replay_bursts",
    "OpGraph", "OpNode", "SpanningTree", "DaySessionRule", "PoiOutOfRange",
    "NotAnInsertNode", "build", "build_from_log", "atomic_bursts", "export_graph",
    "LayoutParams", "GlyphLayout", "DEFAULT_PALETTE", "arc_radius_and_angle",
    "compute_layout", "export_layout", "session_color",
    "RenderOptions", "render_svg", "render_frames",
    "Segment", "DocStats", "segment_by_branches", "compute_stats",
    "BurstCondenser", "GraphBuilder", "GlyphLayouter", "SvgRenderer",
    "BranchSegmenter",
]
