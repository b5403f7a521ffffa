"""Deterministic SVG rendering of glyph layouts.

Output is plain text SVG assembled line by line: glyphs in tree order
(parents first), every coordinate rounded to three decimals, no
timestamps or randomness — rendering the same layout twice gives the
same bytes. The canvas auto-fits the layout's bounding box unless an
explicit box is supplied (frame sequences share the final box so the
camera holds still while the tree grows).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from xml.sax.saxutils import quoteattr

from .graph import OpGraph, SpanningTree
from .layout import GlyphLayout, LayoutParams, compute_layout, session_color

SUPPORT_WIDTH = 1.0
SUPPORT_OPACITY = 0.5
SPAN_WIDTH = 3.0


@dataclass(frozen=True)
class RenderOptions:
    width: int = 800
    height: int = 600
    background: str = "#ffffff"
    margin: float = 20.0
    frame_interval_ms: int = 1000
    include_labels: bool = False


def _fmt(x: float) -> str:
    s = f"{x:.3f}".rstrip("0").rstrip(".")
    return "0" if s in ("", "-0") else s


def layout_bbox(layouts: list[GlyphLayout]) -> tuple[float, float, float, float]:
    """(min_x, min_y, max_x, max_y) covering every glyph's full circle."""
    if not layouts:
        return (0.0, 0.0, 0.0, 0.0)
    xs_lo = min(g.attach[0] - g.radius for g in layouts)
    xs_hi = max(g.attach[0] + g.radius for g in layouts)
    ys_lo = min(g.attach[1] - g.radius for g in layouts)
    ys_hi = max(g.attach[1] + g.radius for g in layouts)
    return (xs_lo, ys_lo, xs_hi, ys_hi)


class _Transform:
    """Uniform scale + translation fitting a bbox into the canvas."""

    def __init__(self, bbox, opts: RenderOptions):
        x0, y0, x1, y1 = bbox
        bw = max(x1 - x0, 1e-9)
        bh = max(y1 - y0, 1e-9)
        inner_w = max(opts.width - 2 * opts.margin, 1.0)
        inner_h = max(opts.height - 2 * opts.margin, 1.0)
        self.scale = min(inner_w / bw, inner_h / bh)
        self.cx = (x0 + x1) / 2
        self.cy = (y0 + y1) / 2
        self.ox = opts.width / 2
        self.oy = opts.height / 2

    def point(self, p: tuple[float, float]) -> tuple[float, float]:
        return ((p[0] - self.cx) * self.scale + self.ox,
                (p[1] - self.cy) * self.scale + self.oy)


def _arc_path(glyph: GlyphLayout, start_frac: float, end_frac: float,
              radius: float, tr: _Transform) -> str:
    a0 = glyph.char_angle(start_frac)
    a1 = glyph.char_angle(end_frac)
    p0 = tr.point((glyph.attach[0] + radius * math.cos(a0),
                   glyph.attach[1] + radius * math.sin(a0)))
    p1 = tr.point((glyph.attach[0] + radius * math.cos(a1),
                   glyph.attach[1] + radius * math.sin(a1)))
    r = radius * tr.scale
    return (f"M {_fmt(p0[0])} {_fmt(p0[1])} "
            f"A {_fmt(r)} {_fmt(r)} 0 0 1 {_fmt(p1[0])} {_fmt(p1[1])}")


def render_svg(layouts: list[GlyphLayout], params: LayoutParams | None = None,
               options: RenderOptions | None = None,
               bbox: tuple[float, float, float, float] | None = None) -> bytes:
    params = params or LayoutParams()
    opts = options or RenderOptions()
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{opts.width}" '
        f'height="{opts.height}" viewBox="0 0 {opts.width} {opts.height}">',
        f'<rect width="{opts.width}" height="{opts.height}" '
        f'fill={quoteattr(opts.background)}/>',
    ]
    if layouts:
        tr = _Transform(bbox if bbox is not None else layout_bbox(layouts), opts)
        for glyph in layouts:
            color = quoteattr(session_color(glyph.color_index, params.palette))
            lines.append(f'<g id="node-{glyph.node}">')
            s0 = tr.point(glyph.support[0])
            s1 = tr.point(glyph.support[1])
            lines.append(
                f'<line x1="{_fmt(s0[0])}" y1="{_fmt(s0[1])}" '
                f'x2="{_fmt(s1[0])}" y2="{_fmt(s1[1])}" '
                f'stroke={color} stroke-opacity="{_fmt(SUPPORT_OPACITY)}" '
                f'stroke-width="{_fmt(SUPPORT_WIDTH)}"/>'
            )
            total = glyph.spans[-1].end if glyph.spans else 0
            for span in glyph.spans:
                d = _arc_path(glyph, span.start / total, span.end / total,
                              span.radius, tr)
                opacity = "" if span.live else f' stroke-opacity="{_fmt(span.opacity)}"'
                lines.append(
                    f'<path d="{d}" fill="none" stroke={color} '
                    f'stroke-width="{_fmt(SPAN_WIDTH)}" '
                    f'stroke-linecap="round"{opacity}/>'
                )
            if opts.include_labels:
                lx, ly = tr.point(glyph.support[1])
                lines.append(
                    f'<text x="{_fmt(lx)}" y="{_fmt(ly)}" font-size="8" '
                    f'fill="#555555">{glyph.node}</text>'
                )
            lines.append('</g>')
    lines.append('</svg>')
    return ("\n".join(lines) + "\n").encode("utf-8")


def frame_times(created_at: int, last_time: int, interval_ms: int) -> list[int]:
    """created_at plus every interval tick up to and covering last_time."""
    if interval_ms <= 0:
        raise ValueError("frame interval must be positive")
    span = max(last_time - created_at, 0)
    count = math.ceil(span / interval_ms) + 1
    return [created_at + k * interval_ms for k in range(count)]


def render_frames(g: OpGraph, tree: SpanningTree | None = None,
                  params: LayoutParams | None = None,
                  options: RenderOptions | None = None) -> list[bytes]:
    """One SVG per frame tick, all sharing the final frame's viewport."""
    tree = tree if tree is not None else g.spanning_tree()
    params = params or LayoutParams()
    opts = options or RenderOptions()
    final = compute_layout(g, tree, params)
    box = layout_bbox(final) if final else None
    frames = []
    for t in frame_times(g.created_at, g.last_time(), opts.frame_interval_ms):
        layouts = compute_layout(g, tree, params, at_time=t)
        frames.append(render_svg(layouts, params, opts, bbox=box))
    return frames
