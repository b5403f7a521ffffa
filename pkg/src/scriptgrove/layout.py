"""Glyph geometry: place one circular arc per insertion.

Every insert node becomes an arc centered on its attach point — the spot
on the parent's arc matching the gap it grew out of. Arc length is fixed
per character, so the subtended angle starts at n*u/r and the radius
doubles until the angle fits within a half turn. Growth direction blends
the parent's outward radial with screen-up; dead characters are drawn as
shorter-radius, faded spans over the same angular extent.

Coordinates are screen-style (y grows downward), so "up" is (0, -1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .graph import OpGraph, SpanningTree

UP = (0.0, -1.0)

LAYOUT_SCHEMA = "scriptgrove-layout/1"

DEFAULT_PALETTE = (
    "#7CB342", "#C0CA33", "#FDD835", "#FB8C00",
    "#E53935", "#8E24AA", "#3949AB", "#039BE5",
)


@dataclass(frozen=True)
class LayoutParams:
    unit_arc_len: float = 2.0
    base_radius: float = 12.0
    phototropism: float = 0.3
    dead_radius_ratio: float = 0.8
    dead_opacity: float = 0.25
    palette: tuple[str, ...] = DEFAULT_PALETTE

    def __post_init__(self):
        if self.unit_arc_len <= 0 or self.base_radius <= 0:
            raise ValueError("unit_arc_len and base_radius must be positive")
        if not 0.0 <= self.phototropism <= 1.0:
            raise ValueError("phototropism must lie in [0, 1]")
        if len(self.palette) != 8:
            raise ValueError("palette must have exactly 8 colors")


@dataclass(frozen=True)
class Span:
    """A consecutive char range of one glyph sharing liveness (and deleter)."""

    start: int
    end: int  # exclusive
    live: bool
    radius: float
    opacity: float


@dataclass(frozen=True)
class GlyphLayout:
    node: int
    attach: tuple[float, float]
    direction: tuple[float, float]
    radius: float
    center_angle: float  # direction as an angle, radians
    span_angle: float  # total angle subtended by the n characters
    spans: tuple[Span, ...]
    support: tuple[tuple[float, float], tuple[float, float]]
    color_index: int

    def char_angle(self, fraction: float) -> float:
        """Angle on the arc at the given 0..1 fraction (left to right)."""
        return self.center_angle - self.span_angle / 2 + fraction * self.span_angle

    def point_at(self, fraction: float, radius: float | None = None) -> tuple[float, float]:
        r = self.radius if radius is None else radius
        a = self.char_angle(fraction)
        return (self.attach[0] + r * math.cos(a), self.attach[1] + r * math.sin(a))


def arc_radius_and_angle(n: int, u: float, r0: float) -> tuple[float, float]:
    """Radius and subtended angle for n chars of arc length u each.

    Starting from r0, the radius doubles until the angle n*u/r no longer
    exceeds a half turn, so the returned radius is the smallest doubling
    with angle <= pi.
    """
    if n < 1:
        raise ValueError("glyph needs at least one character")
    r = float(r0)
    alpha = n * u / r
    while alpha > math.pi:
        r *= 2.0
        alpha = n * u / r
    return r, alpha


def session_color(ordinal: int, palette: tuple[str, ...] = DEFAULT_PALETTE) -> str:
    return palette[ordinal % 8]


def _normalize(x: float, y: float) -> tuple[float, float]:
    norm = math.hypot(x, y)
    if norm < 1e-12:
        return UP  # parent radial exactly cancels up; fall back deterministically
    return (x / norm, y / norm)


def _spans(node, params: LayoutParams, radius: float, deleted_by) -> tuple[Span, ...]:
    """Split a glyph's chars into runs by liveness, dead runs per deleter."""
    out: list[Span] = []
    start = 0
    current = deleted_by(node, 0)
    for i in range(1, node.n):
        key = deleted_by(node, i)
        if key != current:
            out.append(_make_span(start, i, current, params, radius))
            start, current = i, key
    out.append(_make_span(start, node.n, current, params, radius))
    return tuple(out)


def _make_span(start: int, end: int, killer, params: LayoutParams,
               radius: float) -> Span:
    if killer is None:
        return Span(start, end, True, radius, 1.0)
    return Span(start, end, False, radius * params.dead_radius_ratio,
                params.dead_opacity)


def compute_layout(g: OpGraph, tree: SpanningTree | None = None,
                   params: LayoutParams | None = None,
                   at_time: int | None = None) -> list[GlyphLayout]:
    """Lay out every insert glyph, parents before children.

    With at_time set, nodes born later are omitted and characters whose
    deleter is born later still count as live — the document as of t.
    """
    if tree is None:
        tree = g.spanning_tree()
    if params is None:
        params = LayoutParams()

    if at_time is None:
        def deleted_by(node, i):
            return node.killed_by[i]
    else:
        def deleted_by(node, i):
            k = node.killed_by[i]
            return k if k is not None and g.nodes[k].t0 <= at_time else None

    kappa = params.phototropism
    glyphs: dict[int, GlyphLayout] = {}
    order: list[int] = []
    for nid in tree.preorder():
        node = g.nodes[nid]
        if at_time is not None and node.t0 > at_time:
            continue
        entry = tree.entry(nid)
        if entry.parent == tree.root:
            attach = (0.0, 0.0)
            radial = UP
        else:
            parent = glyphs[entry.parent]
            angle = parent.char_angle(entry.fraction)
            radial = (math.cos(angle), math.sin(angle))
            attach = (parent.attach[0] + parent.radius * radial[0],
                      parent.attach[1] + parent.radius * radial[1])
        direction = _normalize(
            (1 - kappa) * radial[0] + kappa * UP[0],
            (1 - kappa) * radial[1] + kappa * UP[1],
        )
        radius, alpha = arc_radius_and_angle(
            node.n, params.unit_arc_len, params.base_radius)
        center_angle = math.atan2(direction[1], direction[0])
        glyph = GlyphLayout(
            node=nid,
            attach=attach,
            direction=direction,
            radius=radius,
            center_angle=center_angle,
            span_angle=alpha,
            spans=_spans(node, params, radius, deleted_by),
            support=(attach,
                     (attach[0] + radius * direction[0],
                      attach[1] + radius * direction[1])),
            color_index=node.session % 8,
        )
        glyphs[nid] = glyph
        order.append(nid)
    return [glyphs[nid] for nid in order]


def _r3(x: float) -> float:
    v = round(x, 3)
    return 0.0 if v == 0.0 else v  # normalize -0.0


def export_layout(g: OpGraph, layouts: list[GlyphLayout],
                  params: LayoutParams) -> dict:
    """JSON-ready layout export; all coordinates rounded to 3 decimals."""
    return {
        "schema": LAYOUT_SCHEMA,
        "doc_id": g.doc_id,
        "created_at": g.created_at,
        "params": {
            "unit_arc_len": params.unit_arc_len,
            "base_radius": params.base_radius,
            "phototropism": params.phototropism,
            "dead_radius_ratio": params.dead_radius_ratio,
            "dead_opacity": params.dead_opacity,
        },
        "palette": list(params.palette),
        "glyphs": [
            {
                "node": gl.node,
                "attach": [_r3(gl.attach[0]), _r3(gl.attach[1])],
                "direction": [_r3(gl.direction[0]), _r3(gl.direction[1])],
                "radius": _r3(gl.radius),
                "center_angle": _r3(gl.center_angle),
                "span_angle": _r3(gl.span_angle),
                "color_index": gl.color_index,
                "color": session_color(gl.color_index, params.palette),
                "support": [
                    [_r3(gl.support[0][0]), _r3(gl.support[0][1])],
                    [_r3(gl.support[1][0]), _r3(gl.support[1][1])],
                ],
                "spans": [
                    {
                        "start": s.start, "end": s.end, "live": s.live,
                        "radius": _r3(s.radius), "opacity": s.opacity,
                    }
                    for s in gl.spans
                ],
            }
            for gl in layouts
        ],
    }
