"""Estimator-style wrappers so the stages compose as a scikit-learn Pipeline.

Every transformer is stateless: ``fit`` records nothing and ``transform``
maps a list of per-document artifacts to the next artifact, so documents
can be processed independently. Parameters follow scikit-learn's
convention (stored verbatim, so ``get_params``/``set_params`` work and the
stages can be grid-searched or cloned like any other estimator).

    Pipeline([("build", GraphBuilder()),
              ("layout", GlyphLayouter()),
              ("render", SvgRenderer())]).fit_transform(logs)
"""

from __future__ import annotations

from sklearn.base import BaseEstimator, TransformerMixin

from .burst import condense
from .editlog import EditLog
from .graph import OpGraph, build_from_log
from .layout import DEFAULT_PALETTE, LayoutParams, compute_layout
from .render import RenderOptions, render_svg
from .segment import segment_by_branches


def check_documents(X, kind: type, stage: str) -> list:
    """Validate that X is a sequence of the artifact type a stage expects."""
    items = list(X)
    for i, item in enumerate(items):
        if not isinstance(item, kind):
            raise TypeError(
                f"{stage} expects a sequence of {kind.__name__}, "
                f"got {type(item).__name__} at position {i}"
            )
    return items


class BurstCondenser(BaseEstimator, TransformerMixin):
    """Condense each edit log into its linear keystroke bursts."""

    def __init__(self, idle_ms: int | None = None):
        self.idle_ms = idle_ms

    def fit(self, X, y=None):
        return self

    def transform(self, X):
        logs = check_documents(X, EditLog, "BurstCondenser")
        return [condense(log, idle_ms=self.idle_ms) for log in logs]


class GraphBuilder(BaseEstimator, TransformerMixin):
    """Build one operation graph per edit log (condensing on the way)."""

    def __init__(self, idle_ms: int | None = None, atomic: bool = False,
                 timezone: str = "UTC"):
        self.idle_ms = idle_ms
        self.atomic = atomic
        self.timezone = timezone

    def fit(self, X, y=None):
        return self

    def transform(self, X):
        from .graph import DaySessionRule

        logs = check_documents(X, EditLog, "GraphBuilder")
        return [
            build_from_log(log, condense_log=not self.atomic, idle_ms=self.idle_ms,
                           session_rule=DaySessionRule(self.timezone))
            for log in logs
        ]


class GlyphLayouter(BaseEstimator, TransformerMixin):
    """Compute glyph layouts for each graph."""

    def __init__(self, unit_arc_len: float = 2.0, base_radius: float = 12.0,
                 phototropism: float = 0.3, dead_radius_ratio: float = 0.8,
                 dead_opacity: float = 0.25, at_time: int | None = None):
        self.unit_arc_len = unit_arc_len
        self.base_radius = base_radius
        self.phototropism = phototropism
        self.dead_radius_ratio = dead_radius_ratio
        self.dead_opacity = dead_opacity
        self.at_time = at_time

    def _params(self) -> LayoutParams:
        return LayoutParams(
            unit_arc_len=self.unit_arc_len, base_radius=self.base_radius,
            phototropism=self.phototropism,
            dead_radius_ratio=self.dead_radius_ratio,
            dead_opacity=self.dead_opacity,
        )

    def fit(self, X, y=None):
        return self

    def transform(self, X):
        graphs = check_documents(X, OpGraph, "GlyphLayouter")
        params = self._params()
        return [compute_layout(g, params=params, at_time=self.at_time)
                for g in graphs]


class SvgRenderer(BaseEstimator, TransformerMixin):
    """Render each layout list to SVG bytes."""

    def __init__(self, width: int = 800, height: int = 600,
                 background: str = "#ffffff", margin: float = 20.0,
                 include_labels: bool = False,
                 palette: tuple[str, ...] = DEFAULT_PALETTE):
        self.width = width
        self.height = height
        self.background = background
        self.margin = margin
        self.include_labels = include_labels
        self.palette = palette

    def fit(self, X, y=None):
        return self

    def transform(self, X):
        params = LayoutParams(palette=tuple(self.palette))
        opts = RenderOptions(
            width=self.width, height=self.height, background=self.background,
            margin=self.margin, include_labels=self.include_labels,
        )
        return [render_svg(layouts, params, opts) for layouts in X]


class BranchSegmenter(BaseEstimator, TransformerMixin):
    """Segment each graph's final text by spanning-tree branches."""

    def __init__(self, depth: int = 1):
        self.depth = depth

    def fit(self, X, y=None):
        return self

    def transform(self, X):
        graphs = check_documents(X, OpGraph, "BranchSegmenter")
        return [segment_by_branches(g, depth=self.depth) for g in graphs]
