// Pure SVG assembly: the scene is a string derived from ViewerState.

import { Glyph, charAngle, computeLayout } from "./geometry.js";
import { branchText, liveCharCount, nodeById } from "./graphdoc.js";
import { ViewerState, isHidden } from "./state.js";

export interface RenderOpts {
  width: number;
  height: number;
  background: string;
  margin: number;
}

export const DEFAULT_OPTS: RenderOpts = {
  width: 800,
  height: 600,
  background: "#ffffff",
  margin: 20,
};

const SUPPORT_WIDTH = 1.0;
const SUPPORT_OPACITY = 0.5;
const SPAN_WIDTH = 3.0;

function fmt(x: number): string {
  const s = x.toFixed(3).replace(/\.?0+$/, "");
  return s === "-0" || s === "" ? "0" : s;
}

export function visibleGlyphs(state: ViewerState): Glyph[] {
  if (state.graph === null) return [];
  const glyphs = computeLayout(state.graph, state.params, state.time);
  return glyphs.filter((g) => !isHidden(state, g.node));
}

interface Box {
  x0: number;
  y0: number;
  x1: number;
  y1: number;
}

function bbox(glyphs: Glyph[]): Box {
  let x0 = Infinity, y0 = Infinity, x1 = -Infinity, y1 = -Infinity;
  for (const g of glyphs) {
    x0 = Math.min(x0, g.attach[0] - g.radius);
    y0 = Math.min(y0, g.attach[1] - g.radius);
    x1 = Math.max(x1, g.attach[0] + g.radius);
    y1 = Math.max(y1, g.attach[1] + g.radius);
  }
  return { x0, y0, x1, y1 };
}

export function renderScene(state: ViewerState, opts: RenderOpts = DEFAULT_OPTS): string {
  const lines = [
    `<svg xmlns="http://www.w3.org/2000/svg" width="${opts.width}" ` +
      `height="${opts.height}" viewBox="0 0 ${opts.width} ${opts.height}">`,
    `<rect width="${opts.width}" height="${opts.height}" fill="${opts.background}"/>`,
  ];
  const glyphs = visibleGlyphs(state);
  if (glyphs.length > 0 && state.layout !== null) {
    const palette = state.layout.palette;
    const box = bbox(glyphs);
    const bw = Math.max(box.x1 - box.x0, 1e-9);
    const bh = Math.max(box.y1 - box.y0, 1e-9);
    const scale = Math.min(
      Math.max(opts.width - 2 * opts.margin, 1) / bw,
      Math.max(opts.height - 2 * opts.margin, 1) / bh,
    );
    const cx = (box.x0 + box.x1) / 2;
    const cy = (box.y0 + box.y1) / 2;
    const point = (p: [number, number]): [number, number] => [
      (p[0] - cx) * scale + opts.width / 2,
      (p[1] - cy) * scale + opts.height / 2,
    ];
    const v = state.view;
    lines.push(`<g transform="translate(${fmt(v.x)} ${fmt(v.y)}) scale(${fmt(v.k)})">`);
    for (const glyph of glyphs) {
      const color = palette[glyph.colorIndex % palette.length];
      const selected = state.selected === glyph.node;
      lines.push(
        `<g id="node-${glyph.node}" data-node="${glyph.node}"` +
          (selected ? ` class="selected"` : "") + `>`,
      );
      if (selected) {
        const [hx, hy] = point(glyph.attach);
        lines.push(
          `<circle cx="${fmt(hx)}" cy="${fmt(hy)}" r="${fmt(glyph.radius * scale + 4)}" ` +
            `fill="none" stroke="#333333" stroke-width="1" stroke-dasharray="4 3"/>`,
        );
      }
      const [sx0, sy0] = point(glyph.support[0]);
      const [sx1, sy1] = point(glyph.support[1]);
      lines.push(
        `<line x1="${fmt(sx0)}" y1="${fmt(sy0)}" x2="${fmt(sx1)}" y2="${fmt(sy1)}" ` +
          `stroke="${color}" stroke-opacity="${fmt(SUPPORT_OPACITY)}" ` +
          `stroke-width="${fmt(SUPPORT_WIDTH)}"/>`,
      );
      const total = glyph.spans.length > 0 ? glyph.spans[glyph.spans.length - 1].end : 0;
      for (const span of glyph.spans) {
        const a0 = charAngle(glyph, span.start / total);
        const a1 = charAngle(glyph, span.end / total);
        const p0 = point([
          glyph.attach[0] + span.radius * Math.cos(a0),
          glyph.attach[1] + span.radius * Math.sin(a0),
        ]);
        const p1 = point([
          glyph.attach[0] + span.radius * Math.cos(a1),
          glyph.attach[1] + span.radius * Math.sin(a1),
        ]);
        const r = span.radius * scale;
        const opacity = span.live ? "" : ` stroke-opacity="${fmt(span.opacity)}"`;
        lines.push(
          `<path d="M ${fmt(p0[0])} ${fmt(p0[1])} A ${fmt(r)} ${fmt(r)} 0 0 1 ` +
            `${fmt(p1[0])} ${fmt(p1[1])}" fill="none" stroke="${color}" ` +
            `stroke-width="${fmt(SPAN_WIDTH)}" stroke-linecap="round"${opacity}/>`,
        );
      }
      lines.push("</g>");
    }
    lines.push("</g>");
  }
  lines.push("</svg>");
  return lines.join("\n");
}

export interface SelectionInfo {
  title: string;
  branchText: string;
  meta: string[];
}

/** Side-panel content for the current selection, or null if nothing picked. */
export function describeSelection(state: ViewerState): SelectionInfo | null {
  if (state.graph === null || state.selected === null) return null;
  const node = nodeById(state.graph, state.selected);
  const live = liveCharCount(node);
  const total = (node.text ?? "").length;
  return {
    title: `Insertion ${node.id}`,
    branchText: branchText(state.graph, node.id),
    meta: [
      `session ${node.session}`,
      `typed ${new Date(node.t0).toISOString()} – ${new Date(node.t1).toISOString()}`,
      `${total} chars typed, ${live} live, ${total - live} deleted`,
    ],
  };
}
