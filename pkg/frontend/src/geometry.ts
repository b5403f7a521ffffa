// Client-side port of the glyph geometry, so parameter sliders can
// re-layout without round-tripping to the CLI. Must agree with the
// exporter's layout.json to within a thousandth of a pixel.

import { GraphDoc, SpanJson } from "./types.js";
import { nodeById, preorder, treeEntry } from "./graphdoc.js";

export interface GeomParams {
  unitArcLen: number;
  baseRadius: number;
  phototropism: number;
  deadRadiusRatio: number;
  deadOpacity: number;
}

export interface Glyph {
  node: number;
  attach: [number, number];
  direction: [number, number];
  radius: number;
  centerAngle: number;
  spanAngle: number;
  spans: SpanJson[];
  support: [[number, number], [number, number]];
  colorIndex: number;
}

const UP: [number, number] = [0, -1]; // screen coordinates, y grows downward

export function arcRadiusAndAngle(n: number, u: number, r0: number): [number, number] {
  if (n < 1) throw new Error("glyph needs at least one character");
  let r = r0;
  let alpha = (n * u) / r;
  while (alpha > Math.PI) {
    r *= 2;
    alpha = (n * u) / r;
  }
  return [r, alpha];
}

function normalize(x: number, y: number): [number, number] {
  const norm = Math.hypot(x, y);
  if (norm < 1e-12) return UP;
  return [x / norm, y / norm];
}

export function charAngle(glyph: Glyph, fraction: number): number {
  return glyph.centerAngle - glyph.spanAngle / 2 + fraction * glyph.spanAngle;
}

function spansOf(
  killedBy: (number | null)[],
  radius: number,
  params: GeomParams,
  deleterBornBy: (id: number | null) => number | null,
): SpanJson[] {
  const out: SpanJson[] = [];
  let start = 0;
  let current = deleterBornBy(killedBy[0]);
  const push = (end: number, killer: number | null) => {
    out.push(
      killer === null
        ? { start, end, live: true, radius, opacity: 1.0 }
        : {
            start,
            end,
            live: false,
            radius: radius * params.deadRadiusRatio,
            opacity: params.deadOpacity,
          },
    );
  };
  for (let i = 1; i < killedBy.length; i++) {
    const key = deleterBornBy(killedBy[i]);
    if (key !== current) {
      push(i, current);
      start = i;
      current = key;
    }
  }
  push(killedBy.length, current);
  return out;
}

export function computeLayout(
  graph: GraphDoc,
  params: GeomParams,
  atTime: number | null = null,
): Glyph[] {
  const deleterBornBy = (id: number | null): number | null => {
    if (id === null) return null;
    if (atTime !== null && nodeById(graph, id).t0 > atTime) return null;
    return id;
  };
  const kappa = params.phototropism;
  const glyphs = new Map<number, Glyph>();
  const out: Glyph[] = [];
  for (const nid of preorder(graph)) {
    const node = nodeById(graph, nid);
    if (atTime !== null && node.t0 > atTime) continue;
    const entry = treeEntry(graph, nid)!;
    let attach: [number, number];
    let radial: [number, number];
    if (entry.parent === 0) {
      attach = [0, 0];
      radial = UP;
    } else {
      const parent = glyphs.get(entry.parent)!;
      const angle = charAngle(parent, entry.fraction);
      radial = [Math.cos(angle), Math.sin(angle)];
      attach = [
        parent.attach[0] + parent.radius * radial[0],
        parent.attach[1] + parent.radius * radial[1],
      ];
    }
    const direction = normalize(
      (1 - kappa) * radial[0] + kappa * UP[0],
      (1 - kappa) * radial[1] + kappa * UP[1],
    );
    const [radius, alpha] = arcRadiusAndAngle(
      (node.text ?? "").length,
      params.unitArcLen,
      params.baseRadius,
    );
    const glyph: Glyph = {
      node: nid,
      attach,
      direction,
      radius,
      centerAngle: Math.atan2(direction[1], direction[0]),
      spanAngle: alpha,
      spans: spansOf(node.killed_by ?? [], radius, params, deleterBornBy),
      support: [
        attach,
        [attach[0] + radius * direction[0], attach[1] + radius * direction[1]],
      ],
      colorIndex: node.session % 8,
    };
    glyphs.set(nid, glyph);
    out.push(glyph);
  }
  return out;
}

export function paramsFromExport(p: {
  unit_arc_len: number;
  base_radius: number;
  phototropism: number;
  dead_radius_ratio: number;
  dead_opacity: number;
}): GeomParams {
  return {
    unitArcLen: p.unit_arc_len,
    baseRadius: p.base_radius,
    phototropism: p.phototropism,
    deadRadiusRatio: p.dead_radius_ratio,
    deadOpacity: p.dead_opacity,
  };
}
