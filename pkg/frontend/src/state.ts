// Viewer state and its pure transitions. Rendering is a function of the
// state, so every interaction is testable as plain data in, data out.

import { GeomParams, paramsFromExport } from "./geometry.js";
import { checkSchemas, lastTime, subtreeIds, treeEntry } from "./graphdoc.js";
import { GraphDoc, LayoutDoc } from "./types.js";

export interface ViewTransform {
  x: number;
  y: number;
  k: number;
}

export interface ViewerState {
  graph: GraphDoc | null;
  layout: LayoutDoc | null;
  selected: number | null;
  hidden: readonly number[]; // sorted; closed under spanning-tree descendants
  params: GeomParams;
  time: number | null; // null = full history
  view: ViewTransform;
  error: string | null;
}

export const DEFAULT_PARAMS: GeomParams = {
  unitArcLen: 2.0,
  baseRadius: 12.0,
  phototropism: 0.3,
  deadRadiusRatio: 0.8,
  deadOpacity: 0.25,
};

const IDENTITY: ViewTransform = { x: 0, y: 0, k: 1 };

export function initialState(): ViewerState {
  return {
    graph: null,
    layout: null,
    selected: null,
    hidden: [],
    params: DEFAULT_PARAMS,
    time: null,
    view: IDENTITY,
    error: null,
  };
}

/** Load a graph/layout pair, resetting interaction state. */
export function load(state: ViewerState, graph: GraphDoc, layout: LayoutDoc): ViewerState {
  const problem = checkSchemas(graph, layout);
  if (problem !== null) {
    return { ...initialState(), error: problem };
  }
  return {
    ...initialState(),
    graph,
    layout,
    params: paramsFromExport(layout.params),
  };
}

export function isHidden(state: ViewerState, id: number): boolean {
  return state.hidden.includes(id);
}

/** Select a visible glyph; selecting a hidden one is a no-op, null clears. */
export function selectGlyph(state: ViewerState, id: number | null): ViewerState {
  if (id !== null) {
    if (state.graph === null || treeEntry(state.graph, id) === undefined) return state;
    if (isHidden(state, id)) return state;
  }
  return { ...state, selected: id };
}

/**
 * Hide or reveal a whole subtree. The hidden set stays closed under
 * descendants, and toggling the same node twice is an involution.
 */
export function toggleHide(state: ViewerState, id: number): ViewerState {
  if (state.graph === null || treeEntry(state.graph, id) === undefined) return state;
  const branch = subtreeIds(state.graph, id);
  let hidden: number[];
  if (isHidden(state, id)) {
    const drop = new Set(branch);
    hidden = state.hidden.filter((h) => !drop.has(h));
  } else {
    hidden = [...new Set([...state.hidden, ...branch])].sort((a, b) => a - b);
  }
  const selected =
    state.selected !== null && hidden.includes(state.selected) ? null : state.selected;
  return { ...state, hidden, selected };
}

/** Update live layout parameters, clamped to their valid ranges. */
export function setParams(state: ViewerState, change: Partial<GeomParams>): ViewerState {
  const merged = { ...state.params, ...change };
  merged.phototropism = Math.min(1, Math.max(0, merged.phototropism));
  merged.unitArcLen = Math.max(1e-6, merged.unitArcLen);
  merged.baseRadius = Math.max(1e-6, merged.baseRadius);
  return { ...state, params: merged };
}

/** Move the time cursor, clamped to the document's lifetime; null = now. */
export function setTime(state: ViewerState, t: number | null): ViewerState {
  if (t === null || state.graph === null) return { ...state, time: null };
  const lo = state.graph.created_at;
  const hi = lastTime(state.graph);
  const clamped = Math.min(hi, Math.max(lo, t));
  return { ...state, time: clamped >= hi ? null : clamped };
}

export function pan(state: ViewerState, dx: number, dy: number): ViewerState {
  const { x, y, k } = state.view;
  return { ...state, view: { x: x + dx, y: y + dy, k } };
}

/** Zoom by a factor keeping the canvas point (cx, cy) fixed. */
export function zoomAt(state: ViewerState, cx: number, cy: number, factor: number): ViewerState {
  const { x, y, k } = state.view;
  const k2 = Math.min(50, Math.max(0.02, k * factor));
  const scale = k2 / k;
  return {
    ...state,
    view: { x: cx - (cx - x) * scale, y: cy - (cy - y) * scale, k: k2 },
  };
}

export function resetView(state: ViewerState): ViewerState {
  return { ...state, view: IDENTITY };
}
