// Shapes of the two JSON artifacts emitted by `scriptgrove export`.

export const GRAPH_SCHEMA = "scriptgrove-graph/1";
export const LAYOUT_SCHEMA = "scriptgrove-layout/1";

export interface GraphNode {
  id: number;
  kind: "root" | "insert" | "delete";
  t0: number;
  t1: number;
  session: number;
  text?: string;
  live?: string;
  killed_by?: (number | null)[];
  deleted_count?: number;
  bundle?: [number, number][];
  slots: (number | null)[];
}

export interface TreeEntry {
  id: number;
  parent: number;
  gap: number;
  fraction: number;
  depth: number;
}

export interface GraphDoc {
  schema: string;
  doc_id: string;
  created_at: number;
  final_text: string;
  nodes: GraphNode[];
  tree: TreeEntry[];
  branch_texts: Record<string, string>;
}

export interface LayoutParamsJson {
  unit_arc_len: number;
  base_radius: number;
  phototropism: number;
  dead_radius_ratio: number;
  dead_opacity: number;
}

export interface SpanJson {
  start: number;
  end: number;
  live: boolean;
  radius: number;
  opacity: number;
}

export interface GlyphJson {
  node: number;
  attach: [number, number];
  direction: [number, number];
  radius: number;
  center_angle: number;
  span_angle: number;
  color_index: number;
  color: string;
  support: [[number, number], [number, number]];
  spans: SpanJson[];
}

export interface LayoutDoc {
  schema: string;
  doc_id: string;
  created_at: number;
  params: LayoutParamsJson;
  palette: string[];
  glyphs: GlyphJson[];
}
