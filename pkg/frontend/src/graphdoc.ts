// Read-only helpers over a loaded graph export.

import { GRAPH_SCHEMA, GraphDoc, GraphNode, LAYOUT_SCHEMA, LayoutDoc, TreeEntry } from "./types.js";

export function checkSchemas(graph: GraphDoc, layout: LayoutDoc): string | null {
  if (graph.schema !== GRAPH_SCHEMA) {
    return `graph schema ${graph.schema}, viewer expects ${GRAPH_SCHEMA}`;
  }
  if (layout.schema !== LAYOUT_SCHEMA) {
    return `layout schema ${layout.schema}, viewer expects ${LAYOUT_SCHEMA}`;
  }
  if (graph.doc_id !== layout.doc_id) {
    return `graph is for "${graph.doc_id}" but layout is for "${layout.doc_id}"`;
  }
  return null;
}

export function nodeById(graph: GraphDoc, id: number): GraphNode {
  const node = graph.nodes[id];
  if (!node || node.id !== id) {
    // ids are creation-order indexes, but don't rely on it silently
    const found = graph.nodes.find((n) => n.id === id);
    if (!found) throw new Error(`no node ${id}`);
    return found;
  }
  return node;
}

export function treeEntry(graph: GraphDoc, id: number): TreeEntry | undefined {
  return graph.tree.find((e) => e.id === id);
}

/** Children of each insert node (and of the root, id 0), ordered by gap. */
export function childrenMap(graph: GraphDoc): Map<number, number[]> {
  const kids = new Map<number, number[]>();
  const sorted = [...graph.tree].sort((a, b) => a.gap - b.gap);
  for (const e of sorted) {
    const list = kids.get(e.parent) ?? [];
    list.push(e.id);
    kids.set(e.parent, list);
  }
  return kids;
}

/** Insert-node ids in spanning-tree preorder (parents before children). */
export function preorder(graph: GraphDoc): number[] {
  const kids = childrenMap(graph);
  const out: number[] = [];
  const stack = [...(kids.get(0) ?? [])].reverse();
  while (stack.length > 0) {
    const id = stack.pop()!;
    out.push(id);
    const below = kids.get(id) ?? [];
    for (let i = below.length - 1; i >= 0; i--) stack.push(below[i]);
  }
  return out;
}

/** The node and every spanning-tree descendant of it. */
export function subtreeIds(graph: GraphDoc, id: number): number[] {
  const kids = childrenMap(graph);
  const out: number[] = [];
  const stack = [id];
  while (stack.length > 0) {
    const cur = stack.pop()!;
    out.push(cur);
    for (const c of kids.get(cur) ?? []) stack.push(c);
  }
  return out;
}

export function lastTime(graph: GraphDoc): number {
  let t = graph.created_at;
  for (const n of graph.nodes) t = Math.max(t, n.t1);
  return t;
}

export function branchText(graph: GraphDoc, id: number): string {
  return graph.branch_texts[String(id)] ?? "";
}

export function liveCharCount(node: GraphNode): number {
  return (node.killed_by ?? []).filter((k) => k === null).length;
}
