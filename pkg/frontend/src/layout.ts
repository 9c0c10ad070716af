/** Layered placement for justification graphs.
 *
 * Rows follow BFS depth from the root; edges that point back up (cycles) are
 * routed as curves by the renderer.  Justification graphs are shallow, so no
 * crossing minimization is attempted.
 */

import type { EGraphJson } from "./types.js";

export interface Point {
  x: number;
  y: number;
}

export interface Layout {
  positions: Map<number, Point>;
  width: number;
  height: number;
}

export const X_GAP = 130;
export const Y_GAP = 90;
export const MARGIN = 60;

export function layerAssignment(graph: EGraphJson): Map<number, number> {
  const out = new Map<number, number>();
  const successors = new Map<number, number[]>();
  for (const node of graph.nodes) successors.set(node.id, []);
  for (const edge of graph.edges) successors.get(edge.from)?.push(edge.to);

  const targets = new Set(graph.edges.map((e) => e.to));
  const seeds: number[] = [];
  if (graph.root !== null) seeds.push(graph.root);
  for (const node of graph.nodes) {
    if (!targets.has(node.id) && !seeds.includes(node.id)) seeds.push(node.id);
  }
  const queue: number[] = [];
  for (const seed of seeds) {
    if (!out.has(seed)) {
      out.set(seed, 0);
      queue.push(seed);
    }
  }
  while (queue.length > 0) {
    const current = queue.shift()!;
    for (const next of successors.get(current) ?? []) {
      if (!out.has(next)) {
        out.set(next, out.get(current)! + 1);
        queue.push(next);
      }
    }
  }
  for (const node of graph.nodes) {
    if (!out.has(node.id)) out.set(node.id, 0);
  }
  return out;
}

export function layout(graph: EGraphJson): Layout {
  const depth = layerAssignment(graph);
  const rows = new Map<number, number[]>();
  for (const node of graph.nodes) {
    const d = depth.get(node.id)!;
    if (!rows.has(d)) rows.set(d, []);
    rows.get(d)!.push(node.id);
  }
  const positions = new Map<number, Point>();
  let widest = 1;
  for (const [d, ids] of rows) {
    ids.sort((a, b) => a - b);
    widest = Math.max(widest, ids.length);
    ids.forEach((id, i) => {
      positions.set(id, {
        x: MARGIN + (i - (ids.length - 1) / 2) * X_GAP,
        y: MARGIN + d * Y_GAP,
      });
    });
  }
  // shift everything right so the leftmost node sits at the margin
  let minX = Infinity;
  for (const p of positions.values()) minX = Math.min(minX, p.x);
  const shift = MARGIN - minX;
  for (const p of positions.values()) p.x += shift;
  const depthCount = rows.size === 0 ? 1 : Math.max(...rows.keys()) + 1;
  return {
    positions,
    width: 2 * MARGIN + (widest - 1) * X_GAP,
    height: 2 * MARGIN + (depthCount - 1) * Y_GAP,
  };
}
