/** SVG renderer for justification graphs.
 *
 * Positive edges solid, negative edges dashed; assume/top/bot are square
 * glyphs while annotated atoms are rounded and clickable.
 */

import { layout } from "./layout.js";
import { nodeLabel } from "./types.js";
import type { EGraphJson, EGraphNode } from "./types.js";

const SVG_NS = "http://www.w3.org/2000/svg";

export type NodeClickHandler = (atom: string, sign: "+" | "-") => void;

function svgEl<K extends keyof SVGElementTagNameMap>(
  tag: K,
  attrs: Record<string, string>,
): SVGElementTagNameMap[K] {
  const el = document.createElementNS(SVG_NS, tag);
  for (const [key, value] of Object.entries(attrs)) el.setAttribute(key, value);
  return el;
}

function nodeFill(node: EGraphNode): string {
  if (node.kind === "pos") return "#d2e4ff";
  if (node.kind === "neg") return "#ffdcd4";
  return "#ececec";
}

export class GraphView {
  onNodeClick: NodeClickHandler | null = null;

  constructor(private readonly container: HTMLElement) {}

  clear(): void {
    this.container.replaceChildren();
  }

  render(graph: EGraphJson): void {
    this.clear();
    const placed = layout(graph);
    const svg = svgEl("svg", {
      viewBox: `0 0 ${placed.width} ${placed.height}`,
      width: String(placed.width),
      height: String(placed.height),
      class: "egraph",
    });
    const defs = svgEl("defs", {});
    const marker = svgEl("marker", {
      id: "arrow",
      viewBox: "0 0 10 10",
      refX: "9",
      refY: "5",
      markerWidth: "7",
      markerHeight: "7",
      orient: "auto-start-reverse",
    });
    marker.appendChild(svgEl("path", { d: "M 0 0 L 10 5 L 0 10 z", fill: "#333" }));
    defs.appendChild(marker);
    svg.appendChild(defs);

    for (const edge of graph.edges) {
      const from = placed.positions.get(edge.from)!;
      const to = placed.positions.get(edge.to)!;
      const up = to.y <= from.y; // back edge (cycle): bow outward
      const midX = (from.x + to.x) / 2 + (up ? 55 : 0);
      const midY = (from.y + to.y) / 2 + (up ? 10 : 0);
      const path = svgEl("path", {
        d: `M ${from.x} ${from.y + 18} Q ${midX} ${midY} ${to.x} ${to.y - 20}`,
        fill: "none",
        stroke: "#333",
        "stroke-width": "1.4",
        "marker-end": "url(#arrow)",
        "data-edge": `${edge.from}->${edge.to}`,
        "data-label": edge.label,
      });
      if (edge.label === "-") path.setAttribute("stroke-dasharray", "6 4");
      svg.appendChild(path);
      const text = svgEl("text", {
        x: String(midX),
        y: String(midY - 4),
        "font-size": "11",
        fill: "#666",
        "text-anchor": "middle",
      });
      text.textContent = edge.label;
      svg.appendChild(text);
    }

    for (const node of graph.nodes) {
      const at = placed.positions.get(node.id)!;
      const annotated = node.kind === "pos" || node.kind === "neg";
      const group = svgEl("g", {
        class: `node kind-${node.kind}`,
        "data-node": nodeLabel(node),
      });
      const rect = svgEl("rect", {
        x: String(at.x - 40),
        y: String(at.y - 17),
        width: "80",
        height: "34",
        rx: annotated ? "16" : "2",
        fill: nodeFill(node),
        stroke: node.id === graph.root ? "#222" : "#888",
        "stroke-width": node.id === graph.root ? "2.5" : "1",
      });
      group.appendChild(rect);
      const text = svgEl("text", {
        x: String(at.x),
        y: String(at.y + 4),
        "text-anchor": "middle",
        "font-size": "13",
      });
      text.textContent = nodeLabel(node);
      group.appendChild(text);
      if (annotated && node.atom) {
        group.setAttribute("style", "cursor: pointer");
        const atom = node.atom;
        const sign = node.kind === "pos" ? "+" : "-";
        group.addEventListener("click", () => this.onNodeClick?.(atom, sign));
      }
      svg.appendChild(group);
    }
    this.container.appendChild(svg);
  }
}
