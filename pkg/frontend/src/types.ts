/** Server payload shapes; field names mirror the debugger API verbatim. */

export interface ModelView {
  plus: string[];
  minus: string[];
}

export interface StateView {
  plus: string[];
  minus: string[];
  unknown: string[];
  conflict: string[];
}

export interface TagView {
  kind: string;
  atom: string | null;
  rule: number | null;
  sign: string | null;
}

export interface LastEvent {
  type: string;
  tag: TagView | null;
  model: ModelView | null;
  firedBreakpoints: number[];
}

export interface SessionDigest {
  id: string;
  status: "paused" | "done";
  state: StateView;
  models: ModelView[];
  checkpoint: number;
  lastEvent: LastEvent | null;
}

export interface BreakpointView {
  id: number;
  kind: string;
  atom: string | null;
  value: string | null;
  answer: number | null;
}

export interface EGraphNode {
  id: number;
  kind: "pos" | "neg" | "assume" | "top" | "bot";
  atom: string | null;
}

export interface EGraphEdge {
  from: number;
  to: number;
  label: "+" | "-";
}

export interface EGraphJson {
  root: number | null;
  nodes: EGraphNode[];
  edges: EGraphEdge[];
}

export interface SnapshotJson {
  d: ModelView;
  off: Record<string, EGraphJson>;
  on: Record<string, EGraphJson>;
}

export function nodeLabel(n: EGraphNode): string {
  switch (n.kind) {
    case "pos":
      return `${n.atom}+`;
    case "neg":
      return `${n.atom}-`;
    case "assume":
      return "assume";
    case "top":
      return "⊤";
    case "bot":
      return "⊥";
  }
}
