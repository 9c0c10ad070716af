/** Panel wiring: program editor, breakpoints, stepper timeline, graph explorer. */

import { ApiClient } from "./api.js";
import { GraphView } from "./graphview.js";
import { SessionStore } from "./store.js";
import type { SessionView } from "./store.js";

const DEFAULT_PROGRAM = `a :- f, not b.
b :- e, not a.
e.
f :- e.
d :- c, e.
c :- d, f.
`;

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  attrs: Record<string, string> = {},
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  for (const [key, value] of Object.entries(attrs)) node.setAttribute(key, value);
  if (text !== undefined) node.textContent = text;
  return node;
}

export class App {
  readonly store: SessionStore;
  private graphView!: GraphView;
  private rootEl!: HTMLElement;

  constructor(root: HTMLElement, api: ApiClient = new ApiClient()) {
    this.store = new SessionStore(api);
    this.rootEl = root;
    this.mount();
    this.store.subscribe(() => this.update());
    this.update();
  }

  private mount(): void {
    this.rootEl.replaceChildren();
    const editor = el("section", { class: "panel editor" });
    editor.appendChild(el("h2", {}, "Program"));
    const text = el("textarea", { id: "program-text", rows: "10" });
    text.value = DEFAULT_PROGRAM;
    editor.appendChild(text);
    const loadRow = el("div", { class: "row" });
    loadRow.appendChild(el("button", { id: "load-btn" }, "Load"));
    loadRow.appendChild(el("span", { id: "load-error", class: "error" }));
    editor.appendChild(loadRow);

    const control = el("section", { class: "panel control" });
    control.appendChild(el("h2", {}, "State"));
    control.appendChild(el("div", { id: "banner" }));
    control.appendChild(el("div", { id: "atom-lists" }));
    const buttons = el("div", { class: "row" });
    for (const [id, label] of [
      ["step-btn", "Step"],
      ["run-btn", "Run"],
    ] as const) {
      buttons.appendChild(el("button", { id }, label));
    }
    control.appendChild(buttons);
    control.appendChild(el("h3", {}, "Timeline"));
    control.appendChild(el("ol", { id: "timeline" }));
    control.appendChild(el("h3", {}, "Models"));
    control.appendChild(el("ul", { id: "models" }));

    const bps = el("section", { class: "panel breakpoints" });
    bps.appendChild(el("h2", {}, "Breakpoints"));
    const form = el("div", { class: "row" });
    const kind = el("select", { id: "bp-kind" });
    for (const k of ["atom", "conflict", "conflict-atom", "answer"]) {
      kind.appendChild(el("option", { value: k }, k));
    }
    form.appendChild(kind);
    form.appendChild(el("input", { id: "bp-atom", placeholder: "atom" }));
    const value = el("select", { id: "bp-value" });
    for (const v of ["any", "true", "false"]) {
      value.appendChild(el("option", { value: v }, v));
    }
    form.appendChild(value);
    form.appendChild(el("input", { id: "bp-answer", placeholder: "answer #", size: "6" }));
    form.appendChild(el("button", { id: "bp-add" }, "Add"));
    bps.appendChild(form);
    bps.appendChild(el("ul", { id: "bp-list" }));

    const explorer = el("section", { class: "panel explorer" });
    explorer.appendChild(el("h2", {}, "Justification"));
    const pick = el("div", { class: "row" });
    pick.appendChild(el("input", { id: "graph-atom", placeholder: "atom" }));
    const sign = el("select", { id: "graph-sign" });
    sign.appendChild(el("option", { value: "+" }, "+"));
    sign.appendChild(el("option", { value: "-" }, "-"));
    pick.appendChild(sign);
    pick.appendChild(el("button", { id: "graph-open" }, "Open"));
    pick.appendChild(el("span", { id: "graph-error", class: "error" }));
    explorer.appendChild(pick);
    explorer.appendChild(el("div", { id: "graph-host" }));

    this.rootEl.append(editor, control, bps, explorer);
    this.graphView = new GraphView(
      this.rootEl.querySelector("#graph-host") as HTMLElement,
    );
    this.graphView.onNodeClick = (atom, signOf) => {
      void this.store.openGraph(atom, signOf);
    };
    this.bind();
  }

  private bind(): void {
    this.q("#load-btn").addEventListener("click", () => {
      const text = (this.q("#program-text") as HTMLTextAreaElement).value;
      void this.store.loadProgram(text);
    });
    this.q("#step-btn").addEventListener("click", () => void this.store.step());
    this.q("#run-btn").addEventListener("click", () => void this.store.run());
    this.q("#bp-add").addEventListener("click", () => {
      const kind = (this.q("#bp-kind") as HTMLSelectElement).value;
      const atom = (this.q("#bp-atom") as HTMLInputElement).value.trim();
      const value = (this.q("#bp-value") as HTMLSelectElement).value;
      const answer = parseInt((this.q("#bp-answer") as HTMLInputElement).value, 10);
      void this.store.addBreakpoint({
        kind,
        atom: atom || undefined,
        value,
        answer: Number.isFinite(answer) ? answer : undefined,
      });
    });
    this.q("#graph-open").addEventListener("click", () => {
      const atom = (this.q("#graph-atom") as HTMLInputElement).value.trim();
      const sign = (this.q("#graph-sign") as HTMLSelectElement).value as "+" | "-";
      if (atom) void this.store.openGraph(atom, sign);
    });
  }

  private q(selector: string): HTMLElement {
    return this.rootEl.querySelector(selector) as HTMLElement;
  }

  private update(): void {
    const view = this.store.view;
    this.q("#load-error").textContent = view.error ?? "";
    this.renderBanner(view);
    this.renderAtoms(view);
    this.renderTimeline(view);
    this.renderModels(view);
    this.renderBreakpoints(view);
    this.renderGraph(view);
    const done = view.digest?.status === "done";
    for (const id of ["#step-btn", "#run-btn"]) {
      (this.q(id) as HTMLButtonElement).disabled = view.busy || !view.digest || done;
    }
  }

  private renderBanner(view: SessionView): void {
    const banner = this.q("#banner");
    banner.className = "";
    if (!view.digest) {
      banner.textContent = "no session";
      return;
    }
    const conflict = view.digest.state.conflict;
    if (conflict.length > 0) {
      banner.textContent = `conflict on ${conflict.join(", ")}`;
      banner.className = "conflict-banner";
    } else if (view.digest.lastEvent?.type === "model") {
      banner.textContent = "model found";
      banner.className = "model-banner";
    } else {
      banner.textContent = view.digest.status;
    }
  }

  private renderAtoms(view: SessionView): void {
    const host = this.q("#atom-lists");
    host.replaceChildren();
    if (!view.digest) return;
    const { plus, minus, unknown } = view.digest.state;
    for (const [label, atoms] of [
      ["true", plus],
      ["false", minus],
      ["unknown", unknown],
    ] as const) {
      const row = el("div", { class: `atoms atoms-${label}` });
      row.appendChild(el("strong", {}, `${label}: `));
      row.appendChild(
        el("span", { id: `atoms-${label}` }, atoms.length ? atoms.join(", ") : "(none)"),
      );
      host.appendChild(row);
    }
  }

  private renderTimeline(view: SessionView): void {
    const list = this.q("#timeline");
    list.replaceChildren();
    for (const entry of view.timeline) {
      const item = el("li", {});
      const button = el(
        "button",
        { class: "timeline-entry", "data-checkpoint": String(entry.checkpoint) },
        `#${entry.checkpoint} ${entry.label} [+${entry.plus.length}/-${entry.minus.length}]`,
      );
      button.addEventListener("click", () => void this.store.resumeFrom(entry.checkpoint));
      item.appendChild(button);
      list.appendChild(item);
    }
  }

  private renderModels(view: SessionView): void {
    const list = this.q("#models");
    list.replaceChildren();
    for (const model of view.digest?.models ?? []) {
      list.appendChild(
        el("li", { class: "model-chip" }, `{${model.plus.join(", ")}}`),
      );
    }
  }

  private renderBreakpoints(view: SessionView): void {
    const list = this.q("#bp-list");
    list.replaceChildren();
    for (const bp of view.breakpoints) {
      const item = el("li", {});
      const bits = [bp.kind, bp.atom ?? "", bp.value ?? "", bp.answer ?? ""]
        .filter((x) => x !== "" && x !== null)
        .join(" ");
      item.appendChild(el("span", {}, bits));
      const remove = el("button", { class: "bp-remove" }, "x");
      remove.addEventListener("click", () => void this.store.removeBreakpoint(bp.id));
      item.appendChild(remove);
      list.appendChild(item);
    }
  }

  private renderGraph(view: SessionView): void {
    const err = this.q("#graph-error");
    err.textContent = view.selected ? "" : view.error ?? "";
    if (view.selected) {
      (this.q("#graph-atom") as HTMLInputElement).value = view.selected.atom;
      this.graphView.render(view.selected.graph);
    } else {
      this.graphView.clear();
    }
  }
}

export function boot(): void {
  const root = document.getElementById("app");
  if (!root) throw new Error("missing #app element");
  new App(root);
}
