// @vitest-environment happy-dom
import { beforeEach, describe, expect, it } from "vitest";

import { ApiClient } from "../src/api.js";
import { App } from "../src/app.js";
import { makeDigest, makeFakeServer } from "./fake_server.js";
import type { FakeServer } from "./fake_server.js";

let server: FakeServer;
let app: App;

beforeEach(() => {
  document.body.innerHTML = '<div id="app"></div>';
  server = makeFakeServer();
  app = new App(
    document.getElementById("app") as HTMLElement,
    new ApiClient("", server.fetch),
  );
});

describe("app view", () => {
  it("lists the program's atoms after load", async () => {
    server.digest = makeDigest({
      state: { plus: [], minus: [], unknown: ["a", "b", "c", "d", "e", "f"], conflict: [] },
    });
    await app.store.loadProgram("whatever");
    const unknown = document.getElementById("atoms-unknown")!;
    expect(unknown.textContent).toBe("a, b, c, d, e, f");
  });

  it("shows a conflict banner when the state overlaps", async () => {
    await app.store.loadProgram("whatever");
    server.digest = makeDigest({
      state: { plus: ["p", "q", "r"], minus: ["p"], unknown: [], conflict: ["p"] },
    });
    await app.store.step();
    const banner = document.getElementById("banner")!;
    expect(banner.className).toBe("conflict-banner");
    expect(banner.textContent).toContain("p");
  });

  it("renders every node and edge of the selected graph", async () => {
    server.graphs["b+"] = {
      root: 1,
      nodes: [
        { id: 0, kind: "assume", atom: null },
        { id: 1, kind: "pos", atom: "b" },
        { id: 2, kind: "neg", atom: "a" },
        { id: 3, kind: "pos", atom: "e" },
        { id: 4, kind: "top", atom: null },
      ],
      edges: [
        { from: 1, to: 3, label: "+" },
        { from: 1, to: 2, label: "-" },
        { from: 2, to: 0, label: "-" },
        { from: 3, to: 4, label: "+" },
      ],
    };
    await app.store.loadProgram("whatever");
    await app.store.openGraph("b", "+");
    const host = document.getElementById("graph-host")!;
    const nodes = host.querySelectorAll("g.node");
    const edges = host.querySelectorAll("path[data-edge]");
    expect(nodes.length).toBe(5);
    expect(edges.length).toBe(4);
    const dashed = host.querySelectorAll('path[data-label="-"]');
    expect(dashed.length).toBe(2);
    for (const e of Array.from(dashed)) {
      expect(e.getAttribute("stroke-dasharray")).toBeTruthy();
    }
    const labels = new Set(
      Array.from(nodes).map((n) => n.getAttribute("data-node")),
    );
    expect(labels).toEqual(new Set(["b+", "a-", "e+", "assume", "⊤"]));
  });

  it("clicking an atom node refetches that atom's graph", async () => {
    server.graphs["b+"] = {
      root: 0,
      nodes: [
        { id: 0, kind: "pos", atom: "b" },
        { id: 1, kind: "neg", atom: "a" },
        { id: 2, kind: "assume", atom: null },
      ],
      edges: [
        { from: 0, to: 1, label: "-" },
        { from: 1, to: 2, label: "-" },
      ],
    };
    server.graphs["a-"] = {
      root: 0,
      nodes: [
        { id: 0, kind: "neg", atom: "a" },
        { id: 1, kind: "assume", atom: null },
      ],
      edges: [{ from: 0, to: 1, label: "-" }],
    };
    await app.store.loadProgram("whatever");
    await app.store.openGraph("b", "+");
    const aNode = document.querySelector('g[data-node="a-"]') as SVGGElement;
    aNode.dispatchEvent(new MouseEvent("click", { bubbles: true }));
    await new Promise((resolve) => setTimeout(resolve, 0));
    expect(app.store.view.selected?.atom).toBe("a");
    expect(app.store.view.selected?.sign).toBe("-");
    expect(server.calls.some((c) => c.includes("atom=a&sign=-"))).toBe(true);
  });

  it("disables the stepper when the session is done", async () => {
    await app.store.loadProgram("whatever");
    server.digest = makeDigest({ status: "done" });
    await app.store.step();
    expect((document.getElementById("step-btn") as HTMLButtonElement).disabled).toBe(true);
    expect((document.getElementById("run-btn") as HTMLButtonElement).disabled).toBe(true);
  });

  it("shows model chips from the digest verbatim", async () => {
    await app.store.loadProgram("whatever");
    server.digest = makeDigest({
      models: [{ plus: ["f", "b", "e"], minus: ["a", "d", "c"] }],
      lastEvent: { type: "model", tag: null, model: null, firedBreakpoints: [] },
    });
    await app.store.run();
    const chips = document.querySelectorAll(".model-chip");
    expect(chips.length).toBe(1);
    expect(chips[0].textContent).toBe("{f, b, e}");
    expect(document.getElementById("banner")!.className).toBe("model-banner");
  });
});
