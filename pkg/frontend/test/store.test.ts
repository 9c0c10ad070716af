import { beforeEach, describe, expect, it } from "vitest";

import { ApiClient, ApiError } from "../src/api.js";
import { SessionStore } from "../src/store.js";
import { makeDigest, makeFakeServer } from "./fake_server.js";
import type { FakeServer } from "./fake_server.js";

let server: FakeServer;
let store: SessionStore;

beforeEach(() => {
  server = makeFakeServer();
  store = new SessionStore(new ApiClient("", server.fetch));
});

describe("session store", () => {
  it("creates a session and immediately mirrors GET /state", async () => {
    await store.loadProgram("a.");
    expect(store.view.sessionId).toBe("s1");
    expect(server.calls).toContain("GET /sessions/s1/state");
    expect(store.view.digest?.state.unknown).toEqual(["a", "b"]);
  });

  it("refetches state after every mutating call", async () => {
    await store.loadProgram("a.");
    server.calls.length = 0;
    await store.step();
    const stepIndex = server.calls.indexOf("POST /sessions/s1/step");
    const stateIndex = server.calls.indexOf("GET /sessions/s1/state");
    expect(stepIndex).toBeGreaterThanOrEqual(0);
    expect(stateIndex).toBeGreaterThan(stepIndex);

    server.calls.length = 0;
    await store.addBreakpoint({ kind: "conflict" });
    expect(server.calls.indexOf("GET /sessions/s1/state")).toBeGreaterThan(
      server.calls.indexOf("POST /sessions/s1/breakpoints"),
    );
  });

  it("appends one timeline entry per new checkpoint", async () => {
    await store.loadProgram("a.");
    await store.step();
    await store.step();
    const checkpoints = store.view.timeline.map((t) => t.checkpoint);
    expect(checkpoints).toEqual([1, 2, 3]);
  });

  it("records server errors without clobbering the session", async () => {
    await store.loadProgram("a.");
    server.failNext = { status: 400, error: "unknown atom 'zz'" };
    await store.addBreakpoint({ kind: "atom", atom: "zz" });
    expect(store.view.error).toContain("unknown atom");
    expect(store.view.sessionId).toBe("s1");
  });

  it("opens and refreshes justification graphs", async () => {
    server.graphs["b+"] = {
      root: 0,
      nodes: [
        { id: 0, kind: "pos", atom: "b" },
        { id: 1, kind: "top", atom: null },
      ],
      edges: [{ from: 0, to: 1, label: "+" }],
    };
    await store.loadProgram("b.");
    await store.openGraph("b", "+");
    expect(store.view.selected?.graph.edges).toHaveLength(1);
    // graph for an undetermined atom: 404 surfaces as an error toast
    await store.openGraph("a", "+");
    expect(store.view.error).toContain("no justification");
  });

  it("drops the selection when it disappears after a step", async () => {
    server.graphs["b+"] = {
      root: 0,
      nodes: [{ id: 0, kind: "pos", atom: "b" }, { id: 1, kind: "top", atom: null }],
      edges: [{ from: 0, to: 1, label: "+" }],
    };
    await store.loadProgram("b.");
    await store.openGraph("b", "+");
    delete server.graphs["b+"];
    await store.step();
    expect(store.view.selected).toBeNull();
  });
});

describe("api client", () => {
  it("propagates structured errors", async () => {
    server.failNext = { status: 404, error: "no session nope" };
    const api = new ApiClient("", server.fetch);
    await expect(api.state("nope")).rejects.toThrowError(ApiError);
  });

  it("sends snake_case options to the server", async () => {
    const api = new ApiClient("", async (url, init) => {
      expect(url).toBe("/sessions");
      expect(JSON.parse(String(init?.body))).toEqual({
        program: "a.",
        sign_order: "ft",
        choice_order: ["b"],
      });
      return new Response(JSON.stringify({ id: "x" }), { status: 200 });
    });
    await api.createSession("a.", { signOrder: "ft", choiceOrder: ["b"] });
  });

  it("encodes justification query parameters", async () => {
    const api = new ApiClient("http://h", async (url) => {
      expect(url).toBe("http://h/sessions/s/justification?atom=p&sign=%2B&format=json");
      return new Response("{}", { status: 200 });
    });
    await api.justification("s", "p", "+");
  });
});
