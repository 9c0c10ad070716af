/** Client-side session state: a verbatim mirror of the server's digests.
 *
 * Every mutating call is followed by a GET /state refetch, and the view is
 * always rendered from that payload — the client never recomputes semantics.
 */

import { ApiClient } from "./api.js";
import type { BreakpointView, EGraphJson, SessionDigest } from "./types.js";

export interface TimelineEntry {
  checkpoint: number;
  label: string;
  plus: string[];
  minus: string[];
}

export interface GraphSelection {
  atom: string;
  sign: "+" | "-";
  graph: EGraphJson;
}

export interface SessionView {
  sessionId: string | null;
  programText: string;
  digest: SessionDigest | null;
  breakpoints: BreakpointView[];
  timeline: TimelineEntry[];
  selected: GraphSelection | null;
  error: string | null;
  busy: boolean;
}

type Listener = (view: SessionView) => void;

function describe(digest: SessionDigest): string {
  const event = digest.lastEvent;
  if (!event) return "created";
  if (event.type === "model") return "model found";
  if (event.type === "exhausted") return "search exhausted";
  if (event.type === "resume") return "resumed";
  const tag = event.tag;
  if (!tag) return event.type;
  const bits = [tag.kind, tag.atom ?? "", tag.sign ?? ""].filter(Boolean);
  return bits.join(" ");
}

export class SessionStore {
  readonly view: SessionView = {
    sessionId: null,
    programText: "",
    digest: null,
    breakpoints: [],
    timeline: [],
    selected: null,
    error: null,
    busy: false,
  };

  private listeners: Listener[] = [];

  constructor(private readonly api: ApiClient) {}

  subscribe(listener: Listener): () => void {
    this.listeners.push(listener);
    return () => {
      this.listeners = this.listeners.filter((l) => l !== listener);
    };
  }

  private emit(): void {
    for (const listener of this.listeners) listener(this.view);
  }

  private async guarded<T>(work: () => Promise<T>): Promise<T | null> {
    if (this.view.busy) return null;
    this.view.busy = true;
    this.view.error = null;
    this.emit();
    try {
      return await work();
    } catch (err) {
      this.view.error = err instanceof Error ? err.message : String(err);
      return null;
    } finally {
      this.view.busy = false;
      this.emit();
    }
  }

  /** Mutation → refetch: trust only the GET /state payload. */
  private async syncState(): Promise<void> {
    if (!this.view.sessionId) return;
    const digest = await this.api.state(this.view.sessionId);
    this.view.digest = digest;
    const last = this.view.timeline[this.view.timeline.length - 1];
    if (!last || last.checkpoint !== digest.checkpoint) {
      this.view.timeline.push({
        checkpoint: digest.checkpoint,
        label: describe(digest),
        plus: digest.state.plus,
        minus: digest.state.minus,
      });
    }
  }

  async loadProgram(
    text: string,
    options: { signOrder?: string; choiceOrder?: string[] } = {},
  ): Promise<void> {
    await this.guarded(async () => {
      const { id } = await this.api.createSession(text, options);
      this.view.sessionId = id;
      this.view.programText = text;
      this.view.breakpoints = [];
      this.view.timeline = [];
      this.view.selected = null;
      await this.syncState();
    });
  }

  async addBreakpoint(bp: {
    kind: string;
    atom?: string;
    value?: string;
    answer?: number;
  }): Promise<void> {
    await this.guarded(async () => {
      if (!this.view.sessionId) throw new Error("no session");
      const { bpId } = await this.api.addBreakpoint(this.view.sessionId, bp);
      this.view.breakpoints.push({
        id: bpId,
        kind: bp.kind,
        atom: bp.atom ?? null,
        value: bp.kind === "atom" ? bp.value ?? "any" : null,
        answer: bp.answer ?? null,
      });
      await this.syncState();
    });
  }

  async removeBreakpoint(bpId: number): Promise<void> {
    await this.guarded(async () => {
      if (!this.view.sessionId) throw new Error("no session");
      await this.api.removeBreakpoint(this.view.sessionId, bpId);
      this.view.breakpoints = this.view.breakpoints.filter((b) => b.id !== bpId);
      await this.syncState();
    });
  }

  async run(): Promise<void> {
    await this.guarded(async () => {
      const sid = this.view.sessionId;
      if (!sid) throw new Error("no session");
      // refresh the displayed state every 250 ms while the run is in flight
      const poller = setInterval(() => {
        void this.api
          .state(sid)
          .then((digest) => {
            this.view.digest = digest;
            this.emit();
          })
          .catch(() => {});
      }, 250);
      try {
        await this.api.run(sid);
      } finally {
        clearInterval(poller);
      }
      await this.syncState();
      await this.refreshSelection();
    });
  }

  async step(): Promise<void> {
    await this.guarded(async () => {
      if (!this.view.sessionId) throw new Error("no session");
      await this.api.step(this.view.sessionId);
      await this.syncState();
      await this.refreshSelection();
    });
  }

  async resumeFrom(checkpoint: number, signOrder?: string): Promise<void> {
    await this.guarded(async () => {
      if (!this.view.sessionId) throw new Error("no session");
      await this.api.resume(this.view.sessionId, checkpoint, signOrder);
      await this.syncState();
      await this.refreshSelection();
    });
  }

  async openGraph(atom: string, sign: "+" | "-"): Promise<void> {
    await this.guarded(async () => {
      if (!this.view.sessionId) throw new Error("no session");
      const graph = await this.api.justification(this.view.sessionId, atom, sign);
      this.view.selected = { atom, sign, graph };
    });
  }

  private async refreshSelection(): Promise<void> {
    const selected = this.view.selected;
    if (!selected || !this.view.sessionId) return;
    try {
      selected.graph = await this.api.justification(
        this.view.sessionId,
        selected.atom,
        selected.sign,
      );
    } catch {
      this.view.selected = null;
    }
  }
}
