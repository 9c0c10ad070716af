/** Thin typed client over the debugger's HTTP endpoints. */

import type {
  EGraphJson,
  ModelView,
  SessionDigest,
  SnapshotJson,
} from "./types.js";

export class ApiError extends Error {
  constructor(message: string, readonly status: number) {
    super(message);
  }
}

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
  constructor(
    private readonly base: string = "",
    private readonly fetchImpl: FetchLike = (url, init) => fetch(url, init),
  ) {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const init: RequestInit = { method, headers: {} };
    if (body !== undefined) {
      init.headers = { "Content-Type": "application/json" };
      init.body = JSON.stringify(body);
    }
    const response = await this.fetchImpl(this.base + path, init);
    const text = await response.text();
    if (!response.ok) {
      let message = text;
      try {
        const parsed = JSON.parse(text);
        message = parsed.error ?? parsed.detail ?? text;
      } catch {
        /* raw body */
      }
      throw new ApiError(String(message), response.status);
    }
    return (text ? JSON.parse(text) : null) as T;
  }

  createSession(
    program: string,
    options: { signOrder?: string; choiceOrder?: string[] } = {},
  ): Promise<{ id: string }> {
    return this.request("POST", "/sessions", {
      program,
      sign_order: options.signOrder ?? "tf",
      choice_order: options.choiceOrder ?? [],
    });
  }

  addBreakpoint(
    sid: string,
    bp: { kind: string; atom?: string; value?: string; answer?: number },
  ): Promise<{ bpId: number }> {
    return this.request("POST", `/sessions/${sid}/breakpoints`, bp);
  }

  removeBreakpoint(sid: string, bpId: number): Promise<{ ok: boolean }> {
    return this.request("DELETE", `/sessions/${sid}/breakpoints/${bpId}`);
  }

  run(sid: string): Promise<SessionDigest> {
    return this.request("POST", `/sessions/${sid}/run`);
  }

  step(sid: string): Promise<SessionDigest> {
    return this.request("POST", `/sessions/${sid}/step`);
  }

  resume(sid: string, checkpoint: number, signOrder?: string): Promise<SessionDigest> {
    return this.request("POST", `/sessions/${sid}/resume`, {
      checkpoint,
      sign_order: signOrder ?? null,
    });
  }

  state(sid: string): Promise<SessionDigest> {
    return this.request("GET", `/sessions/${sid}/state`);
  }

  snapshot(sid: string): Promise<SnapshotJson> {
    return this.request("GET", `/sessions/${sid}/snapshot`);
  }

  justification(sid: string, atom: string, sign: "+" | "-"): Promise<EGraphJson> {
    const params = new URLSearchParams({ atom, sign, format: "json" });
    return this.request("GET", `/sessions/${sid}/justification?${params}`);
  }

  checkpoints(sid: string): Promise<{ checkpoints: number[] }> {
    return this.request("GET", `/sessions/${sid}/checkpoints`);
  }

  models(sid: string): Promise<{ models: ModelView[] }> {
    return this.request("GET", `/sessions/${sid}/models`);
  }
}
