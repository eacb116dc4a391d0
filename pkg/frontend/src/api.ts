import type { CreateSessionBody, GameInfo, Proposal, SessionState } from "./types.js";

export class ApiError extends Error {
  constructor(public status: number, public detail: string) {
    super(detail);
  }
}

async function unwrap<T>(res: Response): Promise<T> {
  if (!res.ok) {
    let detail = res.statusText;
    try {
      const body = await res.json();
      if (typeof body.detail === "string") detail = body.detail;
    } catch {
      /* non-JSON error body */
    }
    throw new ApiError(res.status, detail);
  }
  return (await res.json()) as T;
}

/** Thin typed client for the game service; the server stays authoritative. */
export class GameApi {
  constructor(private base: string = "") {}

  private url(path: string): string {
    return `${this.base}${path}`;
  }

  games(): Promise<GameInfo[]> {
    return fetch(this.url("/api/games")).then((r) => unwrap<GameInfo[]>(r));
  }

  async createSession(body: CreateSessionBody): Promise<SessionState> {
    const doc = await fetch(this.url("/api/session"), {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(body),
    }).then((r) => unwrap<{ id: string; state: SessionState }>(r));
    return doc.state;
  }

  getSession(id: string): Promise<SessionState> {
    return fetch(this.url(`/api/session/${id}`)).then((r) => unwrap<SessionState>(r));
  }

  propose(id: string, proposal: Proposal): Promise<SessionState> {
    return fetch(this.url(`/api/session/${id}/propose`), {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ proposal }),
    }).then((r) => unwrap<SessionState>(r));
  }

  choose(id: string, index: number): Promise<SessionState> {
    return fetch(this.url(`/api/session/${id}/choose`), {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ index }),
    }).then((r) => unwrap<SessionState>(r));
  }

  async evalPosition(
    kind: string,
    x: number,
    y?: number,
    cond?: string,
    mode?: string,
  ): Promise<"P" | "N"> {
    const params = new URLSearchParams({ kind, x: String(x) });
    if (y !== undefined) params.set("y", String(y));
    if (cond) params.set("cond", cond);
    if (mode) params.set("mode", mode);
    const doc = await fetch(this.url(`/api/eval?${params}`)).then((r) =>
      unwrap<{ outcome: "P" | "N" }>(r),
    );
    return doc.outcome;
  }
}
