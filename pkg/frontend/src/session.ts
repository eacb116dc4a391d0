/** Browser-side session controller: stages proposals, pre-validates them,
 * and keeps the local state mirroring the server's. */

import { ApiError, GameApi } from "./api.js";
import { validateProposal } from "./geometry.js";
import type {
  CreateSessionBody,
  Mode,
  Proposal,
  SessionState,
  SubmitResult,
  Validation,
} from "./types.js";

export type Cell = number | [number, number];

function sameCell(a: Cell, b: Cell): boolean {
  if (typeof a === "number" || typeof b === "number") return a === b;
  return a[0] === b[0] && a[1] === b[1];
}

export class BoardSession {
  state: SessionState;
  staged: Cell[] = [];
  overlayOn = false;
  overlayCells: [number, number][] | null = null;
  lastError: string | null = null;

  constructor(
    private api: GameApi,
    state: SessionState,
    private mode: Mode = "max",
    private cond?: string,
  ) {
    this.state = state;
  }

  static async create(
    api: GameApi,
    body: CreateSessionBody,
  ): Promise<BoardSession> {
    const state = await api.createSession(body);
    return new BoardSession(api, state, body.mode ?? "max", body.cond);
  }

  /** Rebuild a controller for an existing session id (reload survival). */
  static async attach(api: GameApi, id: string): Promise<BoardSession> {
    const state = await api.getSession(id);
    return new BoardSession(api, state);
  }

  get dims(): number {
    return this.state.kind === "ap3-board" ? 1 : 2;
  }

  /** Toggle a cell in the staged proposal. */
  select(cell: Cell): Cell[] {
    const idx = this.staged.findIndex((c) => sameCell(c, cell));
    if (idx >= 0) this.staged.splice(idx, 1);
    else this.staged.push(cell);
    return [...this.staged];
  }

  clearStaged(): void {
    this.staged = [];
  }

  stagedValidation(): Validation {
    return validateProposal(
      this.state.kind,
      this.mode,
      this.state.bounds,
      this.state.position,
      this.staged as number[] & number[][],
    );
  }

  /** Client-validate, then POST; the server verdict is authoritative. */
  async submitProposal(force = false): Promise<SubmitResult> {
    if (this.state.phase !== "propose") {
      return { ok: false, reason: "not the proposing phase", source: "client" };
    }
    const pre = this.stagedValidation();
    if (!pre.ok && !force) {
      this.lastError = pre.reason ?? "illegal proposal";
      return { ok: false, reason: pre.reason, source: "client" };
    }
    try {
      this.state = await this.api.propose(this.state.id, this.staged as Proposal);
      this.staged = [];
      this.lastError = null;
      return { ok: true, state: this.state };
    } catch (err) {
      if (err instanceof ApiError) {
        this.lastError = err.detail;
        return { ok: false, reason: err.detail, source: "server" };
      }
      throw err;
    }
  }

  async chooseOption(index: number): Promise<SubmitResult> {
    try {
      this.state = await this.api.choose(this.state.id, index);
      this.lastError = null;
      return { ok: true, state: this.state };
    } catch (err) {
      if (err instanceof ApiError) {
        this.lastError = err.detail;
        return { ok: false, reason: err.detail, source: "server" };
      }
      throw err;
    }
  }

  async refresh(): Promise<SessionState> {
    this.state = await this.api.getSession(this.state.id);
    return this.state;
  }

  /** Fetch the P-position overlay for 2D boards (lazy, cached). */
  async toggleOverlay(): Promise<boolean> {
    this.overlayOn = !this.overlayOn;
    if (this.overlayOn && this.overlayCells === null && this.dims === 2) {
      const [bx, by] = this.state.bounds;
      const cells: [number, number][] = [];
      const jobs: Promise<void>[] = [];
      for (let x = 0; x <= bx; x++) {
        for (let y = 0; y <= by; y++) {
          jobs.push(
            this.api
              .evalPosition(this.state.kind, x, y, this.cond, this.mode)
              .then((o) => {
                if (o === "P") cells.push([x, y]);
              }),
          );
        }
      }
      await Promise.all(jobs);
      this.overlayCells = cells.sort((a, b) => a[0] - b[0] || a[1] - b[1]);
    }
    return this.overlayOn;
  }
}
