export type Point = [number, number];
export type Target1D = number;
export type Target2D = number[]; // [x, y] as delivered by the server
export type Proposal = Target1D[] | Target2D[];

export type Phase = "propose" | "choose" | "done";
export type Mode = "max" | "order" | "unrestricted";

export interface SessionState {
  id: string;
  kind: string;
  position: number | number[];
  phase: Phase;
  proposer: "human" | "engine";
  legalProposals: Proposal[];
  truncated: boolean;
  pendingProposal: Proposal | null;
  winner: "human" | "engine" | null;
  moves: number;
  outcomeAnnotation: { outcome: "P" | "N" };
  bounds: number[];
}

export interface GameInfo {
  kind: string;
  dims: number;
  default_bounds: number[];
  description: string;
}

export interface CreateSessionBody {
  kind: string;
  bounds?: number[];
  start?: number | number[];
  cond?: string;
  mode?: Mode;
  human_role?: "proposer" | "chooser";
}

export interface Validation {
  ok: boolean;
  reason?: string;
}

export interface SubmitResult {
  ok: boolean;
  reason?: string;
  source?: "client" | "server";
  state?: SessionState;
}
