/** Pure view-model: turns a session controller into cell descriptors the
 * DOM layer renders directly.  Stones mirror the server state; selectable
 * cells are exactly those appearing in the server's legal proposals. */

import type { BoardSession, Cell } from "./session.js";
import type { Phase } from "./types.js";

export interface CellView {
  cell: Cell;
  stone: boolean;
  selectable: boolean;
  staged: boolean;
  overlay: boolean;
}

export interface BoardView {
  kind: string;
  dims: number;
  bounds: number[];
  phase: Phase;
  winner: string | null;
  outcome: "P" | "N";
  message: string;
  cells: CellView[];
  pendingProposal: unknown[] | null;
  truncated: boolean;
}

function cellKey(c: Cell): string {
  return typeof c === "number" ? String(c) : `${c[0]},${c[1]}`;
}

export function render(sess: BoardSession): BoardView {
  const st = sess.state;
  const selectable = new Set<string>();
  if (st.phase === "propose") {
    for (const prop of st.legalProposals) {
      for (const t of prop as Cell[]) selectable.add(cellKey(t));
    }
  }
  const stagedKeys = new Set(sess.staged.map(cellKey));
  const overlayKeys = new Set(
    (sess.overlayOn ? sess.overlayCells ?? [] : []).map((c) => cellKey(c as Cell)),
  );
  const cells: CellView[] = [];
  if (sess.dims === 1) {
    const heap = st.position as number;
    for (let x = 0; x <= st.bounds[0]; x++) {
      cells.push({
        cell: x,
        stone: x === heap,
        selectable: selectable.has(String(x)),
        staged: stagedKeys.has(String(x)),
        overlay: false,
      });
    }
  } else {
    const [px, py] = st.position as number[];
    for (let y = st.bounds[1]; y >= 0; y--) {
      for (let x = 0; x <= st.bounds[0]; x++) {
        const key = `${x},${y}`;
        cells.push({
          cell: [x, y],
          stone: x === px && y === py,
          selectable: selectable.has(key),
          staged: stagedKeys.has(key),
          overlay: overlayKeys.has(key),
        });
      }
    }
  }
  let message: string;
  if (st.winner) message = `game over: ${st.winner} wins`;
  else if (st.phase === "propose") message = "your move: stage a proposal";
  else message = "the engine proposed: pick a target";
  if (sess.lastError) message = `${sess.lastError} — ${message}`;
  return {
    kind: st.kind,
    dims: sess.dims,
    bounds: st.bounds,
    phase: st.phase,
    winner: st.winner,
    outcome: st.outcomeAnnotation.outcome,
    message,
    cells,
    pendingProposal: st.pendingProposal,
    truncated: st.truncated,
  };
}
