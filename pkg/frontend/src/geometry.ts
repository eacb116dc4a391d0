/** Client-side legality pre-checks mirroring the server's move rules.
 * They catch obvious mistakes before a request is made; the server verdict
 * always wins. */

import type { Mode, Validation } from "./types.js";

const ok: Validation = { ok: true };
const no = (reason: string): Validation => ({ ok: false, reason });

/** One-heap pairs game: the two targets must remove d and 2d tokens. */
export function validateHeapProposal(heap: number, targets: number[]): Validation {
  if (targets.length !== 2) return no("pick exactly two target heaps");
  const [a, b] = [...targets].sort((p, q) => q - p);
  if (b < 0 || a >= heap) return no("off-board: targets must lie in [0, heap)");
  const d1 = heap - a;
  const d2 = heap - b;
  if (d1 < 1 || d2 !== 2 * d1) return no("condition fails: remove d and 2d tokens");
  return ok;
}

export function collinear(p: number[], q: number[], r: number[]): boolean {
  return (q[0] - p[0]) * (r[1] - p[1]) === (r[0] - p[0]) * (q[1] - p[1]);
}

export function isNimMove(pos: number[], t: number[]): boolean {
  const dropX = t[0] < pos[0] && t[1] === pos[1];
  const dropY = t[1] < pos[1] && t[0] === pos[0];
  return dropX || dropY;
}

function dominated(pos: number[], t: number[]): boolean {
  return t[0] < pos[0] && t[1] < pos[1];
}

function inBounds(bounds: number[], t: number[]): boolean {
  return t[0] >= 0 && t[1] >= 0 && t[0] <= bounds[0] && t[1] <= bounds[1];
}

function modeCheck(mode: Mode, pos: number[], members: number[][]): Validation {
  if (mode === "unrestricted") {
    if (!members.every((m) => m[0] < pos[0]))
      return no("mode violation: first coordinates must decrease");
    return ok;
  }
  if (!members.every((m) => dominated(pos, m)))
    return no("mode violation: targets must sit below and left of the stone");
  if (mode === "order") {
    for (const a of members)
      for (const b of members)
        if (a[0] < b[0] && a[1] >= b[1])
          return no("mode violation: targets must be ordered consistently");
  }
  return ok;
}

/** line-nim: a Nim move, or two stones collinear with the current one. */
export function validateLineProposal(
  bounds: number[],
  mode: Mode,
  pos: number[],
  targets: number[][],
): Validation {
  for (const t of targets) if (!inBounds(bounds, t)) return no("off-board");
  if (targets.length === 1) {
    return isNimMove(pos, targets[0]) ? ok : no("condition fails: single targets must be Nim moves");
  }
  if (targets.length !== 2) return no("pick one Nim target or two collinear stones");
  const m = modeCheck(mode, pos, targets);
  if (!m.ok) return m;
  const [a, b] = targets;
  if (a[0] === b[0] && a[1] === b[1]) return no("condition fails: stones must be distinct");
  if (!collinear(a, b, pos)) return no("condition fails: not collinear");
  return ok;
}

/** wythoff: a Nim move or an equal-gap move (x-d, y-d) ... or for the
 * unrestricted variant any target keeping the gap, with x decreasing. */
export function validateWythoffProposal(
  bounds: number[],
  mode: Mode,
  pos: number[],
  targets: number[][],
): Validation {
  for (const t of targets) if (!inBounds(bounds, t)) return no("off-board");
  if (targets.length !== 1) return no("pick exactly one target");
  const t = targets[0];
  if (isNimMove(pos, t)) return ok;
  if (t[0] >= pos[0]) return no("mode violation: first coordinate must decrease");
  if (pos[0] - t[0] === pos[1] - t[1]) return ok;
  return no("condition fails: not a Nim move or an equal-gap move");
}

/** custom ap(3) boards: two targets whose coordinates form progressions
 * with the current stone, slot by slot. */
export function validateAp3Proposal(
  bounds: number[],
  mode: Mode,
  pos: number[],
  targets: number[][],
): Validation {
  for (const t of targets) if (!inBounds(bounds, t)) return no("off-board");
  if (targets.length !== 2) return no("pick exactly two targets");
  const m = modeCheck(mode, pos, targets);
  if (!m.ok) return m;
  const pts = [...targets, pos];
  for (const order of [
    [0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0],
  ]) {
    const [p, q, r] = order.map((i) => pts[i]);
    const xs = p[0] + r[0] === 2 * q[0] && new Set([p[0], q[0], r[0]]).size > 1;
    const ys = p[1] + r[1] === 2 * q[1] && new Set([p[1], q[1], r[1]]).size > 1;
    if (xs && ys) return ok;
  }
  return no("condition fails: coordinates do not form progressions");
}

export function validateProposal(
  kind: string,
  mode: Mode,
  bounds: number[],
  position: number | number[],
  targets: number[] | number[][],
): Validation {
  if (kind === "ap3-board")
    return validateHeapProposal(position as number, targets as number[]);
  const pos = position as number[];
  const tg = targets as number[][];
  if (kind === "line-nim") return validateLineProposal(bounds, mode, pos, tg);
  if (kind === "wythoff") return validateWythoffProposal(bounds, mode, pos, tg);
  if (kind === "custom") return validateAp3Proposal(bounds, mode, pos, tg);
  return ok; // unknown kinds defer entirely to the server
}
