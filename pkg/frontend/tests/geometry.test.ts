import { describe, expect, it } from "vitest";

import {
  collinear,
  validateAp3Proposal,
  validateHeapProposal,
  validateLineProposal,
  validateProposal,
  validateWythoffProposal,
} from "../src/geometry.js";

describe("heap proposals", () => {
  it("accepts the d/2d pair", () => {
    expect(validateHeapProposal(8, [5, 2]).ok).toBe(true);
    expect(validateHeapProposal(8, [2, 5]).ok).toBe(true);
    expect(validateHeapProposal(8, [4, 0]).ok).toBe(true);
  });
  it("rejects the wrong spacing with a reason", () => {
    const v = validateHeapProposal(8, [5, 1]);
    expect(v.ok).toBe(false);
    expect(v.reason).toMatch(/condition fails/);
  });
  it("rejects off-board targets", () => {
    expect(validateHeapProposal(8, [9, 8]).reason).toMatch(/off-board/);
    expect(validateHeapProposal(8, [-1, 3]).reason).toMatch(/off-board/);
  });
  it("rejects the wrong count", () => {
    expect(validateHeapProposal(8, [5]).ok).toBe(false);
  });
});

describe("line-nim proposals", () => {
  const bounds = [12, 12];
  it("accepts the collinear pair from the opening position", () => {
    expect(validateLineProposal(bounds, "max", [6, 8], [[3, 2], [5, 6]]).ok).toBe(true);
  });
  it("rejects the non-collinear configuration", () => {
    const v = validateLineProposal(bounds, "max", [6, 8], [[4, 3], [5, 6]]);
    expect(v.ok).toBe(false);
    expect(v.reason).toMatch(/not collinear/);
  });
  it("accepts Nim singles and rejects diagonal-ish singles", () => {
    expect(validateLineProposal(bounds, "max", [6, 8], [[6, 3]]).ok).toBe(true);
    expect(validateLineProposal(bounds, "max", [6, 8], [[5, 7]]).ok).toBe(false);
  });
  it("enforces dominance under max mode", () => {
    const v = validateLineProposal(bounds, "max", [6, 8], [[3, 9], [5, 6]]);
    expect(v.reason).toMatch(/mode violation/);
  });
  it("collinearity helper agrees with brute slope check", () => {
    expect(collinear([3, 2], [5, 6], [6, 8])).toBe(true);
    expect(collinear([4, 3], [5, 6], [6, 8])).toBe(false);
  });
});

describe("wythoff proposals", () => {
  const bounds = [8, 8];
  it("accepts nim and equal-gap moves", () => {
    expect(validateWythoffProposal(bounds, "max", [5, 3], [[2, 3]]).ok).toBe(true);
    expect(validateWythoffProposal(bounds, "max", [5, 3], [[3, 1]]).ok).toBe(true);
  });
  it("rejects unequal gaps", () => {
    const v = validateWythoffProposal(bounds, "max", [5, 3], [[3, 2]]);
    expect(v.reason).toMatch(/condition fails/);
  });
});

describe("ap(3) grid proposals", () => {
  const bounds = [13, 13];
  it("accepts progressions in both coordinates", () => {
    expect(validateAp3Proposal(bounds, "max", [2, 3], [[0, 1], [1, 2]]).ok).toBe(true);
  });
  it("rejects a mismatched pair", () => {
    expect(validateAp3Proposal(bounds, "max", [2, 3], [[0, 1], [1, 1]]).ok).toBe(false);
  });
});

describe("dispatch", () => {
  it("routes by kind", () => {
    expect(validateProposal("ap3-board", "max", [40], 8, [4, 0]).ok).toBe(true);
    expect(validateProposal("line-nim", "max", [12, 12], [6, 8], [[4, 3], [5, 6]]).ok).toBe(false);
  });
});
