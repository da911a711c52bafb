import { describe, expect, it } from "vitest";

import { BOUNDS, clampViewState, DEFAULT_STATE } from "../src/state.js";

describe("clampViewState", () => {
  it("keeps in-range values untouched", () => {
    const s = clampViewState({ alpha: 0.3, r: 0.5, epsilon: 0.029, b: 500 });
    expect(s.alpha).toBe(0.3);
    expect(s.r).toBe(0.5);
    expect(s.epsilon).toBe(0.029);
    expect(s.b).toBe(500);
  });

  it("clamps alpha into (0, 1)", () => {
    expect(clampViewState({ alpha: 1.5 }).alpha).toBe(BOUNDS.alpha.max);
    expect(clampViewState({ alpha: -0.2 }).alpha).toBe(BOUNDS.alpha.min);
    expect(clampViewState({ alpha: 0 }).alpha).toBe(BOUNDS.alpha.min);
  });

  it("clamps epsilon to [-0.006, 0.8]", () => {
    expect(clampViewState({ epsilon: -1 }).epsilon).toBe(-0.006);
    expect(clampViewState({ epsilon: 2 }).epsilon).toBe(0.8);
  });

  it("clamps b to [10, 500]", () => {
    expect(clampViewState({ b: 1 }).b).toBe(10);
    expect(clampViewState({ b: 9999 }).b).toBe(500);
  });

  it("keeps r positive", () => {
    expect(clampViewState({ r: -3 }).r).toBeGreaterThan(0);
  });

  it("replaces non-finite input with the previous value", () => {
    const base = { ...DEFAULT_STATE, alpha: 0.42 };
    expect(clampViewState({ alpha: Number.NaN }, base).alpha).toBe(0.42);
    expect(clampViewState({ b: Number.POSITIVE_INFINITY }, base).b).toBe(base.b);
  });
});
