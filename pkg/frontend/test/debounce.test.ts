import { afterEach, beforeEach, describe, expect, it, vi } from "vitest";

import { debounce } from "../src/debounce.js";

describe("debounce", () => {
  beforeEach(() => vi.useFakeTimers());
  afterEach(() => vi.useRealTimers());

  it("collapses a burst of calls into the trailing one", () => {
    const calls: number[] = [];
    const f = debounce((v: number) => calls.push(v), 100);
    f(1);
    vi.advanceTimersByTime(50);
    f(2);
    vi.advanceTimersByTime(50);
    f(3);
    expect(calls).toEqual([]);
    vi.advanceTimersByTime(100);
    expect(calls).toEqual([3]);
  });

  it("fires again for well-separated calls", () => {
    const calls: number[] = [];
    const f = debounce((v: number) => calls.push(v), 100);
    f(1);
    vi.advanceTimersByTime(150);
    f(2);
    vi.advanceTimersByTime(150);
    expect(calls).toEqual([1, 2]);
  });
});
