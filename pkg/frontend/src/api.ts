import type { ViewState } from "./state.js";

export function trajectoryUrl(state: ViewState, base = ""): string {
  const q = new URLSearchParams({
    alpha: String(state.alpha),
    r: String(state.r),
    epsilon: String(state.epsilon),
    tmax: String(state.b),
    x0a: String(state.x0[0]),
    x0b: String(state.x0[1]),
  });
  return `${base}/trajectory?${q.toString()}`;
}

export function region2Url(alpha: number, base = ""): string {
  return `${base}/region2?alpha=${alpha}`;
}
