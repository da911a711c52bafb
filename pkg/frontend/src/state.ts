import type { TrajectoryDocument } from "./types.js";

// input widget bounds; values outside are clamped, never rejected
export const BOUNDS = {
  alpha: { min: 0.01, max: 0.99 },
  r: { min: 1e-6, max: 1e6 },
  epsilon: { min: -0.006, max: 0.8 },
  b: { min: 10, max: 500 },
} as const;

export interface ViewState {
  alpha: number;
  r: number;
  epsilon: number;
  b: number; // t_max; trajectories start at the service default t
  x0: [number, number];
  showMarkers: boolean;
  lastResponse: TrajectoryDocument | { error: string } | null;
}

export const DEFAULT_STATE: ViewState = {
  alpha: 0.5,
  r: 1.0,
  epsilon: 0.1,
  b: 500,
  x0: [1, 0],
  showMarkers: true,
  lastResponse: null,
};

function clampNumber(v: number, min: number, max: number, fallback: number): number {
  if (!Number.isFinite(v)) return fallback;
  return Math.min(max, Math.max(min, v));
}

export function clampViewState(partial: Partial<ViewState>, base: ViewState = DEFAULT_STATE): ViewState {
  const merged = { ...base, ...partial };
  return {
    ...merged,
    alpha: clampNumber(merged.alpha, BOUNDS.alpha.min, BOUNDS.alpha.max, base.alpha),
    r: clampNumber(merged.r, BOUNDS.r.min, BOUNDS.r.max, base.r),
    epsilon: clampNumber(merged.epsilon, BOUNDS.epsilon.min, BOUNDS.epsilon.max, base.epsilon),
    b: clampNumber(merged.b, BOUNDS.b.min, BOUNDS.b.max, base.b),
    x0: [
      clampNumber(merged.x0[0], -1e6, 1e6, base.x0[0]),
      clampNumber(merged.x0[1], -1e6, 1e6, base.x0[1]),
    ],
  };
}
