export interface Sample {
  t: number;
  x: number;
  y: number;
}

export interface SingularPointEntry {
  kind: "cusp" | "double" | "multiple";
  x: number;
  y: number;
  params: number[];
  tangent_jump?: number;
}

export interface RegionInfo {
  name: string;
  delta1?: number;
  delta2?: number;
  boundary?: number;
  interval?: [number, number];
}

export interface TrajectoryDocument {
  schema_version: string;
  alpha: number;
  eigenvalue: Record<string, number>;
  x0: number[];
  samples: Sample[];
  singular_points: SingularPointEntry[];
  region: RegionInfo;
  provenance: Record<string, string>;
}
