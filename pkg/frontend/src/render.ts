import type { SingularPointEntry, TrajectoryDocument } from "./types.js";

// phase-plane geometry: both axes share one scale so intersections and
// angles are not distorted
export interface RenderOptions {
  size: number; // longer side in px
  showMarkers: boolean;
}

const DEFAULTS: RenderOptions = { size: 600, showMarkers: true };

function fmt(v: number): string {
  return Number(v.toPrecision(6)).toString();
}

function markerSvg(p: SingularPointEntry, cx: number, cy: number, r: number): string {
  if (p.kind === "cusp") {
    const d = `M ${fmt(cx)} ${fmt(cy - r)} L ${fmt(cx + r)} ${fmt(cy)} L ${fmt(cx)} ${fmt(cy + r)} L ${fmt(cx - r)} ${fmt(cy)} Z`;
    return `<path class="marker cusp" d="${d}" fill="#000"/>`;
  }
  if (p.kind === "double") {
    return `<circle class="marker double" cx="${fmt(cx)}" cy="${fmt(cy)}" r="${fmt(r * 0.8)}" fill="none" stroke="#000" stroke-width="1.5"/>`;
  }
  return `<rect class="marker multiple" x="${fmt(cx - r * 0.8)}" y="${fmt(cy - r * 0.8)}" width="${fmt(1.6 * r)}" height="${fmt(1.6 * r)}" fill="none" stroke="#000" stroke-width="1.5"/>`;
}

export function renderDocument(doc: TrajectoryDocument, options?: Partial<RenderOptions>): string {
  const opts = { ...DEFAULTS, ...options };
  const xs = doc.samples.map((s) => s.x);
  const ys = doc.samples.map((s) => s.y);
  for (const p of doc.singular_points) {
    xs.push(p.x);
    ys.push(p.y);
  }
  if (xs.length === 0) throw new Error("document has no geometry");
  let xLo = Math.min(...xs);
  let xHi = Math.max(...xs);
  let yLo = Math.min(...ys);
  let yHi = Math.max(...ys);
  const xSpan = Math.max(xHi - xLo, 1e-12);
  const ySpan = Math.max(yHi - yLo, 1e-12);
  xLo -= 0.05 * xSpan;
  xHi += 0.05 * xSpan;
  yLo -= 0.05 * ySpan;
  yHi += 0.05 * ySpan;
  const scale = opts.size / Math.max(xHi - xLo, yHi - yLo);
  const w = (xHi - xLo) * scale;
  const h = (yHi - yLo) * scale;
  const toX = (x: number) => (x - xLo) * scale;
  const toY = (y: number) => (yHi - y) * scale; // flip: math orientation
  const parts: string[] = [
    `<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 ${fmt(w)} ${fmt(h)}" width="${fmt(w)}" height="${fmt(h)}">`,
  ];
  if (doc.samples.length > 1) {
    const pts = doc.samples.map((s) => `${fmt(toX(s.x))},${fmt(toY(s.y))}`).join(" ");
    parts.push(`<polyline fill="none" stroke="#1f77b4" stroke-width="1.2" points="${pts}"/>`);
  }
  if (opts.showMarkers) {
    const mr = 0.012 * opts.size;
    for (const p of doc.singular_points) {
      parts.push(markerSvg(p, toX(p.x), toY(p.y), mr));
    }
  }
  parts.push("</svg>");
  return parts.join("\n");
}

export function regionBandText(doc: { region: { name: string; interval?: [number, number] } }): string {
  const r = doc.region;
  if (!r.interval) return `region ${r.name}`;
  return `region ${r.name}: angle band [${fmt(r.interval[0])}, ${fmt(r.interval[1])}] rad`;
}
