import { region2Url, trajectoryUrl } from "./api.js";
import { debounce } from "./debounce.js";
import { renderDocument, regionBandText } from "./render.js";
import { RequestSequencer } from "./sequencer.js";
import { clampViewState, DEFAULT_STATE, ViewState } from "./state.js";
import type { TrajectoryDocument } from "./types.js";

const API_BASE = ""; // same origin; the service enables CORS for dev hosts

async function fetchJson(url: string): Promise<unknown> {
  const resp = await fetch(url);
  if (!resp.ok) {
    let detail = `HTTP ${resp.status}`;
    try {
      const body = (await resp.json()) as { error?: string; detail?: string };
      if (body.error) detail = `${body.error}: ${body.detail ?? ""}`;
    } catch {
      // non-JSON error body: keep the status line
    }
    throw new Error(detail);
  }
  return resp.json();
}

export function setup(root: Document): void {
  let state: ViewState = { ...DEFAULT_STATE };
  const sequencer = new RequestSequencer(fetchJson);
  const regionCache = new Map<number, string>();

  const plot = root.getElementById("plot")!;
  const banner = root.getElementById("banner")!;
  const bandLabel = root.getElementById("band")!;

  async function refresh(): Promise<void> {
    const res = await sequencer.request<TrajectoryDocument>(trajectoryUrl(state, API_BASE));
    if (res.stale) return; // newer inputs already in flight
    if (res.error !== undefined || res.value === undefined) {
      banner.textContent = res.error ?? "empty response";
      banner.hidden = false;
      return;
    }
    banner.hidden = true;
    state.lastResponse = res.value;
    plot.innerHTML = renderDocument(res.value, { showMarkers: state.showMarkers });
    if (!regionCache.has(state.alpha)) {
      try {
        const info = (await fetchJson(region2Url(state.alpha, API_BASE))) as {
          region: { name: string; interval?: [number, number] };
        };
        regionCache.set(state.alpha, regionBandText(info));
      } catch {
        regionCache.set(state.alpha, "region band unavailable");
      }
    }
    bandLabel.textContent = regionCache.get(state.alpha) ?? "";
  }

  const refreshDebounced = debounce(() => void refresh(), 250);

  function bindNumber(id: string, key: "alpha" | "r" | "epsilon" | "b"): void {
    const input = root.getElementById(id) as HTMLInputElement;
    input.value = String(state[key]);
    input.addEventListener("input", () => {
      state = clampViewState({ [key]: Number(input.value) }, state);
      input.value = String(state[key]);
      refreshDebounced();
    });
  }

  bindNumber("alpha", "alpha");
  bindNumber("r", "r");
  bindNumber("epsilon", "epsilon");
  bindNumber("b", "b");
  const markers = root.getElementById("markers") as HTMLInputElement;
  markers.checked = state.showMarkers;
  markers.addEventListener("change", () => {
    state = { ...state, showMarkers: markers.checked };
    refreshDebounced();
  });

  void refresh();
}

if (typeof document !== "undefined" && document.getElementById("plot")) {
  setup(document);
}
