// View model: the exact strings and numbers the page shows, derived only
// by formatting fields of the last applied facade responses. Pulled out of
// main.ts so a headless driver can assert on rendered values without a DOM.

import { buildGeerSvg, buildGrocSvg } from "./charts.js";
import { ExplorerState } from "./state.js";

export interface RenderedView {
  bannerText: string;
  bannerClass: "embed" | "do-not-embed" | "none";
  apcerPct: number | null;
  bpcerPct: number | null;
  pointExact: boolean | null;
  pointWarning: string | null;
  wStarText: string;
  decision: string | null;
  errorText: string | null;
  grocSvg: string;
  geerSvg: string;
}

export function render(state: ExplorerState): RenderedView {
  const point = state.decision?.resolved_point ?? state.groc?.resolved_point ?? null;
  const wStar = state.decision?.w_star ?? null;
  let wStarText = "-";
  if (wStar !== null) {
    wStarText = wStar.w_star !== null ? wStar.w_star.toFixed(6) : wStar.crossing_kind.replaceAll("_", " ");
  }
  return {
    bannerText:
      state.banner === null ? "awaiting data" : state.banner === "embed" ? "EMBED" : "DO NOT EMBED",
    bannerClass: state.banner === null ? "none" : state.banner === "embed" ? "embed" : "do-not-embed",
    apcerPct: point ? point.apcer_pct : null,
    bpcerPct: point ? point.bpcer_pct : null,
    pointExact: point ? point.exact : null,
    pointWarning: point ? point.warning : null,
    wStarText,
    decision: state.decision?.decision ?? null,
    errorText: state.error,
    grocSvg: state.groc ? buildGrocSvg(state.groc.integrated, state.groc.individual) : "",
    geerSvg: state.decision ? buildGeerSvg(state.decision) : "",
  };
}
