// Pure SVG chart builders. They return markup strings so they can run and
// be asserted on without a DOM. Conventions: integrated curves solid,
// individual curves dashed; the GEER panel marks w* with a vertical line.

import { DecisionResponse, GeerSweep, GrocCurve } from "./api.js";

const WIDTH = 420;
const HEIGHT = 300;
const PAD = 40;

interface Scale {
  (value: number): number;
}

function linearScale(min: number, max: number, outMin: number, outMax: number): Scale {
  const span = max - min || 1;
  return (value) => outMin + ((value - min) / span) * (outMax - outMin);
}

function polyline(xs: number[], ys: number[], sx: Scale, sy: Scale, cls: string): string {
  const points = xs
    .map((x, i) => `${sx(x).toFixed(2)},${sy(ys[i]).toFixed(2)}`)
    .join(" ");
  return `<polyline class="${cls}" fill="none" points="${points}"/>`;
}

function frame(title: string, xLabel: string, yLabel: string, body: string): string {
  return (
    `<svg viewBox="0 0 ${WIDTH} ${HEIGHT}" xmlns="http://www.w3.org/2000/svg" role="img">` +
    `<text class="title" x="${WIDTH / 2}" y="16" text-anchor="middle">${title}</text>` +
    `<rect class="plot-frame" x="${PAD}" y="24" width="${WIDTH - 2 * PAD}" height="${HEIGHT - 24 - PAD}" fill="none"/>` +
    body +
    `<text class="axis" x="${WIDTH / 2}" y="${HEIGHT - 8}" text-anchor="middle">${xLabel}</text>` +
    `<text class="axis" x="12" y="${HEIGHT / 2}" transform="rotate(-90 12 ${HEIGHT / 2})" text-anchor="middle">${yLabel}</text>` +
    `</svg>`
  );
}

function finitePoints(curve: GrocCurve): { gfmr: number[]; gar: number[] } {
  const gfmr: number[] = [];
  const gar: number[] = [];
  curve.match_thresholds.forEach((t, i) => {
    if (Number.isFinite(t)) {
      gfmr.push(curve.gfmr[i]);
      gar.push(curve.gar[i]);
    }
  });
  return { gfmr, gar };
}

export function buildGrocSvg(integrated: GrocCurve, individual: GrocCurve): string {
  const sx = linearScale(0, 1, PAD, WIDTH - PAD);
  const sy = linearScale(0, 1, HEIGHT - PAD, 24);
  const a = finitePoints(integrated);
  const b = finitePoints(individual);
  const body =
    polyline(b.gfmr, b.gar, sx, sy, "curve individual") +
    polyline(a.gfmr, a.gar, sx, sy, "curve integrated");
  return frame(`global ROC at w=${integrated.w}`, "GFMR", "GAR", body);
}

function sweepLine(sweep: GeerSweep, sx: Scale, sy: Scale): string {
  return polyline(sweep.w_grid, sweep.geer_values, sx, sy, `curve ${sweep.kind}`);
}

export function buildGeerSvg(response: DecisionResponse): string {
  const grid = response.integrated.w_grid;
  const values = response.integrated.geer_values.concat(response.individual.geer_values);
  const yMax = Math.max(...values) * 1.15 || 1;
  const sx = linearScale(grid[0], grid[grid.length - 1], PAD, WIDTH - PAD);
  const sy = linearScale(0, yMax, HEIGHT - PAD, 24);
  let body = sweepLine(response.individual, sx, sy) + sweepLine(response.integrated, sx, sy);
  const wStar = response.w_star.w_star;
  if (wStar !== null && wStar >= grid[0] && wStar <= grid[grid.length - 1]) {
    const x = sx(wStar).toFixed(2);
    body +=
      `<line class="w-star-marker" x1="${x}" y1="24" x2="${x}" y2="${HEIGHT - PAD}"/>` +
      `<text class="w-star-label" x="${x}" y="36" text-anchor="start"> w*=${wStar.toFixed(4)}</text>`;
  }
  return frame("GEER vs attack probability", "w", "GEER", body);
}
