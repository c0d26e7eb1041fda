// Browser wiring: bind the controls to an ExplorerStore and paint the view
// model into the page on every state change.

import { FacadeClient } from "./api.js";
import { DEFAULT_CONTROLS, ExplorerStore } from "./state.js";
import { render } from "./view.js";

const apiBase =
  new URLSearchParams(window.location.search).get("api") ?? "http://127.0.0.1:8765";

const client = new FacadeClient(apiBase);

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

const datasetSelect = el<HTMLSelectElement>("dataset");
const modeSelect = el<HTMLSelectElement>("point-mode");
const targetInput = el<HTMLInputElement>("point-target");
const wSlider = el<HTMLInputElement>("w-slider");
const wValue = el<HTMLSpanElement>("w-value");
const wHatSlider = el<HTMLInputElement>("w-hat-slider");
const wHatValue = el<HTMLSpanElement>("w-hat-value");
const trackToggle = el<HTMLInputElement>("track-w");
const banner = el<HTMLDivElement>("banner");
const chips = el<HTMLDivElement>("point-chips");
const wStarOut = el<HTMLSpanElement>("w-star");
const errorBox = el<HTMLDivElement>("error");
const grocBox = el<HTMLDivElement>("groc-chart");
const geerBox = el<HTMLDivElement>("geer-chart");

const store = new ExplorerStore(client, {
  onChange(state) {
    const view = render(state);
    banner.textContent = view.bannerText;
    banner.className = `banner ${view.bannerClass}`;
    wStarOut.textContent = view.wStarText;
    if (view.apcerPct !== null && view.bpcerPct !== null) {
      const exact = view.pointExact ? "exact" : "nearest";
      const warn = view.pointWarning ? ` (${view.pointWarning})` : "";
      chips.textContent =
        `APCER ${view.apcerPct.toFixed(2)}% | BPCER ${view.bpcerPct.toFixed(2)}% | ${exact}${warn}`;
    } else {
      chips.textContent = "-";
    }
    errorBox.textContent = view.errorText ?? "";
    errorBox.hidden = view.errorText === null;
    grocBox.innerHTML = view.grocSvg;
    geerBox.innerHTML = view.geerSvg;
    wValue.textContent = state.controls.w.toFixed(2);
    wHatValue.textContent = state.controls.wHat.toFixed(2);
    if (state.controls.trackW) {
      wHatSlider.value = String(state.controls.wHat);
    }
  },
});

datasetSelect.addEventListener("change", () => {
  store.applyControls({ datasetId: datasetSelect.value });
});
modeSelect.addEventListener("change", () => {
  store.applyControls({ pointMode: modeSelect.value as "apcer_at" | "bpcer_at" });
});
targetInput.addEventListener("change", () => {
  const target = Number(targetInput.value);
  if (Number.isFinite(target) && target > 0 && target < 1) {
    store.applyControls({ pointTarget: target });
  }
});
wSlider.addEventListener("input", () => {
  store.applyControls({ w: Number(wSlider.value) });
});
wHatSlider.addEventListener("input", () => {
  store.applyControls({ wHat: Number(wHatSlider.value), trackW: false });
  trackToggle.checked = false;
});
trackToggle.addEventListener("change", () => {
  store.applyControls({ trackW: trackToggle.checked });
});

async function boot(): Promise<void> {
  targetInput.value = String(DEFAULT_CONTROLS.pointTarget);
  const { datasets } = await client.datasets();
  datasetSelect.replaceChildren(
    ...datasets.map((d) => {
      const option = document.createElement("option");
      option.value = d.id;
      option.textContent = `${d.id} (${Object.values(d.class_counts).reduce((a, b) => a + b, 0)} records)`;
      return option;
    }),
  );
  if (datasets.length > 0) {
    datasetSelect.value = datasets[0].id;
    store.applyControls({ datasetId: datasets[0].id });
  }
}

boot().catch((err) => {
  errorBox.hidden = false;
  errorBox.textContent = `cannot reach the API at ${apiBase}: ${err}`;
});
