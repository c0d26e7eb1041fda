// Typed client for the padfuse HTTP API. All numbers shown anywhere in the
// UI originate from these response payloads; nothing is recomputed here.

export interface DatasetInfo {
  id: string;
  name: string;
  class_counts: Record<string, number>;
}

export interface ResolvedPoint {
  threshold: number;
  apcer: number;
  apcer_pct: number;
  bpcer: number;
  bpcer_pct: number;
  exact: boolean;
  warning: string | null;
}

export interface GrocCurve {
  kind: "integrated" | "individual";
  w: number;
  pad_point: ResolvedPoint;
  match_thresholds: number[];
  gar: number[];
  gfmr: number[];
}

export interface GrocResponse {
  dataset_id: string;
  resolved_point: ResolvedPoint;
  integrated: GrocCurve;
  individual: GrocCurve;
}

export interface GeerSweep {
  kind: "integrated" | "individual";
  w_grid: number[];
  geer_values: number[];
}

export interface WStar {
  crossing_kind: "crossing" | "integrated_always_better" | "individual_always_better";
  w_star: number | null;
}

export interface DecisionResponse {
  dataset_id: string;
  resolved_point: ResolvedPoint;
  integrated: GeerSweep;
  individual: GeerSweep;
  w_star: WStar;
  w_hat: number;
  decision: "embed" | "do_not_embed";
}

export interface PointSpec {
  mode: "apcer_at" | "bpcer_at";
  target: number;
}

export interface ApiError {
  status: number;
  code: string;
  message: string;
}

export class FacadeError extends Error {
  constructor(public readonly info: ApiError) {
    super(info.message);
  }
}

// The facade encodes infinite thresholds as "Infinity"/"-Infinity" strings
// to stay inside standard JSON; convert them back where thresholds live.
const THRESHOLD_FIELDS = new Set(["threshold", "thresholds", "match_threshold", "match_thresholds", "tau_star"]);

function reviveThresholds(value: unknown, key?: string): unknown {
  if (Array.isArray(value)) {
    if (key !== undefined && THRESHOLD_FIELDS.has(key)) {
      return value.map((v) => (typeof v === "string" ? Number(v) : v));
    }
    return value.map((v) => reviveThresholds(v));
  }
  if (value !== null && typeof value === "object") {
    const out: Record<string, unknown> = {};
    for (const [k, v] of Object.entries(value as Record<string, unknown>)) {
      out[k] = reviveThresholds(v, k);
    }
    return out;
  }
  if (key !== undefined && THRESHOLD_FIELDS.has(key) && typeof value === "string") {
    return Number(value);
  }
  return value;
}

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class FacadeClient {
  constructor(
    private readonly baseUrl: string,
    private readonly fetchImpl: FetchLike = (url, init) => fetch(url, init),
  ) {}

  private async request<T>(path: string, body?: unknown): Promise<T> {
    const init: RequestInit = body === undefined
      ? {}
      : {
          method: "POST",
          headers: { "Content-Type": "application/json" },
          body: JSON.stringify(body),
        };
    const response = await this.fetchImpl(this.baseUrl + path, init);
    const payload = reviveThresholds(await response.json()) as Record<string, unknown>;
    if (!response.ok) {
      throw new FacadeError({
        status: response.status,
        code: String(payload.code ?? "error"),
        message: String(payload.message ?? response.statusText),
      });
    }
    return payload as T;
  }

  datasets(): Promise<{ datasets: DatasetInfo[] }> {
    return this.request("/datasets");
  }

  groc(datasetId: string, point: PointSpec, w: number): Promise<GrocResponse> {
    return this.request("/groc", { dataset_id: datasetId, point, w });
  }

  decision(
    datasetId: string,
    point: PointSpec,
    wGrid: { start: number; stop: number; step: number },
    wHat: number,
  ): Promise<DecisionResponse> {
    return this.request("/decision", { dataset_id: datasetId, point, w_grid: wGrid, w_hat: wHat });
  }
}
