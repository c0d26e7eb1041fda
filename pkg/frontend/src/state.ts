// Explorer state machine. The store owns the control values, debounces
// facade round-trips, and guards against out-of-order responses with
// per-channel monotonic sequence numbers. Every displayed value is taken
// verbatim from the last applied facade response; on errors the last good
// data is retained and a non-blocking error banner is set.

import { DecisionResponse, FacadeClient, GrocResponse, PointSpec } from "./api.js";

export interface Controls {
  datasetId: string | null;
  pointMode: "apcer_at" | "bpcer_at";
  pointTarget: number;
  w: number; // curve slider, default range [0, 0.75]
  wHat: number; // designer's estimated attack probability
  trackW: boolean; // when set, moving w also moves wHat
  wGrid: { start: number; stop: number; step: number }; // GEER panel, default [0, 0.30]
}

export type Banner = "embed" | "do_not_embed" | null;

export interface ExplorerState {
  controls: Controls;
  groc: GrocResponse | null;
  decision: DecisionResponse | null;
  banner: Banner;
  error: string | null;
  inFlight: number;
}

export const DEFAULT_CONTROLS: Controls = {
  datasetId: null,
  pointMode: "bpcer_at",
  pointTarget: 0.01,
  w: 0.25,
  wHat: 0.25,
  trackW: true,
  wGrid: { start: 0.0, stop: 0.3, step: 0.01 },
};

export interface StoreOptions {
  debounceMs?: number;
  onChange?: (state: ExplorerState) => void;
}

export class ExplorerStore {
  private state: ExplorerState = {
    controls: { ...DEFAULT_CONTROLS },
    groc: null,
    decision: null,
    banner: null,
    error: null,
    inFlight: 0,
  };

  private readonly debounceMs: number;
  private readonly onChange: (state: ExplorerState) => void;
  private timer: ReturnType<typeof setTimeout> | null = null;
  private nextSeq = 1;
  // last sequence number applied per response channel; older ones are stale
  private applied = { groc: 0, decision: 0 };
  private settled: Promise<void> = Promise.resolve();
  private settledResolve: (() => void) | null = null;

  constructor(private readonly client: FacadeClient, options: StoreOptions = {}) {
    this.debounceMs = options.debounceMs ?? 150;
    this.onChange = options.onChange ?? (() => {});
  }

  snapshot(): ExplorerState {
    return this.state;
  }

  /** Resolves once every scheduled and in-flight request has been applied. */
  idle(): Promise<void> {
    return this.settled;
  }

  applyControls(change: Partial<Controls>): void {
    const controls = { ...this.state.controls, ...change };
    if (controls.trackW && "w" in change && !("wHat" in change)) {
      controls.wHat = controls.w;
    }
    this.state = { ...this.state, controls };
    this.emit();
    this.schedule();
  }

  private emit(): void {
    this.onChange(this.state);
  }

  private schedule(): void {
    if (this.state.controls.datasetId === null) {
      return;
    }
    this.beginSettle();
    if (this.timer !== null) {
      clearTimeout(this.timer);
    }
    this.timer = setTimeout(() => {
      this.timer = null;
      void this.issue();
    }, this.debounceMs);
  }

  private beginSettle(): void {
    if (this.settledResolve === null) {
      this.settled = new Promise((resolve) => {
        this.settledResolve = resolve;
      });
    }
  }

  private finishSettleIfIdle(): void {
    if (this.state.inFlight === 0 && this.timer === null && this.settledResolve !== null) {
      const resolve = this.settledResolve;
      this.settledResolve = null;
      resolve();
    }
  }

  private async issue(): Promise<void> {
    const { controls } = this.state;
    if (controls.datasetId === null) {
      this.finishSettleIfIdle();
      return;
    }
    const point: PointSpec = { mode: controls.pointMode, target: controls.pointTarget };
    const seq = this.nextSeq++;
    this.state = { ...this.state, inFlight: this.state.inFlight + 2 };
    this.emit();

    const grocPromise = this.client
      .groc(controls.datasetId, point, controls.w)
      .then((groc) => {
        if (seq > this.applied.groc) {
          this.applied.groc = seq;
          this.state = { ...this.state, groc, error: null };
        }
      })
      .catch((err) => {
        this.state = { ...this.state, error: String(err instanceof Error ? err.message : err) };
      });

    const decisionPromise = this.client
      .decision(controls.datasetId, point, controls.wGrid, controls.wHat)
      .then((decision) => {
        if (seq > this.applied.decision) {
          this.applied.decision = seq;
          // the banner is the facade's verdict, verbatim
          this.state = { ...this.state, decision, banner: decision.decision, error: null };
        }
      })
      .catch((err) => {
        this.state = { ...this.state, error: String(err instanceof Error ? err.message : err) };
      });

    await Promise.allSettled([grocPromise, decisionPromise]);
    this.state = { ...this.state, inFlight: this.state.inFlight - 2 };
    this.emit();
    this.finishSettleIfIdle();
  }
}
