"""Render report data to figure files.

Rendering is opt-in from the CLI (``--plots DIR``); reports themselves stay
plain data. Conventions: integrated curves draw solid, individual curves
dashed; sentinel rows at infinite thresholds are dropped before plotting.
"""

from __future__ import annotations

import math

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .fusion import GrocCurve
from .geer import GeerSweep, SweepKind, WStarResult
from .roc import MatcherCharacteristic, PadCharacteristic


def _finite(thresholds: np.ndarray, *columns: np.ndarray):
    mask = np.isfinite(thresholds)
    return (thresholds[mask],) + tuple(col[mask] for col in columns)


def plot_characteristics(pad: PadCharacteristic, matcher: MatcherCharacteristic, path) -> None:
    fig, (ax_pad, ax_match) = plt.subplots(1, 2, figsize=(9, 3.4))

    t, apcer, bpcer = _finite(pad.thresholds, pad.apcer, pad.bpcer)
    ax_pad.step(t, apcer, where="post", label="APCER")
    ax_pad.step(t, bpcer, where="post", label="BPCER")
    ax_pad.set_xlabel("liveness threshold")
    ax_pad.set_ylabel("rate")
    ax_pad.set_title("detector")
    ax_pad.legend()

    t, gar, fmr, iapmr = _finite(matcher.thresholds, matcher.gar, matcher.fmr, matcher.iapmr)
    ax_match.step(t, gar, where="post", label="GAR")
    ax_match.step(t, fmr, where="post", label="FMR")
    ax_match.step(t, iapmr, where="post", label="IAPMR")
    ax_match.set_xlabel("match threshold")
    ax_match.set_title("matcher")
    ax_match.legend()

    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def plot_groc(curves: list[tuple[str, GrocCurve]], path) -> None:
    """GROC overlay; `curves` pairs a kind label ("integrated"/"individual") per curve."""
    fig, ax = plt.subplots(figsize=(5.2, 4.2))
    for kind, curve in curves:
        _, gar, gfmr = _finite(curve.match_thresholds, curve.gar, curve.gfmr)
        style = "-" if kind == "integrated" else "--"
        ax.plot(gfmr, gar, style, label=f"{kind} w={curve.w:g}")
    ax.set_xlabel("GFMR")
    ax.set_ylabel("GAR")
    ax.set_title("global ROC")
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def plot_geer(sweeps: list[GeerSweep], w_star: WStarResult | None, path) -> None:
    fig, ax = plt.subplots(figsize=(5.2, 4.2))
    for sweep in sweeps:
        style = "-" if sweep.kind is SweepKind.INTEGRATED else "--"
        ax.plot(sweep.w_grid, sweep.geer_values, style, label=sweep.kind.value)
    if w_star is not None and w_star.w_star is not None and math.isfinite(w_star.w_star):
        ax.axvline(w_star.w_star, color="gray", linewidth=0.8)
        ax.annotate(f"w* = {w_star.w_star:.4f}", (w_star.w_star, ax.get_ylim()[1] * 0.95),
                    fontsize=8, rotation=90, va="top")
    ax.set_xlabel("attack probability w")
    ax.set_ylabel("GEER")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def plot_error_box(errors: dict[str, np.ndarray], path) -> None:
    """Box plot of the per-rate validation errors, in percentage points."""
    fig, ax = plt.subplots(figsize=(5.2, 4.2))
    labels = list(errors)
    ax.boxplot([errors[name] for name in labels], tick_labels=[name.upper() for name in labels])
    ax.set_ylabel("absolute error (percentage points)")
    ax.set_title("model vs replayed cascade")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
