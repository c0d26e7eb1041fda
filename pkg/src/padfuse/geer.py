"""Global equal error rate analysis and the embed/don't-embed decision.

The cascade plus attack prior w turns verification into a binary problem
with error rates GFMR (false accepts, mixed by w) and 1-GAR (false
rejects). The global EER of a curve is their average at the listed match
threshold where they differ least. Sweeping that value over w for the
integrated system and for the matcher alone, the first crossing w* of the
two sweeps is the break-even attack probability: at estimated attack
probabilities at or above w*, embedding the detector pays off.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

import numpy as np

from .errors import DomainError, EmptyCurveError, GridMismatchError
from .fusion import GrocCurve, groc_curve, individual_groc_curve
from .roc import MatcherCharacteristic, ResolvedOperatingPoint


class SweepKind(Enum):
    INTEGRATED = "integrated"
    INDIVIDUAL = "individual"


class CrossingKind(Enum):
    CROSSING = "crossing"
    INTEGRATED_ALWAYS_BETTER = "integrated_always_better"
    INDIVIDUAL_ALWAYS_BETTER = "individual_always_better"


class EmbedDecision(Enum):
    EMBED = "embed"
    DO_NOT_EMBED = "do_not_embed"


@dataclass(frozen=True, slots=True)
class GeerResult:
    """Equal error rate of one curve and the threshold realizing it."""

    geer: float
    tau_star: float
    gfmr_at_tau: float
    fnr_at_tau: float


@dataclass(frozen=True, eq=False)
class GeerSweep:
    """GEER evaluated on a grid of attack probabilities."""

    kind: SweepKind
    w_grid: np.ndarray
    geer_values: np.ndarray

    def __post_init__(self):
        grid = np.ascontiguousarray(self.w_grid, dtype=np.float64)
        values = np.ascontiguousarray(self.geer_values, dtype=np.float64)
        if grid.size != values.size:
            raise ValueError("w_grid and geer_values must have equal length")
        if grid.size == 0:
            raise ValueError("sweep grid must be non-empty")
        if np.isnan(grid).any() or grid.min() < 0.0 or grid.max() > 1.0:
            raise DomainError("w grid values must lie in [0, 1]")
        if not (np.diff(grid) > 0).all():
            raise ValueError("w grid must be strictly increasing")
        if np.isnan(values).any() or values.min() < 0.0 or values.max() > 1.0:
            raise ValueError("geer values must lie in [0, 1]")
        for key, col in (("w_grid", grid), ("geer_values", values)):
            col.flags.writeable = False
            object.__setattr__(self, key, col)

    def __len__(self) -> int:
        return self.w_grid.size


@dataclass(frozen=True, slots=True)
class WStarResult:
    """Outcome of comparing the integrated and individual GEER sweeps."""

    crossing_kind: CrossingKind
    w_star: float | None = None

    def __post_init__(self):
        has = self.w_star is not None
        if has != (self.crossing_kind is CrossingKind.CROSSING):
            raise ValueError("w_star must be present exactly when the sweeps cross")


def geer(curve: GrocCurve) -> GeerResult:
    """GEER of one curve: search listed thresholds only, ties to the smallest.

    tau_star minimizes |gfmr(t) - (1 - gar(t))|; the returned value is the
    mean of the two error rates at tau_star.
    """
    if len(curve) == 0:
        raise EmptyCurveError("cannot take the equal error rate of an empty curve")
    fnr = 1.0 - curve.gar
    i = int(np.argmin(np.abs(curve.gfmr - fnr)))  # argmin takes the first, i.e. smallest threshold
    return GeerResult(
        geer=float((curve.gfmr[i] + fnr[i]) / 2.0),
        tau_star=float(curve.match_thresholds[i]),
        gfmr_at_tau=float(curve.gfmr[i]),
        fnr_at_tau=float(fnr[i]),
    )


def _check_grid(w_grid: Sequence[float]) -> np.ndarray:
    grid = np.asarray(w_grid, dtype=np.float64)
    if grid.ndim != 1 or grid.size == 0:
        raise DomainError("w grid must be a non-empty one-dimensional sequence")
    return grid


def geer_sweep(
    matcher: MatcherCharacteristic,
    pad_point: ResolvedOperatingPoint,
    w_grid: Sequence[float],
) -> GeerSweep:
    """GEER of the integrated system at each w on the grid."""
    grid = _check_grid(w_grid)
    values = [geer(groc_curve(matcher, pad_point, float(w))).geer for w in grid]
    return GeerSweep(kind=SweepKind.INTEGRATED, w_grid=grid, geer_values=np.asarray(values))


def individual_eer_sweep(matcher: MatcherCharacteristic, w_grid: Sequence[float]) -> GeerSweep:
    """GEER of the matcher alone at each w on the grid."""
    grid = _check_grid(w_grid)
    values = [geer(individual_groc_curve(matcher, float(w))).geer for w in grid]
    return GeerSweep(kind=SweepKind.INDIVIDUAL, w_grid=grid, geer_values=np.asarray(values))


def find_w_star(integrated: GeerSweep, individual: GeerSweep) -> WStarResult:
    """First break-even attack probability of two sweeps on the same grid.

    Scans d(w) = integrated - individual in increasing w. An exact zero at
    a grid point is a crossing there; a sign change between adjacent points
    is resolved by linear interpolation. Without any crossing the verdict
    is whichever system is better everywhere.
    """
    if integrated.w_grid.size != individual.w_grid.size or not np.array_equal(
        integrated.w_grid, individual.w_grid
    ):
        raise GridMismatchError("sweeps must share an identical w grid")
    grid = integrated.w_grid
    d = integrated.geer_values - individual.geer_values
    for i in range(grid.size):
        if d[i] == 0.0:
            return WStarResult(CrossingKind.CROSSING, w_star=float(grid[i]))
        if i + 1 < grid.size and (d[i] > 0.0) != (d[i + 1] > 0.0) and d[i + 1] != 0.0:
            w0 = grid[i] + d[i] * (grid[i + 1] - grid[i]) / (d[i] - d[i + 1])
            return WStarResult(CrossingKind.CROSSING, w_star=float(w0))
    if (d > 0.0).all():
        return WStarResult(CrossingKind.INDIVIDUAL_ALWAYS_BETTER)
    return WStarResult(CrossingKind.INTEGRATED_ALWAYS_BETTER)


def embed_decision(w_star: WStarResult, w_hat: float) -> EmbedDecision:
    """Embed the detector iff the estimated attack probability reaches w*."""
    if math.isnan(w_hat) or not (0.0 <= w_hat <= 1.0):
        raise DomainError(f"w_hat must lie in [0, 1], got {w_hat!r}")
    if w_star.crossing_kind is CrossingKind.CROSSING:
        return EmbedDecision.EMBED if w_star.w_star <= w_hat else EmbedDecision.DO_NOT_EMBED
    if w_star.crossing_kind is CrossingKind.INTEGRATED_ALWAYS_BETTER:
        return EmbedDecision.EMBED
    return EmbedDecision.DO_NOT_EMBED
