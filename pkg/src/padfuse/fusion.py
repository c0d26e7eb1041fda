"""Closed-form rates of the detector+matcher cascade.

A trial is accepted only when both stages accept (AND gate), and the two
stage scores are treated as independent given the trial class. Under that
assumption the cascade rates factor into products of the stage rates:

    gar_seq   = gar   * (1 - bpcer)
    fmr_seq   = fmr   * (1 - bpcer)
    iapmr_seq = iapmr * apcer

The formulas are the same whichever stage runs first, so there is a single
composition function. All rates are fractions in [0, 1]; percentage points
appear only at reporting boundaries.

`gfmr` mixes the two impostor acceptance rates by the prior probability w
that an impostor trial is a presentation attack rather than a zero-effort
attempt; `acceptance_rate` further mixes in the genuine prior.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DomainError
from .roc import MatcherCharacteristic, ResolvedOperatingPoint


def _unit(name: str, value: float) -> float:
    value = float(value)
    if math.isnan(value) or not (0.0 <= value <= 1.0):
        raise DomainError(f"{name} must lie in [0, 1], got {value!r}")
    return value


@dataclass(frozen=True, slots=True)
class FusedRates:
    """Acceptance rates of the cascade at one (matcher, detector) operating pair."""

    gar_seq: float
    fmr_seq: float
    iapmr_seq: float


@dataclass(frozen=True, slots=True)
class GrocPoint:
    match_threshold: float
    gar: float
    gfmr: float


@dataclass(frozen=True, eq=False)
class GrocCurve:
    """GAR versus global FMR as the match threshold sweeps.

    Fixed detector operating point, fixed attack probability w. Both rate
    columns are non-increasing along increasing match threshold.
    """

    w: float
    pad_point: ResolvedOperatingPoint
    match_thresholds: np.ndarray
    gar: np.ndarray
    gfmr: np.ndarray

    def __post_init__(self):
        t = np.ascontiguousarray(self.match_thresholds, dtype=np.float64)
        gar = np.ascontiguousarray(self.gar, dtype=np.float64)
        gfmr_col = np.ascontiguousarray(self.gfmr, dtype=np.float64)
        if not (t.size == gar.size == gfmr_col.size):
            raise ValueError("curve columns must have equal length")
        if not (np.diff(t) > 0).all():
            raise ValueError("match thresholds must be strictly increasing")
        for name, col in (("gar", gar), ("gfmr", gfmr_col)):
            if col.size and (np.isnan(col).any() or col.min() < 0.0 or col.max() > 1.0):
                raise ValueError(f"{name} values must lie in [0, 1]")
            if (np.diff(col) > 0).any():
                raise ValueError(f"{name} must be non-increasing along the threshold sweep")
        for key, col in (("match_thresholds", t), ("gar", gar), ("gfmr", gfmr_col)):
            col.flags.writeable = False
            object.__setattr__(self, key, col)

    def __len__(self) -> int:
        return self.match_thresholds.size

    @property
    def points(self) -> list[GrocPoint]:
        return [GrocPoint(float(t), float(g), float(f))
                for t, g, f in zip(self.match_thresholds, self.gar, self.gfmr)]


def compose_sequential(matcher_rates: Sequence[float], pad_rates: Sequence[float]) -> FusedRates:
    """Cascade rates from one matcher rate triple and one detector rate pair.

    matcher_rates: (gar, fmr, iapmr); pad_rates: (apcer, bpcer).
    """
    gar, fmr, iapmr = matcher_rates
    apcer, bpcer = pad_rates
    gar, fmr, iapmr = _unit("gar", gar), _unit("fmr", fmr), _unit("iapmr", iapmr)
    apcer, bpcer = _unit("apcer", apcer), _unit("bpcer", bpcer)
    live_pass = 1.0 - bpcer
    return FusedRates(
        gar_seq=gar * live_pass,
        fmr_seq=fmr * live_pass,
        iapmr_seq=iapmr * apcer,
    )


def gfmr(fused: FusedRates, w: float) -> float:
    """Global false match rate: fmr_seq and iapmr_seq mixed by the attack prior w."""
    w = _unit("w", w)
    return fused.fmr_seq * (1.0 - w) + fused.iapmr_seq * w


def acceptance_rate(fused: FusedRates, w: float, p_genuine: float) -> float:
    """Overall acceptance probability given the genuine prior and attack prior."""
    p_genuine = _unit("p_genuine", p_genuine)
    return fused.gar_seq * p_genuine + gfmr(fused, w) * (1.0 - p_genuine)


def groc_curve(
    matcher: MatcherCharacteristic,
    pad_point: ResolvedOperatingPoint,
    w: float,
) -> GrocCurve:
    """Cascade curve over every listed matcher threshold at a fixed detector point.

    Pointwise identical to calling compose_sequential and gfmr per threshold.
    """
    w = _unit("w", w)
    apcer = _unit("apcer", pad_point.apcer)
    live_pass = 1.0 - _unit("bpcer", pad_point.bpcer)
    gar_seq = matcher.gar * live_pass
    fmr_seq = matcher.fmr * live_pass
    iapmr_seq = matcher.iapmr * apcer
    return GrocCurve(
        w=w,
        pad_point=pad_point,
        match_thresholds=matcher.thresholds,
        gar=gar_seq,
        gfmr=fmr_seq * (1.0 - w) + iapmr_seq * w,
    )


def individual_groc_curve(matcher: MatcherCharacteristic, w: float) -> GrocCurve:
    """Curve of the matcher alone; its global FMR still mixes FMR and IAPMR by w."""
    return groc_curve(matcher, ResolvedOperatingPoint.pass_through(), w)
