"""Empirical operating characteristics and operating-point resolution.

Characteristics are step functions of the decision threshold. A sample
passes a threshold t iff its score is strictly greater than t, so a score
exactly at the threshold is rejected. Candidate thresholds are the unique
observed scores plus two sentinel rows at -inf (everything passes) and
+inf (everything is rejected); between listed thresholds the rate of the
greatest listed threshold <= t applies, which reproduces direct counting
for every real t.

Duplicate scores collapse into a single threshold entry: a characteristic
is a function of the threshold, not of the sample index.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple, Sequence

import numpy as np

from .dataset import LIVE_CLASSES, SampleClass, ScoreDataset
from .errors import DomainError, EmptyClassError, EmptyInputError


class PadRates(NamedTuple):
    apcer: float
    bpcer: float


class MatcherRates(NamedTuple):
    gar: float
    fmr: float
    iapmr: float


def _as_column(values, name: str) -> np.ndarray:
    a = np.ascontiguousarray(values, dtype=np.float64)
    if a.ndim != 1:
        raise ValueError(f"{name} must be one-dimensional")
    return a


def _check_rates(name: str, a: np.ndarray) -> None:
    if a.size and (np.isnan(a).any() or a.min() < 0.0 or a.max() > 1.0):
        raise ValueError(f"{name} values must lie in [0, 1]")


def _check_thresholds(t: np.ndarray) -> None:
    if t.size < 2:
        raise ValueError("a characteristic needs at least the two sentinel rows")
    if not (t[0] == -math.inf and t[-1] == math.inf):
        raise ValueError("thresholds must start at -inf and end at +inf")
    if not (np.diff(t) > 0).all():
        raise ValueError("thresholds must be strictly increasing")


def _freeze(obj, **arrays) -> None:
    for key, a in arrays.items():
        a.flags.writeable = False
        object.__setattr__(obj, key, a)


def _floor_index(thresholds: np.ndarray, t) -> np.ndarray | int:
    """Index of the greatest listed threshold <= t (step convention)."""
    t = np.asarray(t, dtype=np.float64)
    if np.isnan(t).any():
        raise DomainError("threshold query must not be NaN")
    idx = np.searchsorted(thresholds, t, side="right") - 1
    # -inf is always listed, so the floor exists for every query
    return idx


@dataclass(frozen=True, eq=False)
class PadCharacteristic:
    """APCER and BPCER of a presentation-attack detector versus its threshold.

    APCER(t) is non-increasing (raising the threshold lets fewer spoofs
    through); BPCER(t) is non-decreasing (more live samples get blocked).
    """

    thresholds: np.ndarray
    apcer: np.ndarray
    bpcer: np.ndarray

    def __post_init__(self):
        t = _as_column(self.thresholds, "thresholds")
        apcer = _as_column(self.apcer, "apcer")
        bpcer = _as_column(self.bpcer, "bpcer")
        if not (t.size == apcer.size == bpcer.size):
            raise ValueError("columns must have equal length")
        _check_thresholds(t)
        _check_rates("apcer", apcer)
        _check_rates("bpcer", bpcer)
        if (np.diff(apcer) > 0).any():
            raise ValueError("apcer must be non-increasing in threshold")
        if (np.diff(bpcer) < 0).any():
            raise ValueError("bpcer must be non-decreasing in threshold")
        if not (apcer[0] == 1.0 and bpcer[0] == 0.0 and apcer[-1] == 0.0 and bpcer[-1] == 1.0):
            raise ValueError("sentinel rows must be (-inf: apcer=1, bpcer=0) and (+inf: apcer=0, bpcer=1)")
        _freeze(self, thresholds=t, apcer=apcer, bpcer=bpcer)

    def __len__(self) -> int:
        return self.thresholds.size

    @property
    def points(self) -> list[tuple[float, float, float]]:
        return [(float(t), float(a), float(b))
                for t, a, b in zip(self.thresholds, self.apcer, self.bpcer)]

    def rates_at(self, t) -> PadRates:
        """Rates at threshold t under the step convention. Accepts arrays."""
        idx = _floor_index(self.thresholds, t)
        if np.ndim(idx) == 0:
            return PadRates(float(self.apcer[idx]), float(self.bpcer[idx]))
        return PadRates(self.apcer[idx], self.bpcer[idx])


@dataclass(frozen=True, eq=False)
class MatcherCharacteristic:
    """GAR, FMR and IAPMR of a verification matcher versus its threshold."""

    thresholds: np.ndarray
    gar: np.ndarray
    fmr: np.ndarray
    iapmr: np.ndarray

    def __post_init__(self):
        t = _as_column(self.thresholds, "thresholds")
        cols = {
            "gar": _as_column(self.gar, "gar"),
            "fmr": _as_column(self.fmr, "fmr"),
            "iapmr": _as_column(self.iapmr, "iapmr"),
        }
        _check_thresholds(t)
        for name, col in cols.items():
            if col.size != t.size:
                raise ValueError("columns must have equal length")
            _check_rates(name, col)
            if (np.diff(col) > 0).any():
                raise ValueError(f"{name} must be non-increasing in threshold")
            if not (col[0] == 1.0 and col[-1] == 0.0):
                raise ValueError("sentinel rows must be all-1 at -inf and all-0 at +inf")
        _freeze(self, thresholds=t, **cols)

    def __len__(self) -> int:
        return self.thresholds.size

    @property
    def points(self) -> list[tuple[float, float, float, float]]:
        return [(float(t), float(g), float(f), float(i))
                for t, g, f, i in zip(self.thresholds, self.gar, self.fmr, self.iapmr)]

    def rates_at(self, t) -> MatcherRates:
        idx = _floor_index(self.thresholds, t)
        if np.ndim(idx) == 0:
            return MatcherRates(float(self.gar[idx]), float(self.fmr[idx]), float(self.iapmr[idx]))
        return MatcherRates(self.gar[idx], self.fmr[idx], self.iapmr[idx])


class PointMode(Enum):
    """How the detector operating point is specified."""

    APCER_AT = "apcer_at"
    BPCER_AT = "bpcer_at"


@dataclass(frozen=True, slots=True)
class OperationalPointSpec:
    """Target constraint for the detector threshold, e.g. APCER <= 1%."""

    mode: PointMode
    target: float

    def __post_init__(self):
        if not isinstance(self.mode, PointMode):
            raise DomainError(f"mode must be a PointMode, got {self.mode!r}")
        if not (0.0 < self.target < 1.0) or math.isnan(self.target):
            raise DomainError(f"target must be strictly between 0 and 1, got {self.target!r}")


UNREACHABLE = "unreachable"


@dataclass(frozen=True, slots=True)
class ResolvedOperatingPoint:
    """A concrete detector threshold and the rates achieved there.

    `exact` is true when the constrained rate equals the target exactly at a
    listed threshold. `warning` is set to "unreachable" when only a sentinel
    threshold satisfied the constraint.
    """

    threshold: float
    apcer: float
    bpcer: float
    exact: bool
    warning: str | None = None

    @classmethod
    def pass_through(cls) -> "ResolvedOperatingPoint":
        """Marker for "no detector in the loop": everything passes the gate."""
        return cls(threshold=-math.inf, apcer=1.0, bpcer=0.0, exact=True)

    @property
    def is_pass_through(self) -> bool:
        return self.apcer == 1.0 and self.bpcer == 0.0


def build_pad_characteristic(data: ScoreDataset) -> PadCharacteristic:
    """Count the detector error rates of `data` at every distinct liveness score.

    Live samples are the genuine and zero-effort records pooled together;
    spoof samples are the presentation-attack records.

    apcer(t) = fraction of spoof records with liveness_score > t
    bpcer(t) = fraction of live records with liveness_score <= t
    """
    live = np.sort(data.liveness_of(*LIVE_CLASSES))
    fake = np.sort(data.liveness_of(SampleClass.PRESENTATION_ATTACK))
    if live.size == 0:
        raise EmptyClassError("live")
    if fake.size == 0:
        raise EmptyClassError(SampleClass.PRESENTATION_ATTACK.value)
    inner = np.unique(np.concatenate([live, fake]))
    thresholds = np.concatenate([[-math.inf], inner, [math.inf]])
    apcer = (fake.size - np.searchsorted(fake, thresholds, side="right")) / fake.size
    bpcer = np.searchsorted(live, thresholds, side="right") / live.size
    return PadCharacteristic(thresholds=thresholds, apcer=apcer, bpcer=bpcer)


def build_matcher_characteristic(data: ScoreDataset) -> MatcherCharacteristic:
    """Count the matcher acceptance rates of `data` at every distinct match score.

    gar(t), fmr(t), iapmr(t) are the fractions of genuine, zero-effort and
    presentation-attack records with match_score > t.
    """
    per_class = {}
    for klass in SampleClass:
        scores = np.sort(data.match_of(klass))
        if scores.size == 0:
            raise EmptyClassError(klass.value)
        per_class[klass] = scores
    inner = np.unique(np.concatenate(list(per_class.values())))
    thresholds = np.concatenate([[-math.inf], inner, [math.inf]])

    def accepted_fraction(scores: np.ndarray) -> np.ndarray:
        return (scores.size - np.searchsorted(scores, thresholds, side="right")) / scores.size

    return MatcherCharacteristic(
        thresholds=thresholds,
        gar=accepted_fraction(per_class[SampleClass.GENUINE]),
        fmr=accepted_fraction(per_class[SampleClass.ZERO_EFFORT]),
        iapmr=accepted_fraction(per_class[SampleClass.PRESENTATION_ATTACK]),
    )


def resolve_operating_point(pad: PadCharacteristic, spec: OperationalPointSpec) -> ResolvedOperatingPoint:
    """Pick the detector threshold that meets `spec`, conservatively.

    APCER_AT(p): the smallest listed threshold with apcer <= p, so the
    attack tolerance is never exceeded while blocking as few live samples
    as possible. BPCER_AT(p): the largest listed threshold with bpcer <= p,
    the most attack-resistant choice that still meets the convenience
    budget. If only a sentinel qualifies, the sentinel is returned with
    exact=False and warning="unreachable".
    """
    if spec.mode is PointMode.APCER_AT:
        qualifying = pad.apcer <= spec.target
        idx = int(np.argmax(qualifying))  # first hit: apcer is non-increasing
        achieved = pad.apcer[idx]
    else:
        qualifying = pad.bpcer <= spec.target
        idx = len(pad) - 1 - int(np.argmax(qualifying[::-1]))  # last hit
        achieved = pad.bpcer[idx]
    threshold = float(pad.thresholds[idx])
    unreachable = not math.isfinite(threshold)
    return ResolvedOperatingPoint(
        threshold=threshold,
        apcer=float(pad.apcer[idx]),
        bpcer=float(pad.bpcer[idx]),
        exact=bool(achieved == spec.target),
        warning=UNREACHABLE if unreachable else None,
    )


def rates_at(ch: PadCharacteristic | MatcherCharacteristic, t) -> PadRates | MatcherRates:
    """Step-convention rates of either characteristic at threshold t."""
    return ch.rates_at(t)


def average_pad_characteristics(
    characteristics: Sequence[PadCharacteristic],
    grid: Sequence[float],
) -> PadCharacteristic:
    """Pointwise mean of several detector characteristics on a shared grid.

    The inputs must already live on a common score scale; that is the
    caller's responsibility and nothing here can check it. The grid must be
    sorted and finite; duplicates are collapsed.
    """
    if len(characteristics) == 0:
        raise EmptyInputError("no characteristics to average")
    grid_arr = np.unique(np.asarray(grid, dtype=np.float64))
    if grid_arr.size == 0:
        raise EmptyInputError("empty threshold grid")
    if not np.isfinite(grid_arr).all():
        raise DomainError("grid thresholds must be finite")
    apcer = np.mean([ch.rates_at(grid_arr).apcer for ch in characteristics], axis=0)
    bpcer = np.mean([ch.rates_at(grid_arr).bpcer for ch in characteristics], axis=0)
    return PadCharacteristic(
        thresholds=np.concatenate([[-math.inf], grid_arr, [math.inf]]),
        apcer=np.concatenate([[1.0], apcer, [0.0]]),
        bpcer=np.concatenate([[0.0], bpcer, [1.0]]),
    )
