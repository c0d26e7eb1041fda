"""Model-versus-reality checks over joint score records.

The cascade model predicts acceptance rates from the two marginal
characteristics; the real cascade is an AND gate over each record's pair
of scores. This module replays that gate, measures the absolute
differences per rate in percentage points, and summarizes them with
box-plot statistics (type-7 quartiles, Tukey fences; outliers are flagged
but never removed). A per-class correlation diagnostic quantifies how far
the data is from the independence assumption the model rests on.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .dataset import SampleClass, ScoreDataset
from .errors import DomainError, EmptyClassError, EmptyInputError
from .fusion import FusedRates
from .roc import (
    MatcherCharacteristic,
    OperationalPointSpec,
    PadCharacteristic,
    ResolvedOperatingPoint,
    build_matcher_characteristic,
    build_pad_characteristic,
    resolve_operating_point,
)


@dataclass(frozen=True, slots=True)
class ModelError:
    """Absolute prediction errors, in percentage points."""

    d_fmr: float
    d_gar: float
    d_iapmr: float


@dataclass(frozen=True)
class ErrorStats:
    """Box-plot summary of an error sample (percentage points)."""

    mean: float
    std: float
    q1: float
    median: float
    q3: float
    iqr: float
    outliers: tuple[float, ...]


@dataclass(frozen=True, slots=True)
class CorrelationEntry:
    """Sample correlation between liveness and match scores in one class."""

    coefficient: float | None
    count: int
    flag: str | None = None


@dataclass(frozen=True, slots=True)
class CorrelationReport:
    genuine: CorrelationEntry
    zero_effort: CorrelationEntry
    presentation_attack: CorrelationEntry

    def entry(self, klass: SampleClass) -> CorrelationEntry:
        return {
            SampleClass.GENUINE: self.genuine,
            SampleClass.ZERO_EFFORT: self.zero_effort,
            SampleClass.PRESENTATION_ATTACK: self.presentation_attack,
        }[klass]


@dataclass(frozen=True, slots=True)
class ValidationRow:
    match_threshold: float
    predicted: FusedRates
    empirical: FusedRates
    error: ModelError


@dataclass(frozen=True, eq=False)
class ValidationResult:
    """Predicted-versus-replayed rates at every listed match threshold.

    Columns are aligned with `match_thresholds`; error columns are in
    percentage points.
    """

    point: ResolvedOperatingPoint
    match_thresholds: np.ndarray
    predicted_gar: np.ndarray
    predicted_fmr: np.ndarray
    predicted_iapmr: np.ndarray
    empirical_gar: np.ndarray
    empirical_fmr: np.ndarray
    empirical_iapmr: np.ndarray
    err_gar: np.ndarray
    err_fmr: np.ndarray
    err_iapmr: np.ndarray

    def __len__(self) -> int:
        return self.match_thresholds.size

    def rows(self) -> list[ValidationRow]:
        out = []
        for i in range(len(self)):
            out.append(
                ValidationRow(
                    match_threshold=float(self.match_thresholds[i]),
                    predicted=FusedRates(
                        float(self.predicted_gar[i]),
                        float(self.predicted_fmr[i]),
                        float(self.predicted_iapmr[i]),
                    ),
                    empirical=FusedRates(
                        float(self.empirical_gar[i]),
                        float(self.empirical_fmr[i]),
                        float(self.empirical_iapmr[i]),
                    ),
                    error=ModelError(
                        d_fmr=float(self.err_fmr[i]),
                        d_gar=float(self.err_gar[i]),
                        d_iapmr=float(self.err_iapmr[i]),
                    ),
                )
            )
        return out

    def stats(self) -> dict[str, ErrorStats]:
        return {
            "gar": error_statistics(self.err_gar),
            "fmr": error_statistics(self.err_fmr),
            "iapmr": error_statistics(self.err_iapmr),
        }

    def mean_errors(self) -> dict[str, float]:
        return {
            "gar": float(self.err_gar.mean()),
            "fmr": float(self.err_fmr.mean()),
            "iapmr": float(self.err_iapmr.mean()),
        }


def empirical_fused_rates(data: ScoreDataset, s_f_star: float, s_m_star: float) -> FusedRates:
    """Replay the AND gate: accept iff liveness > s_f_star and match > s_m_star."""
    if math.isnan(s_f_star) or math.isnan(s_m_star):
        raise DomainError("thresholds must not be NaN")
    per_class = {}
    for klass in SampleClass:
        liveness = data.liveness_of(klass)
        if liveness.size == 0:
            raise EmptyClassError(klass.value)
        match = data.match_of(klass)
        accepted = np.count_nonzero((liveness > s_f_star) & (match > s_m_star))
        per_class[klass] = accepted / liveness.size
    return FusedRates(
        gar_seq=per_class[SampleClass.GENUINE],
        fmr_seq=per_class[SampleClass.ZERO_EFFORT],
        iapmr_seq=per_class[SampleClass.PRESENTATION_ATTACK],
    )


def model_error(predicted: FusedRates, empirical: FusedRates) -> ModelError:
    """Componentwise |predicted - empirical| scaled to percentage points."""
    return ModelError(
        d_fmr=abs(predicted.fmr_seq - empirical.fmr_seq) * 100.0,
        d_gar=abs(predicted.gar_seq - empirical.gar_seq) * 100.0,
        d_iapmr=abs(predicted.iapmr_seq - empirical.iapmr_seq) * 100.0,
    )


def error_statistics(errors: Sequence[float]) -> ErrorStats:
    """Box-plot statistics of an error sample.

    Sample standard deviation uses the n-1 denominator (0 for a single
    value). Quartiles interpolate order statistics linearly at index
    h = (n-1)p. Values outside [q1 - 1.5*iqr, q3 + 1.5*iqr] are reported as
    outliers; they still participate in every other statistic.
    """
    x = np.sort(np.asarray(errors, dtype=np.float64))
    if x.size == 0:
        raise EmptyInputError("no error values to summarize")
    if np.isnan(x).any():
        raise DomainError("error values must not be NaN")
    q1, median, q3 = (float(q) for q in np.quantile(x, [0.25, 0.5, 0.75]))
    iqr = q3 - q1
    low, high = q1 - 1.5 * iqr, q3 + 1.5 * iqr
    outliers = x[(x < low) | (x > high)]
    return ErrorStats(
        mean=float(x.mean()),
        std=float(x.std(ddof=1)) if x.size > 1 else 0.0,
        q1=q1,
        median=median,
        q3=q3,
        iqr=iqr,
        outliers=tuple(float(v) for v in outliers),
    )


_FLAG_TOO_FEW = "insufficient_data"
_FLAG_CONSTANT = "constant_scores"


def independence_diagnostic(data: ScoreDataset) -> CorrelationReport:
    """Per-class sample correlation between the liveness and match scores.

    Classes with fewer than two records, or with a constant score column,
    get a flag instead of a coefficient.
    """
    entries = {}
    for klass in SampleClass:
        liveness = data.liveness_of(klass)
        match = data.match_of(klass)
        n = int(liveness.size)
        if n < 2:
            entries[klass] = CorrelationEntry(None, n, _FLAG_TOO_FEW)
            continue
        dl = liveness - liveness.mean()
        dm = match - match.mean()
        sl = float(np.sqrt((dl * dl).sum()))
        sm = float(np.sqrt((dm * dm).sum()))
        if sl == 0.0 or sm == 0.0:
            entries[klass] = CorrelationEntry(None, n, _FLAG_CONSTANT)
            continue
        r = float((dl * dm).sum() / (sl * sm))
        r = min(1.0, max(-1.0, r))
        entries[klass] = CorrelationEntry(r, n)
    return CorrelationReport(
        genuine=entries[SampleClass.GENUINE],
        zero_effort=entries[SampleClass.ZERO_EFFORT],
        presentation_attack=entries[SampleClass.PRESENTATION_ATTACK],
    )


def validate_model(data: ScoreDataset, spec: OperationalPointSpec) -> ValidationResult:
    """Predict the cascade from marginals and replay it, at every match threshold.

    Builds both characteristics from `data`, resolves the detector point,
    predicts via the product model, and replays the AND gate at the same
    thresholds. Requires joint records: a dataset with all three classes.
    """
    pad = build_pad_characteristic(data)
    matcher = build_matcher_characteristic(data)
    point = resolve_operating_point(pad, spec)
    return validate_against_point(data, matcher, point)


def validate_against_point(
    data: ScoreDataset,
    matcher: MatcherCharacteristic,
    point: ResolvedOperatingPoint,
) -> ValidationResult:
    """Same as validate_model, with the characteristic and point precomputed."""
    thresholds = matcher.thresholds
    s_f = point.threshold

    def replayed(klass: SampleClass) -> np.ndarray:
        liveness = data.liveness_of(klass)
        if liveness.size == 0:
            raise EmptyClassError(klass.value)
        match = data.match_of(klass)
        passing = np.sort(match[liveness > s_f])
        accepted = passing.size - np.searchsorted(passing, thresholds, side="right")
        return accepted / liveness.size

    empirical_gar = replayed(SampleClass.GENUINE)
    empirical_fmr = replayed(SampleClass.ZERO_EFFORT)
    empirical_iapmr = replayed(SampleClass.PRESENTATION_ATTACK)

    live_pass = 1.0 - point.bpcer
    predicted_gar = matcher.gar * live_pass
    predicted_fmr = matcher.fmr * live_pass
    predicted_iapmr = matcher.iapmr * point.apcer

    return ValidationResult(
        point=point,
        match_thresholds=thresholds,
        predicted_gar=predicted_gar,
        predicted_fmr=predicted_fmr,
        predicted_iapmr=predicted_iapmr,
        empirical_gar=empirical_gar,
        empirical_fmr=empirical_fmr,
        empirical_iapmr=empirical_iapmr,
        err_gar=np.abs(predicted_gar - empirical_gar) * 100.0,
        err_fmr=np.abs(predicted_fmr - empirical_fmr) * 100.0,
        err_iapmr=np.abs(predicted_iapmr - empirical_iapmr) * 100.0,
    )


# Reference validation-error magnitudes reported for the LivDet 2017/2019
# competition score sets at the two standard operating points, as
# (mean, std) pairs in percentage points. Reproducing them requires those
# score files and the submitted detectors, which are not bundled; the rows
# are shipped so runs on conforming score files can be compared directly.
LIVDET_REFERENCE_ERRORS: dict[str, dict[str, dict[str, tuple[float, float]]]] = {
    "apcer_01": {
        "livdet2017": {"fmr": (0.0265, 0.023), "gar": (0.9376, 0.388), "iapmr": (0.0254, 0.021)},
        "livdet2019": {"fmr": (0.0206, 0.023), "gar": (0.2911, 0.265), "iapmr": (0.0475, 0.136)},
    },
    "bpcer_01": {
        "livdet2017": {"fmr": (0.0094, 0.011), "gar": (0.1532, 0.046), "iapmr": (0.1910, 0.150)},
        "livdet2019": {"fmr": (0.0060, 0.008), "gar": (0.1330, 0.092), "iapmr": (0.0855, 0.133)},
    },
}
