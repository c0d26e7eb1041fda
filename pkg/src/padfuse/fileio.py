"""File formats: delimited score files and JSON scenario reports.

Score files are UTF-8 CSV with header ``klass,liveness_score,match_score``;
klass is one of genuine, zero_effort, presentation_attack and the scores
are decimal literals. Every file either loads completely or fails with a
located error; there are no partial loads.

Reports are JSON objects with a ``format_version`` field, serialized
canonically (sorted keys, fixed separators, trailing newline) so equal
reports produce identical bytes. Rates are fractions; scalar summary rates
additionally carry a ``*_pct`` percentage-point rendering, and error
statistics are in percentage points throughout. Infinite thresholds are
encoded as the strings "-Infinity"/"Infinity" so payloads stay inside
standard JSON.
"""

from __future__ import annotations

import csv
import json
import math
import pathlib
from dataclasses import dataclass, field
from typing import Any

from .dataset import SampleClass, ScoreDataset, ScoreRecord
from .errors import ParseError, ReportIOError, UnknownClassError, VersionMismatchError
from .fusion import GrocCurve
from .geer import GeerSweep, WStarResult
from .roc import MatcherCharacteristic, PadCharacteristic, ResolvedOperatingPoint
from .validation import CorrelationReport, ErrorStats, ValidationResult

FORMAT_VERSION = 1

SCORE_HEADER = ("klass", "liveness_score", "match_score")

_CLASS_BY_NAME = {k.value: k for k in SampleClass}


def parse_score_rows(rows, name: str = "") -> ScoreDataset:
    """Parse an iterable of CSV rows (header first) into a dataset."""
    records: list[ScoreRecord] = []
    it = iter(rows)
    try:
        header = next(it)
    except StopIteration:
        raise ParseError(1, "empty file: expected header 'klass,liveness_score,match_score'") from None
    if tuple(h.strip() for h in header) != SCORE_HEADER:
        raise ParseError(1, f"bad header {header!r}: expected 'klass,liveness_score,match_score'")
    for lineno, row in enumerate(it, start=2):
        if not row:
            continue
        if len(row) != 3:
            raise ParseError(lineno, f"expected 3 fields, got {len(row)}")
        klass_name = row[0].strip()
        klass = _CLASS_BY_NAME.get(klass_name)
        if klass is None:
            raise UnknownClassError(lineno, klass_name)
        scores = []
        for column, text in zip(("liveness_score", "match_score"), row[1:]):
            try:
                value = float(text)
            except ValueError:
                raise ParseError(lineno, f"{column}: not a number: {text!r}") from None
            if not math.isfinite(value):
                raise ParseError(lineno, f"{column}: score must be finite, got {text!r}")
            scores.append(value)
        records.append(ScoreRecord(klass, scores[0], scores[1]))
    return ScoreDataset.from_records(records, name=name)


def load_scores(path) -> ScoreDataset:
    """Load a score CSV file; the dataset is named after the file stem."""
    path = pathlib.Path(path)
    with open(path, newline="", encoding="utf-8-sig") as fh:
        return parse_score_rows(csv.reader(fh), name=path.stem)


def save_scores(data: ScoreDataset, path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(SCORE_HEADER)
        for record in data.records:
            writer.writerow([record.klass.value, repr(record.liveness_score), repr(record.match_score)])


# --- JSON encoding helpers -------------------------------------------------

_POS_INF = "Infinity"
_NEG_INF = "-Infinity"

# Fields whose values are thresholds and may legitimately be infinite.
_THRESHOLD_FIELDS = frozenset({"threshold", "thresholds", "match_threshold", "match_thresholds", "tau_star"})


def _encode(value: Any) -> Any:
    if isinstance(value, float):
        if math.isinf(value):
            return _POS_INF if value > 0 else _NEG_INF
        return value
    if isinstance(value, dict):
        return {k: _encode(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_encode(v) for v in value]
    return value


def _decode_threshold(value: Any) -> Any:
    if value == _POS_INF:
        return math.inf
    if value == _NEG_INF:
        return -math.inf
    return value


def _decode(value: Any, key: str | None = None) -> Any:
    if isinstance(value, dict):
        return {k: _decode(v, k) for k, v in value.items()}
    if isinstance(value, list):
        if key in _THRESHOLD_FIELDS:
            return [_decode_threshold(v) for v in value]
        return [_decode(v) for v in value]
    if key in _THRESHOLD_FIELDS:
        return _decode_threshold(value)
    return value


def canonical_json(payload: Any) -> str:
    """Canonical JSON text: sorted keys, minimal separators, one trailing newline."""
    return json.dumps(_encode(payload), sort_keys=True, separators=(",", ":"), allow_nan=False) + "\n"


def decode_json(text: str) -> Any:
    return _decode(json.loads(text))


# --- domain object <-> plain dict converters --------------------------------


def _rate_pair(name: str, value: float) -> dict[str, float]:
    return {name: float(value), f"{name}_pct": float(value) * 100.0}


def point_to_dict(point: ResolvedOperatingPoint) -> dict[str, Any]:
    out: dict[str, Any] = {"threshold": float(point.threshold), "exact": bool(point.exact),
                           "warning": point.warning}
    out.update(_rate_pair("apcer", point.apcer))
    out.update(_rate_pair("bpcer", point.bpcer))
    return out


def point_from_dict(d: dict[str, Any]) -> ResolvedOperatingPoint:
    return ResolvedOperatingPoint(
        threshold=float(d["threshold"]),
        apcer=float(d["apcer"]),
        bpcer=float(d["bpcer"]),
        exact=bool(d["exact"]),
        warning=d.get("warning"),
    )


def pad_characteristic_to_dict(ch: PadCharacteristic) -> dict[str, Any]:
    return {
        "thresholds": [float(t) for t in ch.thresholds],
        "apcer": [float(v) for v in ch.apcer],
        "bpcer": [float(v) for v in ch.bpcer],
    }


def matcher_characteristic_to_dict(ch: MatcherCharacteristic) -> dict[str, Any]:
    return {
        "thresholds": [float(t) for t in ch.thresholds],
        "gar": [float(v) for v in ch.gar],
        "fmr": [float(v) for v in ch.fmr],
        "iapmr": [float(v) for v in ch.iapmr],
    }


def groc_curve_to_dict(curve: GrocCurve, kind: str) -> dict[str, Any]:
    return {
        "kind": kind,
        "w": float(curve.w),
        "pad_point": point_to_dict(curve.pad_point),
        "match_thresholds": [float(t) for t in curve.match_thresholds],
        "gar": [float(v) for v in curve.gar],
        "gfmr": [float(v) for v in curve.gfmr],
    }


def geer_sweep_to_dict(sweep: GeerSweep) -> dict[str, Any]:
    return {
        "kind": sweep.kind.value,
        "w_grid": [float(w) for w in sweep.w_grid],
        "geer_values": [float(v) for v in sweep.geer_values],
    }


def w_star_to_dict(result: WStarResult) -> dict[str, Any]:
    return {
        "crossing_kind": result.crossing_kind.value,
        "w_star": None if result.w_star is None else float(result.w_star),
    }


def error_stats_to_dict(stats: ErrorStats) -> dict[str, Any]:
    return {
        "mean": stats.mean,
        "std": stats.std,
        "q1": stats.q1,
        "median": stats.median,
        "q3": stats.q3,
        "iqr": stats.iqr,
        "outliers": list(stats.outliers),
        "units": "percentage_points",
    }


def correlation_to_dict(report: CorrelationReport) -> dict[str, Any]:
    out = {}
    for klass in SampleClass:
        entry = report.entry(klass)
        out[klass.value] = {
            "coefficient": entry.coefficient,
            "count": entry.count,
            "flag": entry.flag,
        }
    return out


def validation_to_dict(result: ValidationResult, include_rows: bool = True) -> dict[str, Any]:
    out: dict[str, Any] = {
        "point": point_to_dict(result.point),
        "stats": {name: error_stats_to_dict(s) for name, s in result.stats().items()},
        "mean_errors_pct": result.mean_errors(),
    }
    if include_rows:
        out["match_thresholds"] = [float(t) for t in result.match_thresholds]
        for name in ("gar", "fmr", "iapmr"):
            out[f"predicted_{name}"] = [float(v) for v in getattr(result, f"predicted_{name}")]
            out[f"empirical_{name}"] = [float(v) for v in getattr(result, f"empirical_{name}")]
            out[f"err_{name}_pct"] = [float(v) for v in getattr(result, f"err_{name}")]
    else:
        out["rows_omitted"] = True
    return out


# --- scenario reports --------------------------------------------------------


@dataclass(frozen=True)
class ScenarioReport:
    """One self-contained analysis result, ready for serialization.

    `inputs` summarizes what produced the outputs (dataset name and class
    counts, point spec, w values, priors); `outputs` holds plain-data
    sections keyed by section name (resolved_point, characteristics,
    fused, groc_curves, geer_sweeps, w_star, decision, validation, ...).
    """

    kind: str
    inputs: dict[str, Any] = field(default_factory=dict)
    outputs: dict[str, Any] = field(default_factory=dict)
    format_version: int = FORMAT_VERSION

    def to_dict(self) -> dict[str, Any]:
        return {
            "format_version": self.format_version,
            "kind": self.kind,
            "inputs": self.inputs,
            "outputs": self.outputs,
        }

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "ScenarioReport":
        version = d.get("format_version")
        if version != FORMAT_VERSION:
            raise VersionMismatchError(version, FORMAT_VERSION)
        return cls(
            kind=d.get("kind", ""),
            inputs=d.get("inputs", {}),
            outputs=d.get("outputs", {}),
            format_version=version,
        )


def report_to_json(report: ScenarioReport) -> str:
    return canonical_json(report.to_dict())


def write_report(report: ScenarioReport, path) -> None:
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(report_to_json(report))
    except OSError as exc:
        raise ReportIOError(f"cannot write report to {path}: {exc}") from exc


def read_report(path) -> ScenarioReport:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ReportIOError(f"cannot read report from {path}: {exc}") from exc
    try:
        payload = decode_json(text)
    except json.JSONDecodeError as exc:
        raise ReportIOError(f"malformed report in {path}: {exc}") from exc
    if not isinstance(payload, dict):
        raise ReportIOError(f"malformed report in {path}: top level must be an object")
    return ScenarioReport.from_dict(payload)
