"""Joint (liveness score, match score) samples and their container.

Score orientation is fixed: higher liveness score means "more live", higher
match score means "better match". Adapters for systems that emit reversed
scores must negate them before building a dataset.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Iterator

import numpy as np


class SampleClass(Enum):
    """Ground-truth class of a verification trial.

    GENUINE: live finger, correct identity claim.
    ZERO_EFFORT: live finger of an impostor, wrong identity claim.
    PRESENTATION_ATTACK: fake finger (spoof), wrong identity claim.

    There is deliberately no class for a spoof presented under a correct
    identity claim; that combination is not representable anywhere in the
    package and is rejected at ingest.
    """

    GENUINE = "genuine"
    ZERO_EFFORT = "zero_effort"
    PRESENTATION_ATTACK = "presentation_attack"

    @property
    def is_live(self) -> bool:
        return self is not SampleClass.PRESENTATION_ATTACK


LIVE_CLASSES = (SampleClass.GENUINE, SampleClass.ZERO_EFFORT)

_CLASS_CODE = {k: i for i, k in enumerate(SampleClass)}
_CODE_CLASS = tuple(SampleClass)


@dataclass(frozen=True, slots=True)
class ScoreRecord:
    """One labeled trial: class, liveness score, match score."""

    klass: SampleClass
    liveness_score: float
    match_score: float

    def __post_init__(self):
        if not isinstance(self.klass, SampleClass):
            raise ValueError(f"klass must be a SampleClass, got {self.klass!r}")
        if not (math.isfinite(self.liveness_score) and math.isfinite(self.match_score)):
            raise ValueError("scores must be finite reals")


def _frozen(a: np.ndarray) -> np.ndarray:
    a.flags.writeable = False
    return a


@dataclass(frozen=True, eq=False)
class ScoreDataset:
    """Ordered collection of score records, stored column-wise.

    Columns keep the original record order. `codes` holds one uint8 per
    record indexing into SampleClass declaration order.
    """

    name: str
    codes: np.ndarray
    liveness: np.ndarray
    match: np.ndarray

    def __post_init__(self):
        codes = np.ascontiguousarray(self.codes, dtype=np.uint8)
        liveness = np.ascontiguousarray(self.liveness, dtype=np.float64)
        match = np.ascontiguousarray(self.match, dtype=np.float64)
        if not (codes.ndim == liveness.ndim == match.ndim == 1):
            raise ValueError("dataset columns must be one-dimensional")
        if not (codes.size == liveness.size == match.size):
            raise ValueError("dataset columns must have equal length")
        if codes.size and codes.max() >= len(_CODE_CLASS):
            raise ValueError("invalid class code")
        if not (np.isfinite(liveness).all() and np.isfinite(match).all()):
            raise ValueError("scores must be finite reals")
        object.__setattr__(self, "codes", _frozen(codes))
        object.__setattr__(self, "liveness", _frozen(liveness))
        object.__setattr__(self, "match", _frozen(match))

    @classmethod
    def from_records(cls, records: Iterable[ScoreRecord], name: str = "") -> "ScoreDataset":
        records = list(records)
        codes = np.fromiter((_CLASS_CODE[r.klass] for r in records), dtype=np.uint8, count=len(records))
        liveness = np.fromiter((r.liveness_score for r in records), dtype=np.float64, count=len(records))
        match = np.fromiter((r.match_score for r in records), dtype=np.float64, count=len(records))
        return cls(name=name, codes=codes, liveness=liveness, match=match)

    @classmethod
    def from_class_arrays(
        cls,
        parts: dict[SampleClass, tuple[np.ndarray, np.ndarray]],
        name: str = "",
    ) -> "ScoreDataset":
        """Build from per-class (liveness, match) array pairs, in class order."""
        codes, liveness, match = [], [], []
        for klass in SampleClass:
            if klass not in parts:
                continue
            lv, mt = parts[klass]
            lv = np.asarray(lv, dtype=np.float64)
            mt = np.asarray(mt, dtype=np.float64)
            if lv.shape != mt.shape:
                raise ValueError("liveness and match arrays must have equal length")
            codes.append(np.full(lv.size, _CLASS_CODE[klass], dtype=np.uint8))
            liveness.append(lv)
            match.append(mt)
        if not codes:
            return cls(name=name, codes=np.empty(0, np.uint8),
                       liveness=np.empty(0), match=np.empty(0))
        return cls(
            name=name,
            codes=np.concatenate(codes),
            liveness=np.concatenate(liveness),
            match=np.concatenate(match),
        )

    def __len__(self) -> int:
        return self.codes.size

    def __iter__(self) -> Iterator[ScoreRecord]:
        return iter(self.records)

    @property
    def records(self) -> tuple[ScoreRecord, ...]:
        return tuple(
            ScoreRecord(_CODE_CLASS[c], float(l), float(m))
            for c, l, m in zip(self.codes, self.liveness, self.match)
        )

    def count(self, klass: SampleClass) -> int:
        return int(np.count_nonzero(self.codes == _CLASS_CODE[klass]))

    def class_counts(self) -> dict[str, int]:
        return {k.value: self.count(k) for k in SampleClass}

    def _mask(self, klasses: tuple[SampleClass, ...]) -> np.ndarray:
        mask = np.zeros(len(self), dtype=bool)
        for k in klasses:
            mask |= self.codes == _CLASS_CODE[k]
        return mask

    def liveness_of(self, *klasses: SampleClass) -> np.ndarray:
        return self.liveness[self._mask(klasses)]

    def match_of(self, *klasses: SampleClass) -> np.ndarray:
        return self.match[self._mask(klasses)]
