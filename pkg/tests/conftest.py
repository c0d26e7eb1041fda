import math

import numpy as np
import pytest

from padfuse.dataset import SampleClass, ScoreDataset, ScoreRecord
from padfuse.roc import MatcherCharacteristic, PadCharacteristic

INF = math.inf


def make_pad(points):
    """PadCharacteristic from finite (threshold, apcer, bpcer) rows plus sentinels."""
    t, apcer, bpcer = zip(*points)
    return PadCharacteristic(
        thresholds=np.concatenate([[-INF], t, [INF]]),
        apcer=np.concatenate([[1.0], apcer, [0.0]]),
        bpcer=np.concatenate([[0.0], bpcer, [1.0]]),
    )


def make_matcher(points):
    """MatcherCharacteristic from finite (threshold, gar, fmr, iapmr) rows plus sentinels."""
    t, gar, fmr, iapmr = zip(*points)
    return MatcherCharacteristic(
        thresholds=np.concatenate([[-INF], t, [INF]]),
        gar=np.concatenate([[1.0], gar, [0.0]]),
        fmr=np.concatenate([[1.0], fmr, [0.0]]),
        iapmr=np.concatenate([[1.0], iapmr, [0.0]]),
    )


def random_matcher(rng, max_points=20):
    """Random valid matcher characteristic (monotone columns, sentinels)."""
    n = int(rng.integers(1, max_points + 1))
    thresholds = np.sort(rng.choice(np.arange(-50, 51), size=n, replace=False)).astype(float)
    cols = [np.sort(rng.uniform(0.0, 1.0, size=n))[::-1] for _ in range(3)]
    return make_matcher(list(zip(thresholds, *cols)))


def random_pad(rng, max_points=20):
    n = int(rng.integers(1, max_points + 1))
    thresholds = np.sort(rng.choice(np.arange(-50, 51), size=n, replace=False)).astype(float)
    apcer = np.sort(rng.uniform(0.0, 1.0, size=n))[::-1]
    bpcer = np.sort(rng.uniform(0.0, 1.0, size=n))
    return make_pad(list(zip(thresholds, apcer, bpcer)))


def dataset_from_scores(genuine, zero_effort, attack, name="test"):
    """Dataset from per-class (liveness, match) pair lists."""
    records = []
    for klass, pairs in (
        (SampleClass.GENUINE, genuine),
        (SampleClass.ZERO_EFFORT, zero_effort),
        (SampleClass.PRESENTATION_ATTACK, attack),
    ):
        for liveness, match in pairs:
            records.append(ScoreRecord(klass, float(liveness), float(match)))
    return ScoreDataset.from_records(records, name=name)


@pytest.fixture
def rng():
    return np.random.default_rng(0xC0FFEE)
