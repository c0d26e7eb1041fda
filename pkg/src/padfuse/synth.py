"""Deterministic synthetic joint-score datasets.

Every model claim in this package can be exercised at desk scale without
real biometric data: each trial class draws (liveness, match) pairs from a
bivariate Gaussian with a configurable correlation, so the independence
assumption behind the cascade model can be switched on and off at will.

Per-class streams are derived from the master seed with the class index
mixed into the spawn key, so changing one class's count never perturbs the
other classes' draws. Scores are unbounded reals on purpose: thresholds
are free reals, and clamping would distort the configured correlation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .dataset import SampleClass, ScoreDataset
from .errors import ConfigError, UnknownPresetError


@dataclass(frozen=True, slots=True)
class ClassDistribution:
    """Bivariate Gaussian score population for one trial class."""

    liveness_mean: float
    liveness_std: float
    match_mean: float
    match_std: float
    rho: float = 0.0
    count: int = 1000

    def __post_init__(self):
        if not (self.liveness_std > 0.0 and self.match_std > 0.0):
            raise ConfigError("score standard deviations must be positive")
        if math.isnan(self.rho) or abs(self.rho) > 1.0:
            raise ConfigError("rho must lie in [-1, 1]")
        if self.count < 1:
            raise ConfigError("count must be at least 1")


@dataclass(frozen=True, slots=True)
class SynthConfig:
    genuine: ClassDistribution
    zero_effort: ClassDistribution
    presentation_attack: ClassDistribution
    seed: int = 0

    def __post_init__(self):
        if not (0 <= int(self.seed) < 2**64):
            raise ConfigError("seed must be an unsigned 64-bit integer")

    def distribution(self, klass: SampleClass) -> ClassDistribution:
        return {
            SampleClass.GENUINE: self.genuine,
            SampleClass.ZERO_EFFORT: self.zero_effort,
            SampleClass.PRESENTATION_ATTACK: self.presentation_attack,
        }[klass]


def synthesize(cfg: SynthConfig, name: str = "synth") -> ScoreDataset:
    """Draw the configured dataset; identical config gives bit-identical output."""
    parts: dict[SampleClass, tuple[np.ndarray, np.ndarray]] = {}
    for index, klass in enumerate(SampleClass):
        dist = cfg.distribution(klass)
        rng = np.random.default_rng(np.random.SeedSequence(entropy=int(cfg.seed), spawn_key=(index,)))
        z = rng.standard_normal((2, dist.count))
        liveness = dist.liveness_mean + dist.liveness_std * z[0]
        match = dist.match_mean + dist.match_std * (
            dist.rho * z[0] + math.sqrt(1.0 - dist.rho * dist.rho) * z[1]
        )
        parts[klass] = (liveness, match)
    return ScoreDataset.from_class_arrays(parts, name=name)


# Frozen preset table. Liveness distributions are shared by the two live
# classes; attack match scores sit near the genuine ones because a spoof
# replicates the targeted finger.
#
#   well-separated      detector separates live from spoof by ~7 sigma: a
#                       threshold with apcer <= 1% leaves bpcer near zero.
#   hard-gelatine-like  spoof liveness overlaps the live population, as with
#                       gelatine casts; holding apcer at 1% drives bpcer
#                       well above 20%.
#   weak-pad            spoof liveness shifted toward live across the board,
#                       raising apcer at every threshold.
_PRESETS: dict[str, SynthConfig] = {
    "well-separated": SynthConfig(
        genuine=ClassDistribution(0.75, 0.06, 0.78, 0.07, rho=0.0, count=2000),
        zero_effort=ClassDistribution(0.75, 0.06, 0.30, 0.08, rho=0.0, count=2000),
        presentation_attack=ClassDistribution(0.25, 0.07, 0.66, 0.09, rho=0.0, count=2000),
        seed=1201,
    ),
    "hard-gelatine-like": SynthConfig(
        genuine=ClassDistribution(0.62, 0.10, 0.78, 0.07, rho=0.0, count=2000),
        zero_effort=ClassDistribution(0.62, 0.10, 0.30, 0.08, rho=0.0, count=2000),
        presentation_attack=ClassDistribution(0.50, 0.12, 0.70, 0.09, rho=0.0, count=2000),
        seed=1202,
    ),
    "weak-pad": SynthConfig(
        genuine=ClassDistribution(0.70, 0.10, 0.78, 0.07, rho=0.0, count=2000),
        zero_effort=ClassDistribution(0.70, 0.10, 0.30, 0.08, rho=0.0, count=2000),
        presentation_attack=ClassDistribution(0.45, 0.12, 0.66, 0.09, rho=0.0, count=2000),
        seed=1203,
    ),
}

PRESET_NAMES: tuple[str, ...] = tuple(_PRESETS)


def preset(name: str) -> SynthConfig:
    """Return the fixed config for a documented preset name."""
    try:
        return _PRESETS[name]
    except KeyError:
        raise UnknownPresetError(name, PRESET_NAMES) from None


def preset_dataset(name: str, seed: int | None = None) -> ScoreDataset:
    """Synthesize a preset, optionally overriding its seed."""
    cfg = preset(name)
    if seed is not None:
        cfg = replace(cfg, seed=seed)
    return synthesize(cfg, name=name)


def passthrough_demo(name: str = "passthrough-demo") -> ScoreDataset:
    """Tiny dataset whose detector never satisfies a small BPCER budget.

    All live samples share one liveness score, so resolving BPCER <= p for
    p < 1 falls back to the pass-through sentinel: the served cascade then
    equals the matcher alone, which makes the integrated and individual
    curves coincide at w=0. Useful for eyeballing that identity in clients.
    """

    def column(spec: list[tuple[int, float]]) -> np.ndarray:
        return np.concatenate([np.full(n, v) for n, v in spec])

    return ScoreDataset.from_class_arrays(
        {
            SampleClass.GENUINE: (column([(3, 0.5)]), np.array([0.9, 0.8, 0.7])),
            SampleClass.ZERO_EFFORT: (column([(3, 0.5)]), np.array([0.2, 0.3, 0.1])),
            SampleClass.PRESENTATION_ATTACK: (
                np.array([0.7, 0.9, 0.8]),
                np.array([0.6, 0.65, 0.55]),
            ),
        },
        name=name,
    )


def wstar_demo(name: str = "wstar-demo") -> ScoreDataset:
    """Handcrafted discrete dataset with a known break-even attack probability.

    With the detector resolved at BPCER <= 20% (threshold 0.3: apcer 0.25,
    bpcer 0.20), the integrated GEER is 0.20 for every w while the matcher
    alone yields 0.15 + 0.35 w, so the sweeps cross at w* = 1/7. Useful as
    a served fixture for exercising the decision workflow end to end.
    """

    def column(spec: list[tuple[int, float]]) -> np.ndarray:
        return np.concatenate([np.full(n, v) for n, v in spec])

    genuine = (
        column([(20, 0.3), (80, 0.5)]),          # liveness
        column([(25, 2.0), (75, 4.0)]),          # match
    )
    zero_effort = (
        column([(20, 0.3), (80, 0.5)]),
        column([(75, 1.0), (20, 2.0), (5, 4.0)]),
    )
    presentation_attack = (
        column([(75, 0.1), (25, 0.7)]),
        column([(20, 1.0), (5, 2.0), (75, 4.0)]),
    )
    return ScoreDataset.from_class_arrays(
        {
            SampleClass.GENUINE: genuine,
            SampleClass.ZERO_EFFORT: zero_effort,
            SampleClass.PRESENTATION_ATTACK: presentation_attack,
        },
        name=name,
    )
