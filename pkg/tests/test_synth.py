import dataclasses
import hashlib

import numpy as np
import pytest

from padfuse.dataset import SampleClass
from padfuse.errors import ConfigError, UnknownPresetError
from padfuse.roc import (
    OperationalPointSpec,
    PointMode,
    build_matcher_characteristic,
    build_pad_characteristic,
    resolve_operating_point,
)
from padfuse.synth import (
    ClassDistribution,
    SynthConfig,
    preset,
    preset_dataset,
    synthesize,
    wstar_demo,
)

N = 10_000


def dist(liveness_mean, match_mean, rho=0.0, count=N, liveness_std=0.1, match_std=0.1):
    return ClassDistribution(liveness_mean, liveness_std, match_mean, match_std, rho=rho, count=count)


def basic_config(seed=42, rho=0.0, count=N):
    return SynthConfig(
        genuine=dist(0.7, 0.75, rho, count),
        zero_effort=dist(0.7, 0.25, rho, count),
        presentation_attack=dist(0.3, 0.6, rho, count),
        seed=seed,
    )


def digest(data):
    h = hashlib.sha256()
    h.update(data.codes.tobytes())
    h.update(data.liveness.tobytes())
    h.update(data.match.tobytes())
    return h.hexdigest()


def sample_corr(x, y):
    return float(np.corrcoef(x, y)[0, 1])


class TestSynthesize:
    def test_deterministic(self):
        a = synthesize(basic_config())
        b = synthesize(basic_config())
        assert digest(a) == digest(b)

    def test_distinct_seeds_differ(self):
        seen = {digest(synthesize(basic_config(seed=s, count=100))) for s in range(20)}
        assert len(seen) == 20

    def test_zero_rho_sample_correlation_bound(self):
        data = synthesize(basic_config(rho=0.0))
        for klass in SampleClass:
            r = sample_corr(data.liveness_of(klass), data.match_of(klass))
            assert abs(r) <= 3.0 / np.sqrt(N)

    def test_separable_matcher_has_near_zero_eer(self):
        cfg = SynthConfig(
            genuine=dist(0.7, 0.9, liveness_std=0.1, match_std=0.02),
            zero_effort=dist(0.7, 0.1, liveness_std=0.1, match_std=0.02),
            presentation_attack=dist(0.3, 0.5, liveness_std=0.1, match_std=0.02),
            seed=7,
        )
        m = build_matcher_characteristic(synthesize(cfg))
        eer = np.min((m.fmr + (1.0 - m.gar)) / 2.0)
        assert eer < 0.01

    def test_moments_converge(self):
        cfg = basic_config(seed=11)
        data = synthesize(cfg)
        for klass in SampleClass:
            d = cfg.distribution(klass)
            tol_l = 4.0 * d.liveness_std / np.sqrt(d.count)
            tol_m = 4.0 * d.match_std / np.sqrt(d.count)
            assert abs(data.liveness_of(klass).mean() - d.liveness_mean) < tol_l
            assert abs(data.match_of(klass).mean() - d.match_mean) < tol_m
            assert abs(data.liveness_of(klass).std(ddof=1) - d.liveness_std) < tol_l
            assert abs(data.match_of(klass).std(ddof=1) - d.match_std) < tol_m

    def test_per_class_streams_are_independent(self):
        base = synthesize(basic_config())
        # change one class's rho: the other classes' draws are bit-identical
        cfg = basic_config()
        cfg = dataclasses.replace(
            cfg, presentation_attack=dataclasses.replace(cfg.presentation_attack, rho=0.9)
        )
        shifted = synthesize(cfg)
        for klass in (SampleClass.GENUINE, SampleClass.ZERO_EFFORT):
            assert np.array_equal(base.liveness_of(klass), shifted.liveness_of(klass))
            assert np.array_equal(base.match_of(klass), shifted.match_of(klass))
        # rho feeds only the match column: attack liveness is untouched too
        assert np.array_equal(
            base.liveness_of(SampleClass.PRESENTATION_ATTACK),
            shifted.liveness_of(SampleClass.PRESENTATION_ATTACK),
        )

    def test_count_change_does_not_perturb_other_classes(self):
        base = synthesize(basic_config())
        cfg = basic_config()
        cfg = dataclasses.replace(cfg, zero_effort=dataclasses.replace(cfg.zero_effort, count=17))
        shifted = synthesize(cfg)
        for klass in (SampleClass.GENUINE, SampleClass.PRESENTATION_ATTACK):
            assert np.array_equal(base.liveness_of(klass), shifted.liveness_of(klass))
            assert np.array_equal(base.match_of(klass), shifted.match_of(klass))

    def test_rho_is_realized(self):
        data = synthesize(basic_config(rho=0.8))
        for klass in SampleClass:
            r = sample_corr(data.liveness_of(klass), data.match_of(klass))
            assert r == pytest.approx(0.8, abs=0.05)

    def test_config_validation(self):
        with pytest.raises(ConfigError):
            ClassDistribution(0.5, 0.0, 0.5, 0.1)
        with pytest.raises(ConfigError):
            ClassDistribution(0.5, 0.1, 0.5, 0.1, rho=1.5)
        with pytest.raises(ConfigError):
            ClassDistribution(0.5, 0.1, 0.5, 0.1, count=0)
        with pytest.raises(ConfigError):
            SynthConfig(dist(0, 0), dist(0, 0), dist(0, 0), seed=-1)


class TestPresets:
    def test_well_separated_detector_quality(self):
        data = preset_dataset("well-separated")
        pad = build_pad_characteristic(data)
        point = resolve_operating_point(pad, OperationalPointSpec(PointMode.APCER_AT, 0.01))
        assert point.apcer <= 0.01
        assert point.bpcer <= 0.05
        assert point.warning is None

    def test_hard_material_forces_high_bpcer(self):
        data = preset_dataset("hard-gelatine-like")
        pad = build_pad_characteristic(data)
        point = resolve_operating_point(pad, OperationalPointSpec(PointMode.APCER_AT, 0.01))
        assert point.bpcer >= 0.2

    def test_weak_pad_raises_apcer_everywhere(self):
        weak = build_pad_characteristic(preset_dataset("weak-pad"))
        strong = build_pad_characteristic(preset_dataset("well-separated"))
        grid = np.linspace(0.0, 1.0, 50)
        apcer_weak = weak.rates_at(grid).apcer
        apcer_strong = strong.rates_at(grid).apcer
        # dominance up to the finite-sample noise floor in the saturated tails,
        # and by a wide margin across the operating region
        assert (apcer_weak >= apcer_strong - 0.005).all()
        central = (grid >= 0.3) & (grid <= 0.6)
        assert (apcer_weak[central] >= apcer_strong[central] + 0.05).all()

    def test_unknown_preset(self):
        with pytest.raises(UnknownPresetError):
            preset("nonexistent")

    def test_presets_are_fixed(self):
        assert preset("well-separated") == preset("well-separated")
        assert digest(preset_dataset("weak-pad")) == digest(preset_dataset("weak-pad"))


class TestWstarDemo:
    def test_shape(self):
        data = wstar_demo()
        assert len(data) == 300
        assert data.class_counts() == {"genuine": 100, "zero_effort": 100, "presentation_attack": 100}

    def test_resolved_point(self):
        pad = build_pad_characteristic(wstar_demo())
        point = resolve_operating_point(pad, OperationalPointSpec(PointMode.BPCER_AT, 0.2))
        assert (point.threshold, point.apcer, point.bpcer, point.exact) == (0.3, 0.25, 0.2, True)
