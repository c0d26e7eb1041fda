import math

import numpy as np
import pytest

from conftest import dataset_from_scores, make_pad, random_matcher, random_pad
from padfuse.dataset import SampleClass, ScoreDataset, ScoreRecord
from padfuse.errors import DomainError, EmptyClassError, EmptyInputError
from padfuse.roc import (
    OperationalPointSpec,
    PadCharacteristic,
    PointMode,
    ResolvedOperatingPoint,
    average_pad_characteristics,
    build_matcher_characteristic,
    build_pad_characteristic,
    rates_at,
    resolve_operating_point,
)

INF = math.inf


def count_pad_rates(live, fake, t):
    """Enumeration oracle: direct counting over individual scores."""
    apcer = sum(1 for s in fake if s > t) / len(fake)
    bpcer = sum(1 for s in live if s <= t) / len(live)
    return apcer, bpcer


def count_matcher_rates(genuine, zero, attack, t):
    return tuple(sum(1 for s in scores if s > t) / len(scores) for scores in (genuine, zero, attack))


class TestBuildPad:
    def test_separated_scores(self):
        # live {0.9, 0.8} vs fake {0.1, 0.2}: nothing crosses t=0.5
        data = dataset_from_scores(
            genuine=[(0.9, 1.0)], zero_effort=[(0.8, 1.0)],
            attack=[(0.1, 1.0), (0.2, 1.0)],
        )
        pad = build_pad_characteristic(data)
        assert pad.rates_at(0.5) == (0.0, 0.0)

    def test_fake_above_live(self):
        # all live at 0.9, one fake at 0.95: at t=0.92 the fake passes the
        # strict s > t gate (apcer=1) and every live sample fails it (bpcer=1)
        data = dataset_from_scores(
            genuine=[(0.9, 1.0)], zero_effort=[(0.9, 1.0)],
            attack=[(0.95, 1.0)],
        )
        pad = build_pad_characteristic(data)
        assert pad.rates_at(0.92) == (1.0, 1.0)

    def test_missing_attacks_raises(self):
        records = [ScoreRecord(SampleClass.GENUINE, 0.8, 0.5)]
        with pytest.raises(EmptyClassError):
            build_pad_characteristic(ScoreDataset.from_records(records))

    def test_missing_live_raises(self):
        records = [ScoreRecord(SampleClass.PRESENTATION_ATTACK, 0.2, 0.5)]
        with pytest.raises(EmptyClassError):
            build_pad_characteristic(ScoreDataset.from_records(records))

    def test_matches_direct_counting(self, rng):
        # oracle equivalence at every unique score, datasets up to 1000 records
        for _ in range(20):
            n = int(rng.integers(3, 1000))
            live = list(rng.normal(0.6, 0.2, size=max(1, n // 2)))
            fake = list(rng.normal(0.4, 0.2, size=max(1, n - n // 2)))
            data = dataset_from_scores(
                genuine=[(s, 0.0) for s in live], zero_effort=[],
                attack=[(s, 0.0) for s in fake],
            )
            pad = build_pad_characteristic(data)
            for t in np.unique(live + fake):
                assert pad.rates_at(t) == count_pad_rates(live, fake, t)

    def test_monotone_columns(self, rng):
        for _ in range(10):
            live = rng.normal(0.6, 0.2, size=50)
            fake = rng.normal(0.4, 0.2, size=50)
            data = dataset_from_scores(
                genuine=[(s, 0.0) for s in live], zero_effort=[],
                attack=[(s, 0.0) for s in fake],
            )
            pad = build_pad_characteristic(data)
            assert (np.diff(pad.apcer) <= 0).all()
            assert (np.diff(pad.bpcer) >= 0).all()

    def test_duplicate_scores_collapse(self):
        data = dataset_from_scores(
            genuine=[(0.5, 0.0), (0.5, 0.0)], zero_effort=[(0.5, 0.0)],
            attack=[(0.5, 0.0), (0.2, 0.0)],
        )
        pad = build_pad_characteristic(data)
        assert pad.thresholds.tolist() == [-INF, 0.2, 0.5, INF]


class TestBuildMatcher:
    def test_enumeration_case(self):
        data = dataset_from_scores(
            genuine=[(1.0, 0.9), (1.0, 0.7)],
            zero_effort=[(1.0, 0.3)],
            attack=[(0.0, 0.8)],
        )
        m = build_matcher_characteristic(data)
        assert m.rates_at(0.5) == (1.0, 0.0, 1.0)

    def test_sentinels(self, rng):
        m = random_matcher(rng)
        assert m.rates_at(INF) == (0.0, 0.0, 0.0)
        assert m.rates_at(-INF) == (1.0, 1.0, 1.0)

    def test_missing_class_is_named(self):
        data = dataset_from_scores(genuine=[(1, 1)], zero_effort=[], attack=[(0, 1)])
        with pytest.raises(EmptyClassError) as err:
            build_matcher_characteristic(data)
        assert err.value.klass == "zero_effort"

    def test_matches_direct_counting(self, rng):
        for _ in range(10):
            genuine = list(rng.normal(0.8, 0.1, size=int(rng.integers(1, 300))))
            zero = list(rng.normal(0.3, 0.1, size=int(rng.integers(1, 300))))
            attack = list(rng.normal(0.6, 0.2, size=int(rng.integers(1, 300))))
            data = dataset_from_scores(
                genuine=[(0.5, s) for s in genuine],
                zero_effort=[(0.5, s) for s in zero],
                attack=[(0.5, s) for s in attack],
            )
            m = build_matcher_characteristic(data)
            for t in np.unique(genuine + zero + attack):
                assert m.rates_at(t) == count_matcher_rates(genuine, zero, attack, t)


class TestRatesAt:
    def test_exact_hit(self):
        pad = make_pad([(2.0, 0.01, 0.03)])
        assert pad.rates_at(2.0) == (0.01, 0.03)

    def test_step_convention_between_points(self):
        pad = make_pad([(1.0, 0.4, 0.1), (3.0, 0.2, 0.3)])
        assert pad.rates_at(2.0) == (0.4, 0.1)

    def test_below_all_finite_points(self):
        pad = make_pad([(1.0, 0.4, 0.1)])
        assert pad.rates_at(0.0) == (1.0, 0.0)

    def test_sentinel_queries(self):
        pad = make_pad([(1.0, 0.4, 0.1)])
        assert pad.rates_at(-INF) == (1.0, 0.0)
        assert pad.rates_at(INF) == (0.0, 1.0)

    def test_nan_rejected(self):
        pad = make_pad([(1.0, 0.4, 0.1)])
        with pytest.raises(DomainError):
            pad.rates_at(math.nan)

    def test_free_function_delegates(self, rng):
        pad = random_pad(rng)
        matcher = random_matcher(rng)
        assert rates_at(pad, 0.0) == pad.rates_at(0.0)
        assert rates_at(matcher, 0.0) == matcher.rates_at(0.0)

    def test_vectorized_matches_scalar(self, rng):
        pad = random_pad(rng)
        queries = rng.uniform(-60, 60, size=40)
        apcer, bpcer = pad.rates_at(queries)
        for q, a, b in zip(queries, apcer, bpcer):
            assert pad.rates_at(float(q)) == (a, b)


class TestResolve:
    def test_apcer_at_exact(self):
        pad = make_pad([(1.0, 0.50, 0.0), (2.0, 0.01, 0.1), (3.0, 0.001, 0.2)])
        point = resolve_operating_point(pad, OperationalPointSpec(PointMode.APCER_AT, 0.01))
        assert point.threshold == 2.0
        assert point.exact
        assert point.warning is None

    def test_bpcer_at_prefers_largest(self):
        pad = make_pad([(1.0, 0.5, 0.0), (2.0, 0.4, 0.02)])
        point = resolve_operating_point(pad, OperationalPointSpec(PointMode.BPCER_AT, 0.01))
        assert point.threshold == 1.0
        assert not point.exact

    def test_unreachable_bpcer_uses_sentinel(self):
        # every finite threshold already blocks too many live samples
        pad = make_pad([(1.0, 0.5, 0.6), (2.0, 0.4, 0.9)])
        point = resolve_operating_point(pad, OperationalPointSpec(PointMode.BPCER_AT, 0.5))
        assert point.threshold == -INF
        assert not point.exact
        assert point.warning == "unreachable"
        assert point.is_pass_through

    def test_unreachable_apcer_uses_sentinel(self):
        pad = make_pad([(1.0, 0.5, 0.0), (2.0, 0.4, 0.1)])
        point = resolve_operating_point(pad, OperationalPointSpec(PointMode.APCER_AT, 0.2))
        assert point.threshold == INF
        assert point.warning == "unreachable"

    def test_constraint_satisfied_when_reachable(self, rng):
        for _ in range(50):
            pad = random_pad(rng)
            for mode, target in ((PointMode.APCER_AT, float(rng.uniform(0.01, 0.99))),
                                 (PointMode.BPCER_AT, float(rng.uniform(0.01, 0.99)))):
                point = resolve_operating_point(pad, OperationalPointSpec(mode, target))
                constrained = point.apcer if mode is PointMode.APCER_AT else point.bpcer
                assert constrained <= target

    def test_rates_match_characteristic_at_threshold(self, rng):
        for _ in range(20):
            pad = random_pad(rng)
            point = resolve_operating_point(pad, OperationalPointSpec(PointMode.APCER_AT, 0.05))
            assert pad.rates_at(point.threshold) == (point.apcer, point.bpcer)

    def test_target_range_validated(self):
        with pytest.raises(DomainError):
            OperationalPointSpec(PointMode.APCER_AT, 0.0)
        with pytest.raises(DomainError):
            OperationalPointSpec(PointMode.APCER_AT, 1.0)


class TestAverage:
    def test_idempotent_on_identical_inputs(self, rng):
        pad = random_pad(rng)
        grid = np.linspace(-40, 40, 33)
        avg = average_pad_characteristics([pad, pad], grid)
        apcer, bpcer = pad.rates_at(grid)
        assert np.array_equal(avg.rates_at(grid).apcer, apcer)
        assert np.array_equal(avg.rates_at(grid).bpcer, bpcer)

    def test_two_point_mean(self):
        a = make_pad([(1.0, 0.2, 0.1)])
        b = make_pad([(1.0, 0.4, 0.3)])
        avg = average_pad_characteristics([a, b], [1.0])
        assert avg.rates_at(1.0) == (pytest.approx(0.3), pytest.approx(0.2))

    def test_three_inputs_match_pointwise_oracle(self, rng):
        pads = [random_pad(rng) for _ in range(3)]
        grid = np.linspace(-45, 45, 21)
        avg = average_pad_characteristics(pads, grid)
        for t in grid:
            expected_apcer = sum(p.rates_at(float(t)).apcer for p in pads) / 3
            expected_bpcer = sum(p.rates_at(float(t)).bpcer for p in pads) / 3
            assert avg.rates_at(float(t)).apcer == pytest.approx(expected_apcer, abs=1e-15)
            assert avg.rates_at(float(t)).bpcer == pytest.approx(expected_bpcer, abs=1e-15)

    def test_empty_input(self):
        with pytest.raises(EmptyInputError):
            average_pad_characteristics([], [0.0])

    def test_non_finite_grid_rejected(self, rng):
        with pytest.raises(DomainError):
            average_pad_characteristics([random_pad(rng)], [0.0, INF])


class TestInvariantValidation:
    def test_thresholds_must_increase(self):
        with pytest.raises(ValueError):
            PadCharacteristic([-INF, 2.0, 1.0, INF], [1, 0.5, 0.4, 0], [0, 0.1, 0.2, 1])

    def test_sentinels_required(self):
        with pytest.raises(ValueError):
            PadCharacteristic([0.0, 1.0], [1.0, 0.0], [0.0, 1.0])

    def test_monotonicity_enforced(self):
        with pytest.raises(ValueError):
            PadCharacteristic([-INF, 1.0, 2.0, INF], [1, 0.2, 0.5, 0], [0, 0.1, 0.2, 1])

    def test_rates_range_enforced(self):
        with pytest.raises(ValueError):
            PadCharacteristic([-INF, 1.0, INF], [1, 1.2, 0], [0, 0.1, 1])

    def test_arrays_frozen(self, rng):
        pad = random_pad(rng)
        with pytest.raises(ValueError):
            pad.apcer[0] = 0.5

    def test_pass_through_marker(self):
        marker = ResolvedOperatingPoint.pass_through()
        assert marker.is_pass_through
        assert marker.threshold == -INF
