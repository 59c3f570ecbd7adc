"""Synthetic generator: portable PRNG, spec validation, assembly recipe."""
import numpy as np
import pytest
from scipy import stats

from tsdiag.errors import BadSpec
from tsdiag.seasonality import seasonal_strength
from tsdiag.series import FrequencyKind, infer_frequency
from tsdiag.stl import stl_decompose
from tsdiag.synth import EPOCH_2020, SynthSpec, generate, normals, uniforms


class TestPortablePrng:
    def test_uniforms_deterministic_and_in_range(self):
        a = uniforms(42, 1000)
        b = uniforms(42, 1000)
        assert np.array_equal(a, b)
        assert a.min() >= 0.0 and a.max() < 1.0

    def test_uniforms_first_two_moments(self):
        u = uniforms(0, 200000)
        assert abs(u.mean() - 0.5) < 0.005
        assert abs(u.var() - 1.0 / 12.0) < 0.001

    def test_uniforms_low_serial_correlation(self):
        u = uniforms(0, 200000)
        assert abs(np.corrcoef(u[:-1], u[1:])[0, 1]) < 0.01

    def test_normals_match_standard_normal(self):
        z = normals(0, 200000)
        assert abs(z.mean()) < 0.01
        assert abs(z.var() - 1.0) < 0.01
        assert stats.kstest(z, "norm").pvalue > 0.05

    def test_normals_odd_count(self):
        z = normals(3, 7)
        assert z.shape == (7,)
        assert np.array_equal(z, normals(3, 8)[:7])

    def test_streams_are_distinct_and_uncorrelated(self):
        a = normals(1, 100000, stream=0)
        b = normals(1, 100000, stream=1)
        assert not np.array_equal(a[:100], b[:100])
        assert abs(np.corrcoef(a, b)[0, 1]) < 0.02

    def test_seeds_are_distinct(self):
        assert not np.array_equal(uniforms(0, 100), uniforms(1, 100))


class TestSynthSpecValidation:
    @pytest.mark.parametrize("kwargs", [
        {"n": 0},
        {"n": 19},
        {"n": 100, "noise_sigma": -0.5},
        {"n": 100, "seasonal_amplitude": 1.0, "seasonal_period": 1},
        {"n": 100, "unit_root": True, "arch": (0.2, 0.5)},
        {"n": 100, "variance_break": (0.0, 2.0)},
        {"n": 100, "variance_break": (1.0, 2.0)},
        {"n": 100, "variance_break": (0.5, 0.0)},
        {"n": 100, "level_break": (1.2, 3.0)},
        {"n": 100, "arch": (0.0, 0.5)},
        {"n": 100, "arch": (0.2, 1.0)},
        {"n": 100, "arch": (0.2, -0.1)},
    ])
    def test_rejects_bad_specs(self, kwargs):
        with pytest.raises(BadSpec):
            generate(SynthSpec(**kwargs))

    def test_boundary_specs_accepted(self):
        generate(SynthSpec(n=20))
        generate(SynthSpec(n=100, noise_sigma=0.0))
        generate(SynthSpec(n=100, arch=(0.2, 0.0)))
        # amplitude 0 tolerates any period value
        generate(SynthSpec(n=100, seasonal_amplitude=0.0, seasonal_period=1))


class TestGenerate:
    def test_all_randomness_off_gives_constant(self):
        ts = generate(SynthSpec(n=50, baseline=5.0, noise_sigma=0.0))
        assert np.all(ts.values == 5.0)

    def test_pure_trend_is_exact(self):
        ts = generate(SynthSpec(n=100, trend_slope=0.1, noise_sigma=0.0))
        assert ts.values[99] - ts.values[0] == 9.9

    def test_pure_seasonal_range_and_strength(self):
        ts = generate(SynthSpec(n=210, seasonal_amplitude=2.0, seasonal_period=7,
                                noise_sigma=0.0))
        grid_max = np.max(np.abs(np.sin(2 * np.pi * np.arange(7) / 7)))
        assert np.ptp(ts.values) == pytest.approx(2 * 2.0 * grid_max, rel=1e-12)
        r = seasonal_strength(stl_decompose(ts, 7))
        assert r.statistic == pytest.approx(1.0, abs=1e-6)
        assert r.detected

    def test_bit_identical_for_same_spec(self):
        spec = SynthSpec(n=300, seed=7, baseline=1.0, trend_slope=0.01,
                         seasonal_amplitude=0.5, noise_sigma=0.8)
        a = generate(spec)
        b = generate(spec)
        assert np.array_equal(a.values, b.values)
        assert np.array_equal(a.timestamps, b.timestamps)
        assert a == b

    def test_different_seeds_differ(self):
        a = generate(SynthSpec(n=100, seed=0))
        b = generate(SynthSpec(n=100, seed=1))
        assert not np.array_equal(a.values, b.values)

    def test_iid_case_matches_formula(self):
        spec = SynthSpec(n=200, seed=5, baseline=3.0, trend_slope=0.05,
                         seasonal_amplitude=1.5, seasonal_period=12, noise_sigma=0.7)
        t = np.arange(200, dtype=float)
        manual = (3.0 + 0.05 * t + 0.7 * normals(5, 200)
                  + 1.5 * np.sin(2 * np.pi * t / 12))
        assert np.array_equal(generate(spec).values, manual)

    def test_unit_root_is_cumsum_of_shocks(self):
        spec = SynthSpec(n=150, seed=9, noise_sigma=1.3, unit_root=True)
        manual = np.cumsum(1.3 * normals(9, 150))
        assert np.array_equal(generate(spec).values, manual)

    def test_variance_break_scales_shocks_after_position(self):
        spec = SynthSpec(n=200, seed=4, variance_break=(0.5, 3.0))
        z = normals(4, 200).copy()
        z[100:] *= 3.0
        assert np.array_equal(generate(spec).values, z)
        # and the break is visible in sample spreads
        y = generate(spec).values
        assert np.std(y[100:]) > 2.0 * np.std(y[:100])

    def test_level_break_adds_shift_after_position(self):
        spec = SynthSpec(n=100, seed=2, noise_sigma=0.0, level_break=(0.25, 7.5))
        y = generate(spec).values
        assert np.all(y[:25] == 0.0)
        assert np.all(y[25:] == 7.5)

    def test_arch_matches_manual_recursion(self):
        omega, alpha1 = 0.3, 0.6
        spec = SynthSpec(n=120, seed=8, arch=(omega, alpha1))
        z = normals(8, 120)
        e = np.empty(120)
        prev = 0.0
        for i in range(120):
            prev = z[i] * np.sqrt(omega + alpha1 * prev * prev)
            e[i] = prev
        assert np.array_equal(generate(spec).values, e)

    def test_variance_break_composes_with_arch(self):
        # the break scales the standardized stream before the recursion
        omega, alpha1 = 0.3, 0.6
        spec = SynthSpec(n=120, seed=8, arch=(omega, alpha1), variance_break=(0.5, 2.0))
        z = normals(8, 120).copy()
        z[60:] *= 2.0
        e = np.empty(120)
        prev = 0.0
        for i in range(120):
            prev = z[i] * np.sqrt(omega + alpha1 * prev * prev)
            e[i] = prev
        assert np.array_equal(generate(spec).values, e)

    def test_variance_break_composes_with_unit_root(self):
        spec = SynthSpec(n=100, seed=6, unit_root=True, variance_break=(0.4, 2.5))
        z = normals(6, 100).copy()
        z[40:] *= 2.5
        assert np.array_equal(generate(spec).values, np.cumsum(z))


class TestTimestampGrids:
    @pytest.mark.parametrize("kind,step", [
        (FrequencyKind.HOURLY, 3600.0),
        (FrequencyKind.DAILY, 86400.0),
        (FrequencyKind.WEEKLY, 604800.0),
        (FrequencyKind.MONTHLY, 30.0 * 86400.0),
        (FrequencyKind.QUARTERLY, 91.0 * 86400.0),
        (FrequencyKind.YEARLY, 365.0 * 86400.0),
    ])
    def test_known_kinds_round_trip_through_inference(self, kind, step):
        ts = generate(SynthSpec(n=60, seed=1, freq_kind=kind))
        assert ts.timestamps[0] == EPOCH_2020
        assert np.all(np.diff(ts.timestamps) == step)
        assert infer_frequency(ts).kind is kind

    def test_unknown_kind_gives_irregular_grid(self):
        ts = generate(SynthSpec(n=60, seed=1, freq_kind=FrequencyKind.UNKNOWN))
        gaps = np.diff(ts.timestamps)
        expected = 86400.0 * (1.5 + (np.arange(59) % 3))
        assert np.array_equal(gaps, expected)
        assert infer_frequency(ts).kind is FrequencyKind.UNKNOWN

    def test_output_length(self):
        assert generate(SynthSpec(n=77)).n == 77
