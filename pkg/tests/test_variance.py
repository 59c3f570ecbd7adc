"""Segmentation, Levene, Bartlett, ARCH LM, and the variance-ratio F test."""
import numpy as np
import pytest

from tsdiag import notes as N
from tsdiag.errors import BadK, DegenerateSegment, TooShort, ZeroVariance
from tsdiag.errors import TestSkipped as SkippedError
from tsdiag.synth import normals
from tsdiag.variance import (
    arch_lm_test,
    bartlett_test,
    levene_test,
    split_segments,
    variance_ratio_test,
)

from conftest import daily_ts, t3_noise


def arch1_series(seed, n, omega, alpha1):
    z = normals(seed, n)
    e = np.empty(n)
    e[0] = z[0] * np.sqrt(omega / (1.0 - alpha1))
    for t in range(1, n):
        e[t] = z[t] * np.sqrt(omega + alpha1 * e[t - 1] ** 2)
    return e


class TestSplitSegments:
    def test_even_split(self):
        segs = split_segments(daily_ts(normals(0, 100)), 2)
        assert [len(s) for s in segs] == [50, 50]

    def test_remainder_to_first(self):
        segs = split_segments(daily_ts(normals(0, 101)), 2)
        assert [len(s) for s in segs] == [51, 50]

    def test_three_way(self):
        segs = split_segments(daily_ts(normals(0, 100)), 3)
        assert [len(s) for s in segs] == [34, 33, 33]

    def test_too_short(self):
        with pytest.raises(TooShort):
            split_segments(daily_ts(normals(0, 25)), 3)

    def test_bad_k(self):
        with pytest.raises(BadK):
            split_segments(daily_ts(normals(0, 100)), 1)

    def test_concatenates_back(self):
        ts = daily_ts(normals(5, 97))
        for k in (2, 3, 4):
            segs = split_segments(ts, k)
            assert np.array_equal(np.concatenate(segs), ts.values)


class TestLevene:
    def test_identical_segments(self):
        seg = normals(3, 50)
        r = levene_test([seg, seg.copy()])
        assert r.statistic == pytest.approx(0.0, abs=1e-12)
        assert r.p_value == pytest.approx(1.0)
        assert not r.detected

    def test_tenfold_sigma_detected(self):
        v = normals(42, 200).copy()
        v[100:] *= 10.0
        r = levene_test(split_segments(daily_ts(v), 2))
        assert r.p_value < 0.01
        assert r.detected
        assert N.VARIANCE_CHANGE in r.notes

    def test_tenfold_sigma_rate(self):
        hits = 0
        for seed in range(100):
            v = normals(seed, 200).copy()
            v[100:] *= 10.0
            hits += levene_test(split_segments(daily_ts(v), 2)).p_value < 0.01
        assert hits >= 99

    def test_three_segment_size(self):
        rej = 0
        for seed in range(200):
            segs = split_segments(daily_ts(normals(seed, 300)), 3)
            rej += levene_test(segs).detected
        assert 0.02 <= rej / 200 <= 0.08

    def test_heavy_tails_keep_size(self):
        # the median-centered variant stays near nominal size under t(3)
        rej = 0
        for seed in range(200):
            segs = split_segments(daily_ts(t3_noise(seed, 400)), 2)
            rej += levene_test(segs).detected
        assert 0.02 <= rej / 200 <= 0.08

    def test_df_descriptor(self):
        segs = split_segments(daily_ts(normals(1, 100)), 2)
        assert levene_test(segs).df == "F(1, 98)"

    def test_constant_segment_skipped(self):
        with pytest.raises(DegenerateSegment):
            levene_test([np.full(20, 5.0), normals(0, 20)])


class TestBartlett:
    def test_equal_variances(self):
        seg = np.arange(10.0)
        r = bartlett_test([seg, seg + 100.0])
        assert r.statistic == pytest.approx(0.0, abs=1e-10)
        assert r.p_value == pytest.approx(1.0)

    def test_doubled_sigma_detected(self):
        v = normals(42, 200).copy()
        v[100:] *= 2.0
        r = bartlett_test(split_segments(daily_ts(v), 2))
        assert r.p_value < 0.01

    def test_doubled_sigma_rate(self):
        hits = 0
        for seed in range(100):
            v = normals(seed, 200).copy()
            v[100:] *= 2.0
            hits += bartlett_test(split_segments(daily_ts(v), 2)).p_value < 0.01
        assert hits >= 99

    def test_normality_note_always_attached(self):
        segs = split_segments(daily_ts(normals(7, 100)), 2)
        assert N.BARTLETT_NORMALITY in bartlett_test(segs).notes

    def test_heavy_tails_break_size(self):
        # documented sensitivity: t(3) data inflates the rejection rate well
        # past nominal even with a single regime
        rej = 0
        for seed in range(200):
            segs = split_segments(daily_ts(t3_noise(seed, 400)), 2)
            rej += bartlett_test(segs).detected
        assert rej / 200 > 0.10

    def test_zero_variance_segment_skipped(self):
        with pytest.raises(ZeroVariance):
            bartlett_test([np.full(20, 5.0), normals(0, 20)])

    def test_df_descriptor(self):
        segs = split_segments(daily_ts(normals(1, 100)), 2)
        assert bartlett_test(segs).df == "chi2(1)"


class TestArchLm:
    def test_default_lag_rule(self):
        assert arch_lm_test(daily_ts(normals(1, 500))).lags == 10
        assert arch_lm_test(daily_ts(normals(1, 100))).lags == 5

    def test_size(self):
        ok = sum(
            arch_lm_test(daily_ts(normals(s, 500))).p_value > 0.05
            for s in range(100))
        assert ok >= 90

    def test_power_arch1(self):
        hits = 0
        for seed in range(100):
            e = arch1_series(seed, 1000, omega=0.2, alpha1=0.7)
            hits += arch_lm_test(daily_ts(e)).detected
        assert hits >= 95

    def test_detection_notes(self):
        e = arch1_series(42, 1000, omega=0.2, alpha1=0.7)
        r = arch_lm_test(daily_ts(e))
        assert r.detected
        assert N.ARCH_DETECTED in r.notes

    def test_caveat_note_always_attached(self):
        r = arch_lm_test(daily_ts(normals(3, 200)))
        assert N.ARCH_CAVEAT in r.notes

    def test_autocorrelated_levels_trigger(self):
        # AR(1) phi=0.95 levels: not conditionally heteroskedastic, still fires
        from conftest import ar1_series
        hits = 0
        for seed in range(40):
            x = ar1_series(seed, 1000, phi=0.95)
            hits += arch_lm_test(daily_ts(x)).detected
        assert hits / 40 >= 0.5

    def test_too_short(self):
        with pytest.raises(TooShort):
            arch_lm_test(daily_ts(normals(0, 30)))

    def test_explicit_lags(self):
        r = arch_lm_test(daily_ts(normals(9, 300)), lags=4)
        assert r.lags == 4
        assert r.df == "chi2(4)"

    def test_constant_skipped(self):
        with pytest.raises(SkippedError):
            arch_lm_test(daily_ts(np.full(100, 2.0)))


class TestVarianceRatio:
    def test_identical_thirds(self):
        a = normals(11, 20)
        b = normals(12, 20)
        v = np.concatenate([a, b, a])  # first and last thirds identical
        r = variance_ratio_test(daily_ts(v))
        assert r.statistic == pytest.approx(1.0, rel=1e-12)
        assert r.p_value == pytest.approx(1.0)

    def test_size(self):
        ok = sum(
            variance_ratio_test(daily_ts(normals(s, 600))).p_value > 0.05
            for s in range(100))
        assert ok >= 90

    def test_power_on_sigma_ramp(self):
        sig = np.linspace(1.0, 3.0, 600)
        hits = 0
        for seed in range(100):
            hits += variance_ratio_test(daily_ts(sig * normals(seed, 600))).detected
        assert hits >= 95

    def test_detection_note(self):
        sig = np.linspace(1.0, 3.0, 600)
        r = variance_ratio_test(daily_ts(sig * normals(42, 600)))
        assert r.detected
        assert N.VARIANCE_CHANGE in r.notes
        assert N.VARIANCE_RATIO_SCOPE in r.notes

    def test_too_short(self):
        with pytest.raises(TooShort):
            variance_ratio_test(daily_ts(normals(0, 59)))

    def test_pvalue_monotone_in_ratio(self):
        base = normals(21, 600)
        last = []
        for g in (1.5, 2.0, 3.0, 5.0):
            v = base.copy()
            v[400:] *= g
            last.append(variance_ratio_test(daily_ts(v)).p_value)
        assert all(a > b for a, b in zip(last, last[1:]))

    def test_constant_skipped(self):
        with pytest.raises(ZeroVariance):
            variance_ratio_test(daily_ts(np.full(90, 1.0)))


class TestInvariances:
    def test_shift_invariance(self):
        v = normals(31, 240)
        shifted = v + 1234.5
        for build in (
            lambda x: levene_test(split_segments(daily_ts(x), 2)),
            lambda x: bartlett_test(split_segments(daily_ts(x), 2)),
            lambda x: arch_lm_test(daily_ts(x)),
            lambda x: variance_ratio_test(daily_ts(x)),
        ):
            a, b = build(v), build(shifted)
            assert b.statistic == pytest.approx(a.statistic, rel=1e-9)

    def test_scale_invariance(self):
        v = normals(33, 240)
        scaled = 7.25 * v
        for build in (
            lambda x: levene_test(split_segments(daily_ts(x), 2)),
            lambda x: bartlett_test(split_segments(daily_ts(x), 2)),
            lambda x: variance_ratio_test(daily_ts(x)),
            lambda x: arch_lm_test(daily_ts(x)),  # LM = n'* R^2, scale-free
        ):
            a, b = build(v), build(scaled)
            assert b.statistic == pytest.approx(a.statistic, rel=1e-10)
