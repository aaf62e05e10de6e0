"""Stable law: characteristic function, CDF inversion, CMS sampler."""

import math

import numpy as np
import pytest

from grg import (
    ParameterError,
    StableParams,
    ks_one_sample,
    normal_cdf,
    sample_stable,
    stable_cdf,
    stable_cdf_batch,
    stable_char_fn,
)


class TestCharFn:
    def test_value_at_zero(self):
        for p in (StableParams(1.5, 0.7), StableParams(1.0, -0.3), StableParams(2.0, 0.0)):
            assert stable_char_fn(0.0, p) == 1.0 + 0.0j

    def test_gaussian_branch(self):
        val = stable_char_fn(1.0, StableParams(2.0, 0.0))
        np.testing.assert_allclose(val, math.exp(-1.0), rtol=1e-12)

    def test_cauchy_branch(self):
        val = stable_char_fn(2.0, StableParams(1.0, 0.0))
        np.testing.assert_allclose(val, math.exp(-2.0), rtol=1e-12)

    def test_modulus_bounded(self):
        rng = np.random.default_rng(9)
        for _ in range(200):
            p = StableParams(
                float(rng.uniform(0.3, 2.0)),
                float(rng.uniform(-1, 1)),
                float(rng.uniform(0.2, 3.0)),
                float(rng.uniform(-2, 2)),
            )
            t = float(rng.uniform(-20, 20))
            assert abs(stable_char_fn(t, p)) <= 1.0 + 1e-12

    def test_continuity_at_zero(self):
        p = StableParams(1.3, 1.0, 0.7, -0.4)
        for t in (1e-9, -1e-9, 1e-6):
            assert abs(stable_char_fn(t, p) - 1.0) < 1e-5

    def test_parameter_domains(self):
        with pytest.raises(ParameterError):
            StableParams(2.5, 0.0)
        with pytest.raises(ParameterError):
            StableParams(1.5, 1.5)
        with pytest.raises(ParameterError):
            StableParams(1.5, 0.0, scale=0.0)


class TestCdf:
    def test_symmetric_median(self):
        assert stable_cdf(0.0, StableParams(1.7, 0.0)) == pytest.approx(0.5, abs=1e-9)

    def test_cauchy_quartile(self):
        assert stable_cdf(1.0, StableParams(1.0, 0.0)) == pytest.approx(0.75, rel=1e-12)

    def test_gaussian_branch_quantile(self):
        # alpha=2 is N(0, 2): F(2.7718) = Phi(2.7718/sqrt(2)) = 0.975
        assert stable_cdf(2.7718, StableParams(2.0, 0.0)) == pytest.approx(0.975, abs=1e-5)

    def test_symmetry(self):
        p = StableParams(1.5, 0.0)
        for x in (0.3, 1.0, 4.0, 40.0):
            assert stable_cdf(x, p) + stable_cdf(-x, p) == pytest.approx(1.0, abs=1e-8)

    def test_location_scale_shift(self):
        base = StableParams(1.4, 0.6)
        moved = StableParams(1.4, 0.6, scale=2.5, location=-1.0)
        for z in (-2.0, 0.0, 1.3):
            assert stable_cdf(z, base) == pytest.approx(
                stable_cdf(2.5 * z - 1.0, moved), abs=1e-7
            )

    def test_far_tails(self):
        for alpha in (1.1, 1.5, 2.0):
            p = StableParams(alpha, 0.0)
            assert stable_cdf(-1e6, p) <= 0.001
            assert stable_cdf(1e6, p) >= 0.999

    def test_oscillatory_regime_matches_tail_expansion(self):
        # At z = 500 the Fourier quadrature and the first-order tail agree.
        p = StableParams(1.5, 0.0)
        tail = math.sin(math.pi * 0.75) * math.gamma(1.5) / math.pi * 500.0**-1.5
        assert stable_cdf(500.0, p) == pytest.approx(1.0 - tail, abs=1e-6)

    def test_batch_is_isotonic_and_matches_pointwise(self):
        p = StableParams(1.3, 1.0)
        xs = np.concatenate([np.linspace(-30, 30, 700), [0.123] * 3])
        vals = stable_cdf_batch(xs, p)
        order = np.argsort(xs)
        assert np.all(np.diff(vals[order]) >= 0)
        for idx in (0, 150, 400, 699):
            assert vals[idx] == pytest.approx(stable_cdf(float(xs[idx]), p), abs=2e-6)

    def test_batch_interpolated_path(self):
        p = StableParams(1.6, 0.5)
        xs = np.linspace(-25, 25, 5000)  # above the exact-evaluation cutoff
        vals = stable_cdf_batch(xs, p)
        for idx in (100, 2500, 4900):
            assert vals[idx] == pytest.approx(stable_cdf(float(xs[idx]), p), abs=1e-5)

    def test_batch_degenerate_grid(self):
        """Many copies of one point must not break the interpolation path."""
        p = StableParams(1.5, 0.0)
        vals = stable_cdf_batch(np.full(1000, 1.7), p)
        np.testing.assert_allclose(vals, stable_cdf(1.7, p))


class TestSampler:
    def test_determinism(self):
        p = StableParams(1.5, 1.0, 2.0, -1.0)
        assert sample_stable(p, 1, seed=7)[0] == sample_stable(p, 1, seed=7)[0]

    def test_gaussian_reduction(self):
        """alpha=2 draws are N(0, 2); KS against the normal oracle."""
        xs = sample_stable(StableParams(2.0, 0.0), 10**5, seed=31)
        res = ks_one_sample(xs, lambda x: normal_cdf(np.asarray(x) / math.sqrt(2.0)))
        assert res.p_value > 0.01, res

    def test_cauchy_reduction(self):
        xs = sample_stable(StableParams(1.0, 0.0), 10**5, seed=32)
        res = ks_one_sample(xs, lambda x: 0.5 + np.arctan(np.asarray(x)) / math.pi)
        assert res.p_value > 0.01, res

    def test_positive_skew_direction(self):
        """beta=1 with alpha in (1,2): mean stays at 0, median goes negative."""
        xs = sample_stable(StableParams(1.5, 1.0), 10**5, seed=33)
        assert np.median(xs) < 0.0
        assert abs(np.mean(xs)) < 0.5  # heavy tails make the mean noisy

    @pytest.mark.parametrize("alpha", [1.1, 1.5, 1.9])
    @pytest.mark.parametrize("beta", [0.0, 1.0])
    def test_self_consistency_grid(self, alpha, beta):
        """KS of 1e5 CMS draws against the inverted CDF accepts at 0.01."""
        p = StableParams(alpha, beta)
        xs = sample_stable(p, 10**5, seed=2024)
        res = ks_one_sample(xs, lambda v: stable_cdf_batch(v, p))
        assert res.p_value > 0.01, (alpha, beta, res)

    def test_rejects_empty(self):
        with pytest.raises(ParameterError):
            sample_stable(StableParams(1.5, 0.0), 0, seed=1)
