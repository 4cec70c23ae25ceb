"""Tests for percentile-bootstrap estimation."""

import math

import numpy as np
import pytest

from src.engine.bootstrap import (
    BLOCK_SIZE,
    bootstrap_estimate,
    exhaustive_bootstrap,
    resample_means,
)
from src.engine.gaussian import gaussian_estimate
from src.errors import EmptySampleError, TooLargeForEnumerationError
from src.models.config import BootstrapConfig, PercentileMethod
from src.models.sample import MetricSampleSet

from tests.conftest import normal_sample

# Small fixtures for comparing Monte Carlo against full enumeration.
ORACLE_FIXTURES = [
    (42.0,),
    (0.0, 100.0),
    (20.0, 80.0),
    (35.5, 90.25),
    (0.0, 0.0, 100.0, 100.0),
]


class TestResampleMeans:
    """Test resample generation."""

    def test_count(self):
        means = resample_means(normal_sample(20), BootstrapConfig(resamples=2500, seed=1))
        assert means.shape == (2500,)

    def test_same_seed_same_means(self):
        samples = normal_sample(30)
        config = BootstrapConfig(resamples=3000, seed=7)
        assert np.array_equal(resample_means(samples, config), resample_means(samples, config))

    def test_different_seeds_differ(self):
        samples = normal_sample(30)
        a = resample_means(samples, BootstrapConfig(resamples=100, seed=1))
        b = resample_means(samples, BootstrapConfig(resamples=100, seed=2))
        assert not np.array_equal(a, b)

    def test_worker_count_does_not_change_results(self):
        samples = normal_sample(50)
        single = resample_means(samples, BootstrapConfig(resamples=5000, seed=3, workers=1))
        many = resample_means(samples, BootstrapConfig(resamples=5000, seed=3, workers=8))
        assert np.array_equal(single, many)

    def test_longer_runs_extend_shorter_ones(self):
        samples = normal_sample(25)
        short = resample_means(samples, BootstrapConfig(resamples=BLOCK_SIZE, seed=9))
        long = resample_means(samples, BootstrapConfig(resamples=3 * BLOCK_SIZE, seed=9))
        assert np.array_equal(long[:BLOCK_SIZE], short)

    def test_means_lie_within_sample_range(self):
        samples = normal_sample(15)
        means = resample_means(samples, BootstrapConfig(resamples=1000))
        assert samples.values().min() <= means.min()
        assert means.max() <= samples.values().max()

    def test_empty_rejected(self):
        with pytest.raises(EmptySampleError):
            resample_means(MetricSampleSet(()))

    def test_two_point_support(self):
        samples = MetricSampleSet.from_values([0.0, 100.0])

        few = resample_means(samples, BootstrapConfig(resamples=4, seed=1))
        assert len(few) == 4
        assert set(few.tolist()) <= {0.0, 50.0, 100.0}

        many = resample_means(samples, BootstrapConfig(resamples=15000, seed=1))
        assert float(np.mean(many == 50.0)) == pytest.approx(0.5, abs=0.02)


class TestBootstrapEstimate:
    """Test SEM* and CI*."""

    def test_constant_sample(self):
        est = bootstrap_estimate(MetricSampleSet.from_values([60.0] * 12), BootstrapConfig(resamples=500))

        assert est.mu_star == 60.0
        assert est.sem_star == 0.0
        assert est.width_star == 0.0
        assert est.ci_star == (60.0, 60.0)

    def test_records_settings(self):
        config = BootstrapConfig(resamples=700, seed=11, percentile_method=PercentileMethod.NEAREST_RANK)
        est = bootstrap_estimate(normal_sample(10), config)

        assert est.resamples == 700
        assert est.seed == 11
        assert est.n == 10
        assert est.percentile_method is PercentileMethod.NEAREST_RANK

    def test_return_means(self):
        est, means = bootstrap_estimate(normal_sample(10), BootstrapConfig(resamples=400), return_means=True)

        assert means.shape == (400,)
        assert est.sem_star == pytest.approx(float(np.std(means)))

    def test_ci_brackets_mean(self):
        est = bootstrap_estimate(normal_sample(40, seed=2), BootstrapConfig(resamples=4000))
        assert est.ci_lo_star < est.mu_star < est.ci_hi_star
        assert est.width_star == pytest.approx(est.ci_hi_star - est.ci_lo_star)

    def test_single_sample(self):
        est = bootstrap_estimate(MetricSampleSet.from_values([70.0]), BootstrapConfig(resamples=100))
        assert est.sem_star == 0.0

    def test_two_points(self):
        est = bootstrap_estimate(MetricSampleSet.from_values([0.0, 100.0]), BootstrapConfig(resamples=15000, seed=3))
        assert est.sem_star == pytest.approx(50.0 / math.sqrt(2), abs=1.5)

    @pytest.mark.parametrize("method", list(PercentileMethod))
    def test_ci_within_resample_range(self, method):
        config = BootstrapConfig(resamples=2000, seed=4, percentile_method=method)
        est, means = bootstrap_estimate(normal_sample(25, seed=8), config, return_means=True)
        assert means.min() <= est.ci_lo_star <= est.ci_hi_star <= means.max()

    @pytest.mark.parametrize("shift", [-80.0, 12.5, 1000.0])
    def test_shift_equivariance(self, shift):
        base = normal_sample(30, seed=9)
        moved = MetricSampleSet.from_values(base.values() + shift, metric_name="score")
        config = BootstrapConfig(resamples=3000, seed=21)
        a, b = bootstrap_estimate(base, config), bootstrap_estimate(moved, config)

        assert b.mu_star == pytest.approx(a.mu_star + shift, abs=1e-9)
        assert b.sem_star == pytest.approx(a.sem_star, abs=1e-9)
        assert b.ci_lo_star == pytest.approx(a.ci_lo_star + shift, abs=1e-9)
        assert b.ci_hi_star == pytest.approx(a.ci_hi_star + shift, abs=1e-9)

    def test_agrees_with_gaussian(self):
        close = 0
        for trial in range(100):
            samples = normal_sample(110, mu=80.7, sigma=10.75, seed=1000 + trial)
            gaussian = gaussian_estimate(samples)
            boot = bootstrap_estimate(samples, BootstrapConfig(resamples=15000, seed=trial))
            if abs(boot.sem_star - gaussian.sem) <= 0.05:
                close += 1
        assert close >= 95


class TestExhaustiveBootstrap:
    """Test full enumeration of resamples."""

    def test_two_points(self):
        est = exhaustive_bootstrap(MetricSampleSet.from_values([0.0, 100.0]))

        assert est.resamples == 4
        assert est.seed is None
        assert est.mu_star == pytest.approx(50.0)
        assert est.sem_star == pytest.approx(50.0 / math.sqrt(2))

    @pytest.mark.parametrize("values", ORACLE_FIXTURES)
    def test_sem_equals_population_formula(self, values):
        samples = MetricSampleSet.from_values(values)
        expected = float(np.std(values)) / math.sqrt(len(values))
        assert exhaustive_bootstrap(samples).sem_star == pytest.approx(expected, abs=1e-12)

    def test_cap(self):
        with pytest.raises(TooLargeForEnumerationError):
            exhaustive_bootstrap(MetricSampleSet.from_values(range(9)))

    def test_eight_is_allowed(self):
        est = exhaustive_bootstrap(MetricSampleSet.from_values([1, 2, 3, 4, 5, 6, 7, 8]))
        assert est.resamples == 8 ** 8

    @pytest.mark.parametrize("values", ORACLE_FIXTURES)
    def test_monte_carlo_matches_enumeration(self, values):
        samples = MetricSampleSet.from_values(values)
        exact = exhaustive_bootstrap(samples).sem_star
        resamples = 15000
        tolerance = 3 * exact / math.sqrt(2 * resamples)

        for seed in range(20):
            est = bootstrap_estimate(samples, BootstrapConfig(resamples=resamples, seed=seed))
            assert abs(est.sem_star - exact) <= tolerance

    def test_three_points(self):
        samples = MetricSampleSet.from_values([0.0, 50.0, 100.0])
        exact = exhaustive_bootstrap(samples)
        est = bootstrap_estimate(samples, BootstrapConfig(resamples=15000, seed=5))

        assert exact.resamples == 27
        assert exact.mu_star == pytest.approx(50.0)
        assert est.sem_star == pytest.approx(exact.sem_star, rel=0.02)
