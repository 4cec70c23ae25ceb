"""Tests for density curves."""

import numpy as np
import pytest
from scipy import stats
from scipy.integrate import trapezoid

from src.errors import DegenerateSpreadError, InvalidConfigError
from src.models.sample import MetricSampleSet
from src.report.kde import histogram, kde, render_histogram, render_kde, silverman_bandwidth

from tests.conftest import normal_sample


class TestBandwidth:
    """Test Silverman's rule."""

    def test_formula(self):
        values = normal_sample(110, seed=6).values()
        q75, q25 = np.percentile(values, [75, 25])
        expected = 0.9 * min(values.std(ddof=1), (q75 - q25) / 1.34) * 110 ** -0.2

        assert silverman_bandwidth(values) == pytest.approx(expected)

    def test_zero_iqr_falls_back_to_std(self):
        values = np.array([5.0] * 10 + [6.0])
        expected = 0.9 * values.std(ddof=1) * values.size ** -0.2
        assert silverman_bandwidth(values) == pytest.approx(expected)

    def test_constant_values(self):
        with pytest.raises(DegenerateSpreadError):
            silverman_bandwidth(np.array([3.0, 3.0, 3.0]))


class TestKde:
    """Test density estimation."""

    def test_integrates_to_one(self, dice_110):
        curve = kde(dice_110)
        assert 0.98 <= trapezoid(curve.density, curve.grid) <= 1.02

    def test_grid_spans_four_bandwidths(self, dice_110):
        curve = kde(dice_110, grid_points=101)
        values = dice_110.values()

        assert len(curve.grid) == 101
        assert curve.grid[0] == pytest.approx(values.min() - 4 * curve.bandwidth)
        assert curve.grid[-1] == pytest.approx(values.max() + 4 * curve.bandwidth)

    def test_mode_near_cluster(self):
        samples = MetricSampleSet.from_values([79.9, 80.0, 80.05, 80.1, 79.95])
        curve = kde(samples)
        mode = curve.grid[int(np.argmax(curve.density))]
        assert abs(mode - 80.0) <= curve.bandwidth

    def test_symmetric_clusters(self):
        samples = MetricSampleSet.from_values([0.0, 0.0, 0.0, 100.0, 100.0, 100.0])
        curve = kde(samples, bandwidth=5.0)
        density = np.asarray(curve.density)

        assert np.allclose(density, density[::-1], atol=1e-6)
        assert curve.bandwidth == 5.0

    def test_density_non_negative(self, dice_110):
        assert min(kde(dice_110).density) >= 0.0

    def test_equals_mixture_of_kernels(self):
        values = [70.0, 75.5, 81.0, 90.0]
        curve = kde(MetricSampleSet.from_values(values), bandwidth=3.0, grid_points=41)
        grid = np.asarray(curve.grid)
        expected = np.mean([stats.norm.pdf(grid, loc=v, scale=3.0) for v in values], axis=0)

        assert np.allclose(curve.density, expected, rtol=1e-9, atol=1e-15)

    def test_constant_needs_bandwidth(self):
        samples = MetricSampleSet.from_values([50.0] * 4)
        with pytest.raises(DegenerateSpreadError):
            kde(samples)

        curve = kde(samples, bandwidth=1.0, grid_points=9)
        assert curve.bandwidth == 1.0
        assert np.allclose(curve.density, stats.norm.pdf(curve.grid, loc=50.0, scale=1.0))

    def test_single_sample(self):
        with pytest.raises(DegenerateSpreadError):
            kde(MetricSampleSet.from_values([50.0]), bandwidth=1.0)

    @pytest.mark.parametrize("kwargs", [dict(bandwidth=0.0), dict(bandwidth=-1.0), dict(grid_points=1)])
    def test_invalid_settings(self, dice_110, kwargs):
        with pytest.raises(InvalidConfigError):
            kde(dice_110, **kwargs)

    def test_render(self):
        curve = kde(MetricSampleSet.from_values([10.0, 20.0]), bandwidth=2.0, grid_points=3)
        lines = render_kde(curve).splitlines()

        assert lines[0] == "# bandwidth=2.0"
        assert lines[1] == "x,density"
        assert len(lines) == 5
        assert lines[2].startswith("2.0,")


class TestHistogram:
    """Test the binned view drawn under the density curve."""

    def test_counts_sum_to_n(self, dice_110):
        hist = histogram(dice_110, bins=15)

        assert len(hist.counts) == 15
        assert len(hist.edges) == 16
        assert sum(hist.counts) == 110

    def test_spans_the_values(self, dice_110):
        hist = histogram(dice_110)
        values = dice_110.values()

        assert hist.edges[0] == values.min()
        assert hist.edges[-1] == values.max()

    def test_density_integrates_to_one(self, dice_110):
        hist = histogram(dice_110, bins=12)
        widths = np.diff(hist.edges)
        assert float(np.sum(np.asarray(hist.density) * widths)) == pytest.approx(1.0)

    def test_known_bins(self):
        hist = histogram(MetricSampleSet.from_values([0.0, 1.0, 1.5, 4.0]), bins=4)

        assert hist.edges == (0.0, 1.0, 2.0, 3.0, 4.0)
        assert hist.counts == (1, 2, 0, 1)
        assert hist.density == (0.25, 0.5, 0.0, 0.25)

    def test_invalid_bins(self, dice_110):
        with pytest.raises(InvalidConfigError):
            histogram(dice_110, bins=0)

    def test_render(self):
        hist = histogram(MetricSampleSet.from_values([0.0, 1.0, 1.5, 4.0]), bins=2)
        lines = render_histogram(hist).splitlines()

        assert lines == ["bin_lo,bin_hi,count,density", "0.0,2.0,3,0.375", "2.0,4.0,1,0.125"]
