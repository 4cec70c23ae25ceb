"""Gaussian-kernel density curves and histograms for plotting a metric's distribution."""

import logging
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np
from scipy import stats

from src.errors import DegenerateSpreadError, EmptySampleError, InvalidConfigError
from src.models.sample import MetricSampleSet

logger = logging.getLogger(__name__)

DEFAULT_GRID_POINTS = 512
DEFAULT_BINS = 20
# The grid extends this many bandwidths past the extreme samples.
GRID_PAD = 4.0
IQR_SCALE = 1.34


@dataclass(frozen=True)
class KdeCurve:
    """Density evaluated on an evenly spaced grid.

    Attributes:
        grid: x positions in metric units.
        density: Non-negative density at each x.
        bandwidth: Kernel standard deviation.
    """
    grid: Tuple[float, ...]
    density: Tuple[float, ...]
    bandwidth: float


def silverman_bandwidth(values: np.ndarray) -> float:
    """0.9 * min(sample std, IQR / 1.34) * n^(-1/5).

    A zero IQR falls back to the standard deviation alone.

    Raises:
        DegenerateSpreadError: If all values are equal.
    """
    sigma = float(np.std(values, ddof=1))
    if sigma == 0.0:
        raise DegenerateSpreadError("all values are equal; give an explicit bandwidth")
    spread = sigma
    iqr = float(stats.iqr(values))
    if iqr > 0.0:
        spread = min(sigma, iqr / IQR_SCALE)
    return 0.9 * spread * values.size ** -0.2


def kde(
    samples: MetricSampleSet,
    bandwidth: Optional[float] = None,
    grid_points: int = DEFAULT_GRID_POINTS,
) -> KdeCurve:
    """Gaussian-kernel density estimate over [min - 4h, max + 4h].

    Args:
        samples: Sample set with n >= 2.
        bandwidth: Kernel bandwidth h (> 0); Silverman's rule when None.
        grid_points: Number of grid positions (>= 2).

    Returns:
        KdeCurve.

    Raises:
        EmptySampleError: If the set is empty.
        DegenerateSpreadError: Fewer than 2 samples, or all equal with no
            bandwidth given.
        InvalidConfigError: Nonpositive bandwidth or fewer than 2 grid points.
    """
    values = samples.values()
    if values.size == 0:
        raise EmptySampleError("cannot estimate a density from an empty sample set")
    if values.size < 2:
        raise DegenerateSpreadError(f"a density estimate needs at least 2 samples, got {values.size}")
    if grid_points < 2:
        raise InvalidConfigError(f"grid_points must be at least 2, got {grid_points}")

    if bandwidth is None:
        bandwidth = silverman_bandwidth(values)
    elif not (np.isfinite(bandwidth) and bandwidth > 0):
        raise InvalidConfigError(f"bandwidth must be positive, got {bandwidth!r}")

    grid = np.linspace(values.min() - GRID_PAD * bandwidth, values.max() + GRID_PAD * bandwidth, grid_points)
    spread = float(np.std(values, ddof=1))
    if spread == 0.0:
        # gaussian_kde needs a nonsingular covariance; every kernel sits on the same point.
        density = stats.norm.pdf(grid, loc=values[0], scale=bandwidth)
    else:
        # gaussian_kde scales the sample covariance by bw_method squared.
        density = stats.gaussian_kde(values, bw_method=bandwidth / spread)(grid)

    logger.debug("kde: n=%d bandwidth=%.6g grid=%d", values.size, bandwidth, grid_points)
    return KdeCurve(
        grid=tuple(float(x) for x in grid),
        density=tuple(float(d) for d in density),
        bandwidth=float(bandwidth),
    )


def render_kde(curve: KdeCurve) -> str:
    """CSV with columns x,density, preceded by a bandwidth line."""
    lines = [f"# bandwidth={curve.bandwidth!r}", "x,density"]
    lines.extend(f"{x!r},{d!r}" for x, d in zip(curve.grid, curve.density))
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class Histogram:
    """Binned counts drawn under a density curve.

    Attributes:
        edges: bins + 1 increasing bin edges; the last bin is closed.
        counts: Samples per bin, summing to n.
        density: counts / (n * bin width), so the bars integrate to 1.
    """
    edges: Tuple[float, ...]
    counts: Tuple[int, ...]
    density: Tuple[float, ...]


def histogram(samples: MetricSampleSet, bins: int = DEFAULT_BINS) -> Histogram:
    """Equal-width histogram spanning [min, max] of the values.

    Raises:
        EmptySampleError: If the set is empty.
        InvalidConfigError: If bins < 1.
    """
    values = samples.values()
    if values.size == 0:
        raise EmptySampleError("cannot bin an empty sample set")
    if bins < 1:
        raise InvalidConfigError(f"bins must be at least 1, got {bins}")

    counts, edges = np.histogram(values, bins=bins)
    density, _ = np.histogram(values, bins=edges, density=True)
    return Histogram(
        edges=tuple(float(e) for e in edges),
        counts=tuple(int(c) for c in counts),
        density=tuple(float(d) for d in density),
    )


def render_histogram(hist: Histogram) -> str:
    """CSV with columns bin_lo,bin_hi,count,density."""
    lines = ["bin_lo,bin_hi,count,density"]
    lines.extend(
        f"{lo!r},{hi!r},{count},{d!r}"
        for lo, hi, count, d in zip(hist.edges[:-1], hist.edges[1:], hist.counts, hist.density)
    )
    return "\n".join(lines) + "\n"
