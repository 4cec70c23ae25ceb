"""Closed-form precision estimates under the Gaussian assumption.

    SEM = sigma / sqrt(n)
    CI  = [mu - z * SEM, mu + z * SEM],  w = 2 * z * SEM

with z = 1.96 for the 95% level.
"""

import math

import numpy as np
from scipy.stats import norm

from src.errors import DegenerateSpreadError, EmptySampleError, InvalidConfigError
from src.models.config import DEFAULT_Z, SpreadConvention
from src.models.estimates import GaussianEstimate, SummaryStats
from src.models.sample import MetricSampleSet

DEFAULT_CONFIDENCE = 0.95


def critical_value(confidence: float = DEFAULT_CONFIDENCE, exact: bool = False) -> float:
    """Two-sided Normal critical value for a confidence level.

    Args:
        confidence: Confidence level in (0, 1).
        exact: Use the exact Normal quantile instead of the literal 1.96.
            The literal is only defined for the 95% level.

    Returns:
        The critical value z.
    """
    if not 0.0 < confidence < 1.0:
        raise InvalidConfigError(f"confidence must be in (0, 1), got {confidence!r}")
    if not exact and confidence == DEFAULT_CONFIDENCE:
        return DEFAULT_Z
    return float(norm.ppf(0.5 + confidence / 2.0))


def standard_error(sigma: float, n: int) -> float:
    """SEM = sigma / sqrt(n)."""
    return sigma / math.sqrt(n)


def interval_width(sigma: float, n: int, z: float = DEFAULT_Z) -> float:
    """Width of the Gaussian confidence interval, 2 * z * sigma / sqrt(n).

    This is the single width formula shared by estimates, the simulation
    grid and the sample-size planner.
    """
    return 2.0 * z * standard_error(sigma, n)


def _require(samples: MetricSampleSet, minimum: int) -> np.ndarray:
    values = samples.values()
    if values.size == 0:
        raise EmptySampleError("sample set is empty")
    if values.size < minimum:
        raise DegenerateSpreadError(
            f"a spread estimate needs at least {minimum} samples, got {values.size}"
        )
    return values


def summarize(
    samples: MetricSampleSet,
    convention: SpreadConvention = SpreadConvention.POPULATION,
    spread: bool = True,
) -> SummaryStats:
    """Compute the mean and (optionally) standard deviation of a sample.

    The default population convention divides by n.

    Args:
        samples: Sample set (n >= 1, n >= 2 when spread is requested).
        convention: Divisor convention for sigma.
        spread: Whether to compute sigma.

    Returns:
        SummaryStats; sigma is None when spread is False.

    Raises:
        EmptySampleError: If the set is empty.
        DegenerateSpreadError: If spread is requested with a single sample.
    """
    convention = SpreadConvention(convention)
    values = _require(samples, 2 if spread else 1)

    # Constant samples get an exact mean and zero spread.
    if np.all(values == values[0]):
        mu = float(values[0])
        sigma = 0.0
    else:
        mu = float(np.mean(values))
        sigma = float(np.std(values, ddof=convention.ddof))

    return SummaryStats(
        mu=mu,
        sigma=sigma if spread else None,
        n=int(values.size),
        spread_convention=convention,
    )


def gaussian_from_moments(
    mu: float,
    sigma: float,
    n: int,
    z: float = DEFAULT_Z,
    convention: SpreadConvention = SpreadConvention.POPULATION,
) -> GaussianEstimate:
    """Build a GaussianEstimate from known mean, spread and size.

    Args:
        mu: Mean.
        sigma: Standard deviation (>= 0).
        n: Sample size (>= 1).
        z: Critical value (> 0).
        convention: Convention sigma was computed with (recorded only).

    Returns:
        The estimate.
    """
    if not (math.isfinite(z) and z > 0):
        raise InvalidConfigError(f"z must be positive and finite, got {z!r}")
    if not (math.isfinite(sigma) and sigma >= 0):
        raise InvalidConfigError(f"sigma must be non-negative and finite, got {sigma!r}")
    if n < 1:
        raise EmptySampleError(f"n must be at least 1, got {n}")

    sem = standard_error(sigma, n)
    return GaussianEstimate(
        mu=mu,
        sigma=sigma,
        sem=sem,
        ci_lo=mu - z * sem,
        ci_hi=mu + z * sem,
        width=2.0 * z * sem,
        z=z,
        n=n,
        convention=SpreadConvention(convention),
    )


def gaussian_estimate(
    samples: MetricSampleSet,
    z: float = DEFAULT_Z,
    convention: SpreadConvention = SpreadConvention.POPULATION,
) -> GaussianEstimate:
    """Estimate SEM and the confidence interval under the Gaussian assumption.

    Args:
        samples: Sample set with n >= 2.
        z: Critical value, 1.96 by default.
        convention: Divisor convention for sigma.

    Returns:
        GaussianEstimate.

    Raises:
        EmptySampleError: If the set is empty.
        DegenerateSpreadError: If n < 2.
    """
    stats = summarize(samples, convention)
    return gaussian_from_moments(stats.mu, stats.sigma, stats.n, z, stats.spread_convention)

