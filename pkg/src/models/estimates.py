"""Estimate models: the results of precision computations.

All values are stored in full double precision. Rounding happens only when
a report is rendered.
"""

from dataclasses import dataclass
from typing import Optional, Tuple

from src.models.config import PercentileMethod, SpreadConvention


@dataclass(frozen=True)
class SummaryStats:
    """Mean and spread of a sample.

    Attributes:
        mu: Arithmetic mean.
        sigma: Standard deviation under `spread_convention`, or None when
            no spread was requested.
        n: Sample size.
        spread_convention: Divisor convention used for sigma.
    """
    mu: float
    sigma: Optional[float]
    n: int
    spread_convention: SpreadConvention = SpreadConvention.POPULATION


@dataclass(frozen=True)
class GaussianEstimate:
    """Closed-form precision under the Gaussian assumption.

    SEM = sigma / sqrt(n); CI = [mu - z*SEM, mu + z*SEM]; width = 2*z*SEM.

    Attributes:
        mu: Mean.
        sigma: Standard deviation.
        sem: Standard error of the mean.
        ci_lo: Lower confidence bound.
        ci_hi: Upper confidence bound.
        width: Confidence interval width.
        z: Critical value used.
        n: Sample size.
        convention: Spread convention sigma was computed with.
    """
    mu: float
    sigma: float
    sem: float
    ci_lo: float
    ci_hi: float
    width: float
    z: float
    n: int
    convention: SpreadConvention = SpreadConvention.POPULATION

    @property
    def ci(self) -> Tuple[float, float]:
        return (self.ci_lo, self.ci_hi)


@dataclass(frozen=True)
class BootstrapEstimate:
    """Percentile-bootstrap precision of the mean.

    Attributes:
        mu_star: Mean of the resample means.
        sem_star: Standard deviation of the resample means (divide by M).
        ci_lo_star: 2.5th percentile of the resample means.
        ci_hi_star: 97.5th percentile of the resample means.
        width_star: ci_hi_star - ci_lo_star.
        resamples: Number of resamples M (n**n for the exhaustive oracle).
        seed: Master seed, or None for the exhaustive oracle.
        n: Sample size.
        percentile_method: Percentile rule used for the bounds.
    """
    mu_star: float
    sem_star: float
    ci_lo_star: float
    ci_hi_star: float
    width_star: float
    resamples: int
    seed: Optional[int]
    n: int
    percentile_method: PercentileMethod = PercentileMethod.LINEAR

    @property
    def ci_star(self) -> Tuple[float, float]:
        return (self.ci_lo_star, self.ci_hi_star)
