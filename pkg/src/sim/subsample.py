"""Subsampling study.

Repeatedly draws size-k subsets of a test set without replacement,
estimates precision on each with both the Gaussian formula and the
bootstrap, and aggregates every statistic across draws as mean ± std.
"""

import logging
import multiprocessing
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from src.engine.bootstrap import bootstrap_estimate
from src.engine.gaussian import gaussian_estimate
from src.engine.rng import SUBSAMPLE_BOOTSTRAP_STREAM, SUBSAMPLE_STREAM, derive_seed, substream
from src.errors import EmptySampleError, InvalidConfigError, SizeExceedsPopulationError
from src.models.config import PercentileMethod, SpreadConvention, SubsampleConfig
from src.models.sample import MetricSampleSet

logger = logging.getLogger(__name__)

DEFAULT_SIZES = (10, 20, 30, 50, 100)

# Statistics recorded for every draw, in report column order.
STATISTICS = ("mu", "sigma", "sem", "width", "mu_star", "sem_star", "width_star")


@dataclass(frozen=True)
class Aggregate:
    """Mean and population standard deviation of one statistic across draws."""
    mean: float
    std: float


@dataclass(frozen=True)
class SubsampleRow:
    """Aggregates for one subsample size k.

    Attributes:
        k: Subsample size.
        draws: Number of draws aggregated (J).
        mu, sigma, sem, width: Gaussian-assumption statistics.
        mu_star, sem_star, width_star: Bootstrap statistics.
    """
    k: int
    draws: int
    mu: Aggregate
    sigma: Aggregate
    sem: Aggregate
    width: Aggregate
    mu_star: Aggregate
    sem_star: Aggregate
    width_star: Aggregate

    def get(self, statistic: str) -> Aggregate:
        return getattr(self, statistic)


@dataclass(frozen=True)
class SubsampleReport:
    """Study results, one row per size k in ascending order.

    Attributes:
        rows: Per-size aggregates.
        n: Size of the full test set.
        seed: Master seed.
        draws: Draws per size (J).
        resamples: Bootstrap resamples per draw (M).
        z: Critical value.
        convention: Spread convention for per-draw sigma.
        percentile_method: Bootstrap percentile rule.
    """
    rows: Tuple[SubsampleRow, ...]
    n: int
    seed: int
    draws: int
    resamples: int
    z: float
    convention: SpreadConvention
    percentile_method: PercentileMethod

    @property
    def sizes(self) -> Tuple[int, ...]:
        return tuple(row.k for row in self.rows)

    def row(self, k: int) -> SubsampleRow:
        """Return the row for size k.

        Raises:
            KeyError: If k was not part of the study.
        """
        for row in self.rows:
            if row.k == k:
                return row
        raise KeyError(k)


def aggregate(values: Sequence[float]) -> Aggregate:
    """Mean and population std; identical values give std exactly 0."""
    arr = np.asarray(values, dtype=np.float64)
    if np.all(arr == arr[0]):
        return Aggregate(mean=float(arr[0]), std=0.0)
    return Aggregate(mean=float(np.mean(arr)), std=float(np.std(arr)))


def draw_subsample(samples: MetricSampleSet, k: int, draw_seed: int) -> MetricSampleSet:
    """Draw k distinct subjects uniformly without replacement.

    Selected subjects keep their original order, so k = n returns the full
    set unchanged.

    Args:
        samples: The full test set.
        k: Subsample size, 1 <= k <= n.
        draw_seed: Seed fully determining the draw.

    Returns:
        The subsample.

    Raises:
        SizeExceedsPopulationError: If k > n.
    """
    n = len(samples)
    if k > n:
        raise SizeExceedsPopulationError(f"cannot draw {k} subjects from a set of {n}")
    if k < 1:
        raise InvalidConfigError(f"subsample size must be at least 1, got {k}")

    rng = substream(draw_seed, SUBSAMPLE_STREAM)
    indices = np.sort(rng.choice(n, size=k, replace=False))
    return samples.subset(indices)


def resolve_sizes(config: SubsampleConfig, n: int) -> List[int]:
    """Return the study's sizes for a test set of size n.

    Raises:
        InvalidConfigError: If an explicit size falls outside [2, n].
    """
    if config.sizes is None:
        if n < 2:
            raise InvalidConfigError(f"a subsampling study needs at least 2 subjects, got {n}")
        return sorted({k for k in DEFAULT_SIZES if k <= n} | {n})

    too_large = [k for k in config.sizes if k > n]
    if too_large:
        raise InvalidConfigError(f"subsample sizes {too_large} exceed the test set size {n}")
    return list(config.sizes)


def _run_draw(args: Tuple[MetricSampleSet, int, int, SubsampleConfig]) -> Tuple[float, ...]:
    """Worker: estimate every statistic on draw j of size k.

    Args:
        args: Tuple of (samples, k, j, config).

    Returns:
        The statistics in STATISTICS order.
    """
    samples, k, j, config = args
    subset = draw_subsample(samples, k, derive_seed(config.seed, SUBSAMPLE_STREAM, k, j))

    gaussian = gaussian_estimate(subset, z=config.z, convention=config.convention)
    bootstrap_config = config.bootstrap.model_copy(
        update={"seed": derive_seed(config.seed, SUBSAMPLE_BOOTSTRAP_STREAM, k, j), "workers": 1}
    )
    boot = bootstrap_estimate(subset, bootstrap_config)

    return (
        gaussian.mu,
        gaussian.sigma,
        gaussian.sem,
        gaussian.width,
        boot.mu_star,
        boot.sem_star,
        boot.width_star,
    )


def subsample_study(
    samples: MetricSampleSet,
    config: Optional[SubsampleConfig] = None,
) -> SubsampleReport:
    """Run the subsampling study.

    For every size k and every draw j, the same subsample feeds both the
    Gaussian and the bootstrap estimate. Draw seeds derive from
    (seed, k, j), so adding sizes never changes existing rows. Draws may run
    in parallel processes; results are collected in submission order.

    Args:
        samples: The full test set.
        config: Study settings.

    Returns:
        SubsampleReport with one row per size.

    Raises:
        EmptySampleError: If the set is empty.
        InvalidConfigError: If a size is invalid for the set.
    """
    config = config or SubsampleConfig()
    n = len(samples)
    if n == 0:
        raise EmptySampleError("cannot subsample an empty sample set")
    sizes = resolve_sizes(config, n)

    args_list = [(samples, k, j, config) for k in sizes for j in range(config.draws)]

    workers = config.workers or multiprocessing.cpu_count()
    workers = min(workers, max(len(args_list), 1))
    logger.info(
        "subsample study: n=%d sizes=%s draws=%d resamples=%d workers=%d",
        n, sizes, config.draws, config.bootstrap.resamples, workers,
    )

    if workers > 1:
        chunksize = max(1, len(args_list) // (workers * 4))
        with ProcessPoolExecutor(max_workers=workers) as executor:
            results = list(executor.map(_run_draw, args_list, chunksize=chunksize))
    else:
        results = [_run_draw(args) for args in args_list]

    rows = []
    for i, k in enumerate(sizes):
        block = results[i * config.draws:(i + 1) * config.draws]
        columns = dict(zip(STATISTICS, zip(*block)))
        rows.append(SubsampleRow(
            k=k,
            draws=config.draws,
            **{name: aggregate(columns[name]) for name in STATISTICS},
        ))
        logger.info("k=%d: mean w=%.4f mean w*=%.4f", k, rows[-1].width.mean, rows[-1].width_star.mean)

    return SubsampleReport(
        rows=tuple(rows),
        n=n,
        seed=config.seed,
        draws=config.draws,
        resamples=config.bootstrap.resamples,
        z=config.z,
        convention=config.convention,
        percentile_method=config.bootstrap.percentile_method,
    )
