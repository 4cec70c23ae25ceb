"""Percentile-bootstrap estimation of the SEM and CI of the mean.

M resamples of size n are drawn with replacement. SEM* is the standard
deviation of the M resample means (divide by M) and CI* is read off the
2.5th and 97.5th percentiles of the sorted means.

Resamples are generated in fixed blocks of BLOCK_SIZE. Block b draws from
substream(seed, BOOTSTRAP_STREAM, b), so resample m depends only on
(seed, m). Blocks may run on any number of threads; they are concatenated in
block order and reduced once, so results are bitwise identical for every
worker count.
"""

import logging
import math
import os
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from itertools import combinations_with_replacement
from typing import List, Optional, Tuple, Union

import numpy as np

from src.engine.percentile import percentile, weighted_percentile
from src.engine.rng import BOOTSTRAP_STREAM, substream
from src.errors import EmptySampleError, TooLargeForEnumerationError
from src.models.config import BootstrapConfig, PercentileMethod
from src.models.estimates import BootstrapEstimate
from src.models.sample import MetricSampleSet

logger = logging.getLogger(__name__)

BLOCK_SIZE = 1024
CI_LOWER_Q = 0.025
CI_UPPER_Q = 0.975
DEFAULT_ENUMERATION_CAP = 2**24


def _require_values(samples: MetricSampleSet) -> np.ndarray:
    values = samples.values()
    if values.size == 0:
        raise EmptySampleError("cannot bootstrap an empty sample set")
    return values


def _block_means(values: np.ndarray, seed: int, block: int, count: int) -> np.ndarray:
    """Means of `count` resamples from block `block`."""
    rng = substream(seed, BOOTSTRAP_STREAM, block)
    indices = rng.integers(0, values.size, size=(count, values.size))
    return values[indices].mean(axis=1)


def resample_means(
    samples: MetricSampleSet,
    config: Optional[BootstrapConfig] = None,
) -> np.ndarray:
    """Draw M with-replacement resamples and return their means in resample order.

    Args:
        samples: Sample set (n >= 1).
        config: Bootstrap settings (default: M=15000, seed 0).

    Returns:
        Array of M resample means.

    Raises:
        EmptySampleError: If the set is empty.
    """
    config = config or BootstrapConfig()
    values = _require_values(samples)

    blocks = [
        (b, min(BLOCK_SIZE, config.resamples - b * BLOCK_SIZE))
        for b in range(math.ceil(config.resamples / BLOCK_SIZE))
    ]
    workers = config.workers or os.cpu_count() or 1
    workers = min(workers, len(blocks))

    logger.debug(
        "bootstrap: n=%d M=%d blocks=%d workers=%d", values.size, config.resamples, len(blocks), workers
    )

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            parts = list(executor.map(lambda bc: _block_means(values, config.seed, *bc), blocks))
    else:
        parts = [_block_means(values, config.seed, b, count) for b, count in blocks]

    return np.concatenate(parts)


def estimate_from_means(
    means: np.ndarray,
    n: int,
    seed: Optional[int],
    method: PercentileMethod = PercentileMethod.LINEAR,
) -> BootstrapEstimate:
    """Reduce resample means to a BootstrapEstimate."""
    ordered = np.sort(means)
    if ordered[0] == ordered[-1]:
        mu_star = float(ordered[0])
        sem_star = 0.0
    else:
        mu_star = float(np.mean(means))
        sem_star = float(np.std(means))

    ci_lo = percentile(ordered, CI_LOWER_Q, method)
    ci_hi = percentile(ordered, CI_UPPER_Q, method)
    return BootstrapEstimate(
        mu_star=mu_star,
        sem_star=sem_star,
        ci_lo_star=ci_lo,
        ci_hi_star=ci_hi,
        width_star=ci_hi - ci_lo,
        resamples=int(means.size),
        seed=seed,
        n=n,
        percentile_method=PercentileMethod(method),
    )


def bootstrap_estimate(
    samples: MetricSampleSet,
    config: Optional[BootstrapConfig] = None,
    return_means: bool = False,
) -> Union[BootstrapEstimate, Tuple[BootstrapEstimate, np.ndarray]]:
    """Estimate SEM* and CI* of the mean by the percentile bootstrap.

    Args:
        samples: Sample set (n >= 1).
        config: Bootstrap settings (default: M=15000, seed 0).
        return_means: Also return the resample means (e.g. for plotting).

    Returns:
        BootstrapEstimate, or (estimate, means) when return_means is True.

    Raises:
        EmptySampleError: If the set is empty.
    """
    config = config or BootstrapConfig()
    means = resample_means(samples, config)
    estimate = estimate_from_means(means, len(samples), config.seed, config.percentile_method)
    if return_means:
        return estimate, means
    return estimate


def exhaustive_bootstrap(
    samples: MetricSampleSet,
    cap: int = DEFAULT_ENUMERATION_CAP,
    method: PercentileMethod = PercentileMethod.LINEAR,
) -> BootstrapEstimate:
    """Exact bootstrap over all n**n equiprobable resamples.

    Resamples that differ only in order have the same mean, so the
    enumeration runs over multisets of indices weighted by their multinomial
    multiplicity: C(2n-1, n) terms instead of n**n.

    Args:
        samples: Sample set; n**n must not exceed `cap`.
        cap: Largest number of ordered resamples allowed.
        method: Percentile rule for the exact bounds.

    Returns:
        BootstrapEstimate with resamples = n**n and seed None.

    Raises:
        EmptySampleError: If the set is empty.
        TooLargeForEnumerationError: If n**n exceeds cap.
    """
    values = _require_values(samples)
    n = int(values.size)
    total = n ** n
    if total > cap:
        raise TooLargeForEnumerationError(f"{n}**{n} = {total} resamples exceeds the cap of {cap}")

    n_factorial = math.factorial(n)
    means: List[float] = []
    counts: List[int] = []
    for combo in combinations_with_replacement(range(n), n):
        picks = Counter(combo)
        multiplicity = n_factorial
        for c in picks.values():
            multiplicity //= math.factorial(c)
        means.append(math.fsum(values[i] * c for i, c in picks.items()) / n)
        counts.append(multiplicity)

    order = np.argsort(means, kind="stable")
    sorted_means = np.asarray(means)[order]
    sorted_counts = np.asarray(counts, dtype=np.int64)[order]

    if sorted_means[0] == sorted_means[-1]:
        mu_star = float(sorted_means[0])
        sem_star = 0.0
    else:
        mu_star = math.fsum(m * c for m, c in zip(means, counts)) / total
        sem_star = math.sqrt(math.fsum(c * (m - mu_star) ** 2 for m, c in zip(means, counts)) / total)

    ci_lo = weighted_percentile(sorted_means, sorted_counts, CI_LOWER_Q, method)
    ci_hi = weighted_percentile(sorted_means, sorted_counts, CI_UPPER_Q, method)
    return BootstrapEstimate(
        mu_star=mu_star,
        sem_star=sem_star,
        ci_lo_star=ci_lo,
        ci_hi_star=ci_hi,
        width_star=ci_hi - ci_lo,
        resamples=total,
        seed=None,
        n=n,
        percentile_method=PercentileMethod(method),
    )
