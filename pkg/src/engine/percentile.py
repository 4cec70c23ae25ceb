"""Percentiles of sorted values.

Two rules are supported:

- linear interpolation: h = (M - 1) * q, interpolate between the order
  statistics at floor(h) and ceil(h) (0-based). numpy's "linear".
- nearest rank: the order statistic at rank ceil(q * M) (1-based), clamped
  to [1, M]. numpy's "inverted_cdf".

numpy has no quantile over integer multiplicities, so weighted_percentile
walks the cumulative counts itself with the same two rules.
"""

import math
from typing import Sequence

import numpy as np

from src.errors import EmptyListError, QOutOfRangeError
from src.models.config import PercentileMethod

NUMPY_METHODS = {
    PercentileMethod.LINEAR: "linear",
    PercentileMethod.NEAREST_RANK: "inverted_cdf",
}


def _check_q(q: float) -> None:
    if not 0.0 <= q <= 1.0:
        raise QOutOfRangeError(f"q must be in [0, 1], got {q!r}")


def percentile(
    sorted_values: Sequence[float],
    q: float,
    method: PercentileMethod = PercentileMethod.LINEAR,
) -> float:
    """Read the q-th quantile off values sorted in ascending order.

    Args:
        sorted_values: Non-empty values, sorted ascending.
        q: Quantile in [0, 1].
        method: Percentile rule.

    Returns:
        The percentile value.

    Raises:
        EmptyListError: If there are no values.
        QOutOfRangeError: If q is outside [0, 1].
    """
    values = np.asarray(sorted_values, dtype=np.float64)
    if values.size == 0:
        raise EmptyListError("cannot take a percentile of an empty list")
    _check_q(q)
    return float(np.quantile(values, q, method=NUMPY_METHODS[PercentileMethod(method)]))


def _position(q: float, total: int, method: PercentileMethod):
    """Return (lo, hi, fraction) 0-based order-statistic positions."""
    if method is PercentileMethod.LINEAR:
        h = (total - 1) * q
        lo = math.floor(h)
        return lo, math.ceil(h), h - lo
    rank = min(max(math.ceil(q * total), 1), total)
    return rank - 1, rank - 1, 0.0


def weighted_percentile(
    sorted_values: Sequence[float],
    counts: Sequence[int],
    q: float,
    method: PercentileMethod = PercentileMethod.LINEAR,
) -> float:
    """Percentile of a distribution given as sorted values with integer multiplicities.

    Equivalent to expanding each value `count` times and calling `percentile`,
    without materializing the expansion.

    Args:
        sorted_values: Values sorted ascending.
        counts: Positive integer multiplicity for each value.
        q: Quantile in [0, 1].
        method: Percentile rule.

    Returns:
        The percentile value.
    """
    values = np.asarray(sorted_values, dtype=np.float64)
    cumulative = np.cumsum(np.asarray(counts, dtype=np.int64))
    if values.size == 0 or cumulative[-1] == 0:
        raise EmptyListError("cannot take a percentile of an empty distribution")
    _check_q(q)

    total = int(cumulative[-1])
    lo, hi, fraction = _position(q, total, PercentileMethod(method))
    # The i-th order statistic is the first value whose cumulative count exceeds i.
    v_lo = values[int(np.searchsorted(cumulative, lo, side="right"))]
    v_hi = values[int(np.searchsorted(cumulative, hi, side="right"))]
    if lo == hi or v_lo == v_hi:
        return float(v_lo)
    return float(v_lo + fraction * (v_hi - v_lo))
