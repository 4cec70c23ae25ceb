"""Sample model: per-subject metric values.

A MetricSampleSet is the test set every statistic is computed over. Each
subject contributes one value (for Dice, a percentage between 0 and 100).
"""

import math
from dataclasses import dataclass, field
from typing import Dict, Iterable, Iterator, Optional, Sequence, Tuple

import numpy as np

from src.errors import DataError, DuplicateSubjectError, NonFiniteValueError, OutOfBoundsError

Bounds = Tuple[float, float]

DICE_BOUNDS: Bounds = (0.0, 100.0)

# Metrics with a natural value range. Anything else is unbounded.
METRIC_BOUNDS: Dict[str, Bounds] = {
    "dice": DICE_BOUNDS,
}


def bounds_for_metric(metric_name: str) -> Optional[Bounds]:
    """Return the default validation range for a metric, or None."""
    return METRIC_BOUNDS.get(metric_name.lower())


@dataclass(frozen=True)
class MetricSample:
    """One subject's metric value.

    Attributes:
        subject_id: Opaque, non-empty subject identifier.
        value: Finite metric value in metric units.
    """
    subject_id: str
    value: float

    def __post_init__(self):
        if not self.subject_id:
            raise DataError("subject_id must be non-empty")
        if not math.isfinite(self.value):
            raise NonFiniteValueError(
                f"non-finite value {self.value!r} for subject {self.subject_id!r}"
            )


@dataclass(frozen=True)
class MetricSampleSet:
    """An ordered, validated collection of metric samples.

    Subject ids are unique. If bounds are given, every value must lie in
    the closed interval [lo, hi]. An empty set is allowed here; statistical
    operations reject it.
    """
    samples: Tuple[MetricSample, ...]
    metric_name: str = "dice"
    bounds: Optional[Bounds] = None
    _values: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "samples", tuple(self.samples))

        seen = set()
        for sample in self.samples:
            if sample.subject_id in seen:
                raise DuplicateSubjectError(f"duplicate subject_id {sample.subject_id!r}")
            seen.add(sample.subject_id)

        if self.bounds is not None:
            lo, hi = self.bounds
            if lo > hi:
                raise DataError(f"invalid bounds [{lo}, {hi}]")
            for sample in self.samples:
                if not lo <= sample.value <= hi:
                    raise OutOfBoundsError(
                        f"value {sample.value!r} for subject {sample.subject_id!r} "
                        f"outside [{lo}, {hi}]"
                    )

        values = np.fromiter((s.value for s in self.samples), dtype=np.float64, count=len(self.samples))
        values.setflags(write=False)
        object.__setattr__(self, "_values", values)

    @classmethod
    def from_values(
        cls,
        values: Iterable[float],
        metric_name: str = "dice",
        bounds: Optional[Bounds] = None,
        prefix: str = "s",
    ) -> "MetricSampleSet":
        """Build a sample set from bare values, numbering subjects s001, s002, ...

        Args:
            values: Metric values in order.
            metric_name: Name of the metric.
            bounds: Validation range (no validation when None).
            prefix: Subject id prefix.

        Returns:
            A validated MetricSampleSet.
        """
        values = [float(v) for v in values]
        width = max(3, len(str(len(values))))
        samples = tuple(
            MetricSample(f"{prefix}{i + 1:0{width}d}", v) for i, v in enumerate(values)
        )
        return cls(samples, metric_name=metric_name, bounds=bounds)

    def __len__(self) -> int:
        return len(self.samples)

    def __iter__(self) -> Iterator[MetricSample]:
        return iter(self.samples)

    @property
    def n(self) -> int:
        """The test set size."""
        return len(self.samples)

    def values(self) -> np.ndarray:
        """Return the values as a read-only float64 array."""
        return self._values

    def subject_ids(self) -> Tuple[str, ...]:
        return tuple(s.subject_id for s in self.samples)

    def subset(self, indices: Sequence[int]) -> "MetricSampleSet":
        """Return a new set holding the samples at the given positions, in that order."""
        return MetricSampleSet(
            tuple(self.samples[int(i)] for i in indices),
            metric_name=self.metric_name,
            bounds=self.bounds,
        )
