# Core domain models
from .sample import DICE_BOUNDS, MetricSample, MetricSampleSet, bounds_for_metric
from .config import (
    BootstrapConfig,
    PercentileMethod,
    SpreadConvention,
    SubsampleConfig,
    build_config,
)
from .estimates import BootstrapEstimate, GaussianEstimate, SummaryStats

__all__ = [
    "DICE_BOUNDS",
    "MetricSample",
    "MetricSampleSet",
    "bounds_for_metric",
    "BootstrapConfig",
    "PercentileMethod",
    "SpreadConvention",
    "SubsampleConfig",
    "build_config",
    "BootstrapEstimate",
    "GaussianEstimate",
    "SummaryStats",
]
