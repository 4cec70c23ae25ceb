# Precision estimation engine
from src.engine.rng import (
    substream,
    derive_seed,
    random_seed,
)
from src.engine.percentile import (
    percentile,
    weighted_percentile,
)
from src.engine.gaussian import (
    critical_value,
    standard_error,
    interval_width,
    summarize,
    gaussian_from_moments,
    gaussian_estimate,
)
from src.engine.bootstrap import (
    resample_means,
    bootstrap_estimate,
    exhaustive_bootstrap,
    BLOCK_SIZE,
)
