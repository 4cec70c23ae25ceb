"""Shared test helpers."""

from pathlib import Path

import numpy as np
import pytest

from src.models.sample import MetricSampleSet

FIXTURES = Path(__file__).parent / "fixtures"


def normal_sample(
    n: int,
    mu: float = 80.0,
    sigma: float = 10.0,
    seed: int = 0,
    exact: bool = False,
) -> MetricSampleSet:
    """Synthetic Normal scores.

    With exact=True the draw is shifted and scaled so its mean and
    population std equal mu and sigma.
    """
    values = np.random.default_rng(seed).normal(mu, sigma, size=n)
    if exact:
        values = (values - values.mean()) / values.std() * sigma + mu
    return MetricSampleSet.from_values(values, metric_name="score")


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture
def dice_110() -> MetricSampleSet:
    """110 Dice scores with mean near 80 and spread near 10."""
    from src.report.samples_io import load_samples

    with open(FIXTURES / "dice_110.csv", "rb") as f:
        return load_samples(f)
