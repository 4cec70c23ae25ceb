"""Analytic precision grid and sample-size planner.

Both sides evaluate the same closed form, interval_width(sigma, k, z), so
planning for a grid cell's width returns exactly that cell's k. Nothing
here depends on the mean.
"""

import math
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

from src.engine.gaussian import interval_width, standard_error
from src.errors import InvalidGridAxisError, InvalidTargetError
from src.models.config import DEFAULT_Z

# Unrounded spread of the experimental Dice scores; labelled 10.75.
EXPERIMENTAL_SIGMA = 10.753

DEFAULT_K_VALUES = (10, 20, 30, 50, 100, 200, 300, 500, 1000)
DEFAULT_SIGMA_VALUES = (2.0, 5.0, 8.0, EXPERIMENTAL_SIGMA, 12.0, 15.0, 18.0)

MAX_REQUIRED_N = 2 ** 53


@dataclass(frozen=True)
class GridCell:
    k: int
    sigma: float
    sem: float
    width: float


@dataclass(frozen=True)
class SimulationGrid:
    """SEM and CI width over k (rows) by sigma (columns).

    Attributes:
        k_values: Sample sizes, in the order given.
        sigma_values: Spreads, in the order given.
        cells: cells[i][j] is the cell for (k_values[i], sigma_values[j]).
        z: Critical value.
    """
    k_values: Tuple[int, ...]
    sigma_values: Tuple[float, ...]
    cells: Tuple[Tuple[GridCell, ...], ...]
    z: float

    def cell(self, k: int, sigma: float) -> GridCell:
        """Look up a cell by axis values.

        Raises:
            KeyError: If (k, sigma) is not on the grid.
        """
        try:
            i = self.k_values.index(k)
            j = self.sigma_values.index(sigma)
        except ValueError:
            raise KeyError((k, sigma)) from None
        return self.cells[i][j]


def _check_axis(name: str, values: Sequence[float]) -> None:
    if len(values) == 0:
        raise InvalidGridAxisError(f"{name} must not be empty")
    bad = [v for v in values if not (math.isfinite(v) and v > 0)]
    if bad:
        raise InvalidGridAxisError(f"{name} must be positive, got {bad}")


def simulate_grid(
    k_values: Sequence[int] = DEFAULT_K_VALUES,
    sigma_values: Sequence[float] = DEFAULT_SIGMA_VALUES,
    z: float = DEFAULT_Z,
) -> SimulationGrid:
    """Evaluate SEM = sigma/sqrt(k) and w = 2*z*sigma/sqrt(k) on a grid.

    Args:
        k_values: Sample sizes (>= 1).
        sigma_values: Standard deviations (> 0).
        z: Critical value.

    Returns:
        SimulationGrid.

    Raises:
        InvalidGridAxisError: On empty axes, nonpositive entries or a
            nonpositive z.
    """
    _check_axis("k values", k_values)
    _check_axis("sigma values", sigma_values)
    if not (math.isfinite(z) and z > 0):
        raise InvalidGridAxisError(f"z must be positive, got {z!r}")
    if any(int(k) != k for k in k_values):
        raise InvalidGridAxisError(f"k values must be integers, got {list(k_values)}")

    ks = tuple(int(k) for k in k_values)
    sigmas = tuple(float(s) for s in sigma_values)
    cells = tuple(
        tuple(
            GridCell(k=k, sigma=s, sem=standard_error(s, k), width=interval_width(s, k, z))
            for s in sigmas
        )
        for k in ks
    )
    return SimulationGrid(k_values=ks, sigma_values=sigmas, cells=cells, z=z)


@dataclass(frozen=True)
class PlanResult:
    """Smallest sample size meeting a precision target.

    Exactly one of target_width and target_sem is set.
    """
    required_n: int
    sigma: float
    z: float
    achieved_width: float
    achieved_sem: float
    target_width: Optional[float] = None
    target_sem: Optional[float] = None


def _initial_guess(ratio: float) -> int:
    """ceil(ratio^2), or InvalidTargetError when n would not be representable.

    Above 2^53 consecutive integers share a float width, so the walk in
    _smallest_n could no longer move.
    """
    try:
        guess = math.ceil(ratio ** 2)
    except OverflowError:
        guess = None
    if guess is None or guess > MAX_REQUIRED_N:
        raise InvalidTargetError("target too small: required n is not representable")
    return max(1, guess)


def _smallest_n(initial: int, meets) -> int:
    """Walk from an analytic guess to the smallest n with meets(n)."""
    n = initial
    while not meets(n):
        n += 1
    while n > 1 and meets(n - 1):
        n -= 1
    return n


def plan_sample_size(
    sigma: float,
    target_width: Optional[float] = None,
    z: float = DEFAULT_Z,
    target_sem: Optional[float] = None,
) -> PlanResult:
    """Smallest n whose Gaussian CI width (or SEM) does not exceed the target.

    The analytic guess ceil((2*z*sigma/w)^2) is corrected against the width
    formula itself, so floating-point noise in the square cannot move the
    answer off the minimal integer.

    Args:
        sigma: Expected standard deviation (> 0).
        target_width: Largest acceptable CI width (> 0).
        z: Critical value (> 0).
        target_sem: Largest acceptable SEM (> 0), instead of a width.

    Returns:
        PlanResult.

    Raises:
        InvalidTargetError: On nonpositive inputs, a target so small that n
            exceeds 2^53, or unless exactly one target is given.
    """
    if (target_width is None) == (target_sem is None):
        raise InvalidTargetError("give exactly one of a target width and a target SEM")
    for name, value in (("sigma", sigma), ("z", z), ("target width", target_width), ("target SEM", target_sem)):
        if value is not None and not (math.isfinite(value) and value > 0):
            raise InvalidTargetError(f"{name} must be positive, got {value!r}")

    if target_width is not None:
        n = _smallest_n(
            _initial_guess(2.0 * z * sigma / target_width),
            lambda m: interval_width(sigma, m, z) <= target_width,
        )
    else:
        n = _smallest_n(
            _initial_guess(sigma / target_sem),
            lambda m: standard_error(sigma, m) <= target_sem,
        )

    return PlanResult(
        required_n=n,
        sigma=sigma,
        z=z,
        achieved_width=interval_width(sigma, n, z),
        achieved_sem=standard_error(sigma, n),
        target_width=target_width,
        target_sem=target_sem,
    )
