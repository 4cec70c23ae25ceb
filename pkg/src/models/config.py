"""Pydantic configuration models.

Settings are validated once at the boundary. Use `build_config` to turn
pydantic validation failures into InvalidConfigError.
"""

from enum import Enum
from typing import List, Optional, Type, TypeVar

import pydantic
from pydantic import BaseModel, ConfigDict, Field, field_validator

from src.errors import InvalidConfigError

DEFAULT_RESAMPLES = 15000
DEFAULT_DRAWS = 100
DEFAULT_Z = 1.96
SEED_MAX = 2**64 - 1


class SpreadConvention(str, Enum):
    """Divisor used for the standard deviation."""
    POPULATION = "population"  # divide by n
    SAMPLE = "sample"          # divide by n - 1

    @property
    def ddof(self) -> int:
        """Delta degrees of freedom for numpy's std."""
        return 0 if self is SpreadConvention.POPULATION else 1


class PercentileMethod(str, Enum):
    """Rule for reading a percentile off sorted values."""
    LINEAR = "linear_interpolation"
    NEAREST_RANK = "nearest_rank"


class BootstrapConfig(BaseModel):
    """Settings for percentile-bootstrap estimation."""
    model_config = ConfigDict(frozen=True)

    resamples: int = Field(DEFAULT_RESAMPLES, ge=1, description="Number of resamples (M)")
    seed: int = Field(0, ge=0, le=SEED_MAX, description="Master seed")
    percentile_method: PercentileMethod = PercentileMethod.LINEAR
    workers: Optional[int] = Field(None, ge=1, description="Threads for resample blocks (default: CPU count)")


class SubsampleConfig(BaseModel):
    """Settings for the subsampling study.

    `sizes=None` selects the default sizes {10, 20, 30, 50, 100, n}
    restricted to k <= n. The bootstrap seed is not used: each draw
    derives its own from `seed`.
    """
    model_config = ConfigDict(frozen=True)

    sizes: Optional[List[int]] = Field(None, description="Subsample sizes K")
    draws: int = Field(DEFAULT_DRAWS, ge=1, description="Draws per size (J)")
    bootstrap: BootstrapConfig = Field(default_factory=BootstrapConfig)
    seed: int = Field(0, ge=0, le=SEED_MAX)
    z: float = Field(DEFAULT_Z, gt=0, allow_inf_nan=False)
    convention: SpreadConvention = SpreadConvention.POPULATION
    workers: Optional[int] = Field(None, ge=1, description="Processes for draws (default: CPU count)")

    @field_validator("sizes")
    @classmethod
    def _check_sizes(cls, sizes: Optional[List[int]]) -> Optional[List[int]]:
        if sizes is None:
            return None
        if any(k < 2 for k in sizes):
            raise ValueError("every subsample size must be at least 2")
        if len(set(sizes)) != len(sizes):
            raise ValueError("subsample sizes must be distinct")
        return sorted(sizes)


ConfigT = TypeVar("ConfigT", bound=BaseModel)


def build_config(model: Type[ConfigT], **values) -> ConfigT:
    """Validate `values` into `model`, raising InvalidConfigError on failure."""
    try:
        return model(**values)
    except pydantic.ValidationError as e:
        problems = "; ".join(
            f"{'.'.join(str(p) for p in err['loc']) or 'value'}: {err['msg']}" for err in e.errors()
        )
        raise InvalidConfigError(f"invalid {model.__name__}: {problems}") from e
