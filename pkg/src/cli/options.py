"""Command-line flags, environment overrides and the resolved invocation.

Precedence for seed, resamples and workers: explicit flag, then the
SEGPRECISION_* environment variable, then the built-in default. A seeded
command with no seed anywhere draws a random one, which the output header
records.
"""

import argparse
import os
from enum import Enum
from typing import List, Mapping, Optional, Sequence

from pydantic import BaseModel, ConfigDict, Field

from src.engine.gaussian import critical_value
from src.engine.rng import random_seed
from src.errors import InvalidConfigError
from src.models.config import (
    DEFAULT_DRAWS,
    DEFAULT_RESAMPLES,
    DEFAULT_Z,
    SEED_MAX,
    PercentileMethod,
    SpreadConvention,
    build_config,
)
from src.report.kde import DEFAULT_GRID_POINTS
from src.report.render import OutputFormat
from src.report.samples_io import SampleFormat
from src.sim.grid import DEFAULT_K_VALUES, DEFAULT_SIGMA_VALUES

ENV_SEED = "SEGPRECISION_SEED"
ENV_RESAMPLES = "SEGPRECISION_RESAMPLES"
ENV_WORKERS = "SEGPRECISION_WORKERS"


class Command(str, Enum):
    ESTIMATE = "estimate"
    SUBSAMPLE = "subsample"
    SIMULATE = "simulate"
    PLAN = "plan"
    DICE = "dice"
    KDE = "kde"


SEEDED_COMMANDS = {Command.ESTIMATE, Command.SUBSAMPLE}


class CliInvocation(BaseModel):
    """Fully resolved settings for one command run."""
    model_config = ConfigDict(frozen=True)

    command: Command
    input: Optional[str] = Field(None, description='Sample file, "-" for stdin')
    input_format: Optional[SampleFormat] = None
    metric: str = "dice"
    output: Optional[str] = Field(None, description="Output path, stdout when None")
    output_format: OutputFormat = OutputFormat.MARKDOWN
    verbose: int = Field(0, ge=0)

    seed: Optional[int] = Field(None, ge=0, le=SEED_MAX)
    resamples: int = Field(DEFAULT_RESAMPLES, ge=1)
    percentile_method: PercentileMethod = PercentileMethod.LINEAR
    workers: Optional[int] = Field(None, ge=1)

    z: float = Field(DEFAULT_Z, gt=0, allow_inf_nan=False)
    convention: SpreadConvention = SpreadConvention.POPULATION

    sizes: Optional[List[int]] = None
    draws: int = Field(DEFAULT_DRAWS, ge=1)

    k_values: List[int] = Field(default_factory=lambda: list(DEFAULT_K_VALUES))
    sigma_values: List[float] = Field(default_factory=lambda: list(DEFAULT_SIGMA_VALUES))

    sigma: Optional[float] = None
    width: Optional[float] = None
    target_sem: Optional[float] = None

    pairs: Optional[str] = None
    labels: Optional[List[int]] = None
    empty_as_100: bool = False

    bandwidth: Optional[float] = None
    grid_points: int = Field(DEFAULT_GRID_POINTS, ge=2)
    bins: Optional[int] = Field(None, ge=1)


class _Parser(argparse.ArgumentParser):
    """ArgumentParser that raises instead of exiting on bad flags."""

    def error(self, message: str):
        raise InvalidConfigError(message)


def _list_of(convert):
    def parse(text: str):
        try:
            return [convert(part) for part in text.split(",") if part.strip()]
        except ValueError:
            raise argparse.ArgumentTypeError(f"expected a comma-separated list, got {text!r}") from None
    parse.__name__ = f"{convert.__name__} list"
    return parse


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--out", dest="output", help="Write output here instead of stdout")
    common.add_argument("--output-format", choices=[f.value for f in OutputFormat], default="markdown")
    common.add_argument("-v", "--verbose", action="count", default=0, help="-v for INFO, -vv for DEBUG")

    samples = _Parser(add_help=False)
    samples.add_argument("--input", required=True, help='Sample file (csv or json), "-" for stdin')
    samples.add_argument("--format", dest="input_format", choices=[f.value for f in SampleFormat],
                         help="Input format (default: from the file suffix)")
    samples.add_argument("--metric", default="dice", help="Metric name; dice values must lie in [0, 100]")

    gaussian = _Parser(add_help=False)
    gaussian.add_argument("--z", type=float, help=f"Critical value (default {DEFAULT_Z})")
    gaussian.add_argument("--exact-z", action="store_true", help="Use the exact Normal quantile for 95%%")

    seeded = _Parser(add_help=False)
    seeded.add_argument("--seed", type=int, help=f"Master seed (env {ENV_SEED}; random when unset)")
    seeded.add_argument("--resamples", type=int, help=f"Bootstrap resamples M (env {ENV_RESAMPLES})")
    seeded.add_argument("--percentile-method", choices=[m.value for m in PercentileMethod],
                        default=PercentileMethod.LINEAR.value)
    seeded.add_argument("--convention", choices=[c.value for c in SpreadConvention],
                        default=SpreadConvention.POPULATION.value)
    seeded.add_argument("--workers", type=int, help=f"Parallel workers (env {ENV_WORKERS}; default CPU count)")

    parser = _Parser(prog="segprecision", description="Precision of per-sample evaluation metrics")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sub.add_parser("estimate", parents=[common, samples, gaussian, seeded],
                   help="Gaussian and bootstrap SEM and CI on the full test set")

    p = sub.add_parser("subsample", parents=[common, samples, gaussian, seeded],
                       help="Precision across subsample sizes")
    p.add_argument("--sizes", type=_list_of(int), help="Subsample sizes K, comma list")
    p.add_argument("--draws", type=int, default=DEFAULT_DRAWS, help="Draws per size J")

    p = sub.add_parser("simulate", parents=[common, gaussian], help="SEM and CI width over a (k, sigma) grid")
    p.add_argument("--k-values", type=_list_of(int))
    p.add_argument("--sigma-values", type=_list_of(float))

    p = sub.add_parser("plan", parents=[common, gaussian], help="Sample size for a target CI width or SEM")
    p.add_argument("--sigma", type=float, required=True)
    target = p.add_mutually_exclusive_group(required=True)
    target.add_argument("--width", type=float)
    target.add_argument("--target-sem", type=float)

    p = sub.add_parser("dice", parents=[common], help="Dice per subject from label volumes")
    p.add_argument("--pairs", required=True, help="CSV with columns subject_id,pred,gt")
    p.add_argument("--labels", type=_list_of(int), required=True, help="Foreground labels to merge")
    p.add_argument("--empty-as-100", action="store_true", help="Score both-empty pairs as 100")

    p = sub.add_parser("kde", parents=[common, samples], help="Kernel density curve of the values")
    p.add_argument("--bandwidth", type=float)
    p.add_argument("--grid-points", type=int, default=DEFAULT_GRID_POINTS)
    p.add_argument("--bins", type=int, help="Also emit a histogram with this many bins")

    return parser


def _env_int(environ: Mapping[str, str], name: str) -> Optional[int]:
    raw = environ.get(name)
    if raw is None or raw.strip() == "":
        return None
    try:
        return int(raw)
    except ValueError:
        raise InvalidConfigError(f"{name} must be an integer, got {raw!r}") from None


def _first(*values):
    for value in values:
        if value is not None:
            return value
    return None


def parse_invocation(argv: Optional[Sequence[str]] = None, environ: Optional[Mapping[str, str]] = None) -> CliInvocation:
    """Parse flags and environment into a CliInvocation.

    Raises:
        InvalidConfigError: On unknown or invalid flags or environment values.
    """
    environ = os.environ if environ is None else environ
    args = vars(build_parser().parse_args(argv))
    command = Command(args.pop("command"))

    values = {key: value for key, value in args.items() if value is not None}
    values["command"] = command

    if "z" not in values and values.pop("exact_z", False):
        values["z"] = critical_value(exact=True)
    values.pop("exact_z", None)

    if command in SEEDED_COMMANDS:
        seed = _first(values.get("seed"), _env_int(environ, ENV_SEED))
        values["seed"] = random_seed() if seed is None else seed
        resamples = _first(values.get("resamples"), _env_int(environ, ENV_RESAMPLES))
        if resamples is not None:
            values["resamples"] = resamples
        workers = _first(values.get("workers"), _env_int(environ, ENV_WORKERS))
        if workers is not None:
            values["workers"] = workers

    return build_config(CliInvocation, **values)
