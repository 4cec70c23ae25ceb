"""Command dispatch for the segprecision CLI.

Exit codes: 0 success, 2 invalid flags or configuration, 3 input data
that cannot support the computation, 4 anything else. Errors are reported
on stderr as a single line ``error: <category>: <message>``.
"""

import csv
import io
import logging
import sys
from pathlib import Path
from typing import Dict, List, Optional, Sequence, TextIO

from src.cli.options import CliInvocation, Command, parse_invocation
from src.engine.bootstrap import bootstrap_estimate
from src.engine.gaussian import gaussian_estimate
from src.errors import InputFileError, ParseError, PrecisionError
from src.metrics.dice import dice_from_volumes
from src.metrics.volume import load_volume
from src.models.config import BootstrapConfig, SubsampleConfig, build_config
from src.models.sample import DICE_BOUNDS, MetricSample, MetricSampleSet
from src.report.kde import histogram, kde
from src.report.render import OutputFormat, render_provenance, render_report
from src.report.samples_io import SampleFormat, read_samples, save_samples
from src.sim.grid import plan_sample_size, simulate_grid
from src.sim.subsample import subsample_study

logger = logging.getLogger(__name__)

PAIRS_HEADER = ["subject_id", "pred", "gt"]
EXIT_OK = 0
EXIT_INTERNAL = 4


def _bootstrap_config(inv: CliInvocation) -> BootstrapConfig:
    return build_config(
        BootstrapConfig,
        resamples=inv.resamples,
        seed=inv.seed,
        percentile_method=inv.percentile_method,
        workers=inv.workers,
    )


def _load(inv: CliInvocation) -> MetricSampleSet:
    samples = read_samples(inv.input, inv.input_format, metric_name=inv.metric)
    logger.info("loaded %d samples from %s", len(samples), inv.input)
    return samples


def _seeded_settings(inv: CliInvocation, n: int) -> Dict[str, object]:
    return {
        "command": inv.command.value,
        "n": n,
        "seed": inv.seed,
        "resamples": inv.resamples,
        "z": repr(inv.z),
        "convention": inv.convention.value,
        "percentile_method": inv.percentile_method.value,
    }


def run_estimate(inv: CliInvocation) -> str:
    samples = _load(inv)
    gaussian = gaussian_estimate(samples, z=inv.z, convention=inv.convention)
    boot = bootstrap_estimate(samples, _bootstrap_config(inv))
    header = render_provenance(_seeded_settings(inv, len(samples)), inv.output_format)
    return header + render_report((gaussian, boot), inv.output_format)


def run_subsample(inv: CliInvocation) -> str:
    samples = _load(inv)
    config = build_config(
        SubsampleConfig,
        sizes=inv.sizes,
        draws=inv.draws,
        bootstrap=_bootstrap_config(inv),
        seed=inv.seed,
        z=inv.z,
        convention=inv.convention,
        workers=inv.workers,
    )
    report = subsample_study(samples, config)
    settings = _seeded_settings(inv, len(samples))
    settings["sizes"] = ",".join(str(k) for k in report.sizes)
    settings["draws"] = inv.draws
    header = render_provenance(settings, inv.output_format)
    return header + render_report(report, inv.output_format)


def run_simulate(inv: CliInvocation) -> str:
    grid = simulate_grid(inv.k_values, inv.sigma_values, z=inv.z)
    header = render_provenance({"command": inv.command.value, "z": repr(inv.z)}, inv.output_format)
    return header + render_report(grid, inv.output_format)


def run_plan(inv: CliInvocation) -> str:
    plan = plan_sample_size(inv.sigma, target_width=inv.width, z=inv.z, target_sem=inv.target_sem)
    header = render_provenance({"command": inv.command.value, "z": repr(inv.z)}, inv.output_format)
    return header + render_report(plan, inv.output_format)


def _read_pairs(path: Path) -> List[List[str]]:
    with open(path, newline="", encoding="utf-8") as f:
        reader = csv.reader(f)
        header = next(reader, None)
        if header != PAIRS_HEADER:
            raise ParseError(f"{path}: expected header {','.join(PAIRS_HEADER)!r}, got {header!r}", line=1)
        rows = []
        for row in reader:
            if not row:
                continue
            if len(row) != 3:
                raise ParseError(f"{path}: expected 3 fields, got {len(row)}", line=reader.line_num)
            rows.append(row)
    return rows


def run_dice(inv: CliInvocation) -> str:
    """Dice per subject, written as a samples CSV that `estimate` accepts."""
    pairs_path = Path(inv.pairs)
    base = pairs_path.parent
    empty_value = 100.0 if inv.empty_as_100 else None
    labels = set(inv.labels)
    # stdout stays a bare samples file, so the settings go to the log.
    logger.info(
        "dice: pairs=%s labels=%s empty_as_100=%s",
        pairs_path, ",".join(str(label) for label in sorted(labels)), inv.empty_as_100,
    )

    samples = []
    for subject_id, pred_path, gt_path in _read_pairs(pairs_path):
        value = dice_from_volumes(
            load_volume(base / pred_path), load_volume(base / gt_path), labels, empty_value=empty_value
        )
        logger.debug("%s: dice=%r", subject_id, value)
        samples.append(MetricSample(subject_id, value))

    result = MetricSampleSet(tuple(samples), metric_name="dice", bounds=DICE_BOUNDS)
    buf = io.StringIO()
    save_samples(result, buf, SampleFormat.CSV)
    return buf.getvalue()


def run_kde(inv: CliInvocation) -> str:
    """Density curve, followed by a histogram block when --bins is given."""
    samples = _load(inv)
    curve = kde(samples, bandwidth=inv.bandwidth, grid_points=inv.grid_points)
    settings = {"command": inv.command.value, "n": len(samples), "grid_points": inv.grid_points}
    if inv.bins is not None:
        settings["bins"] = inv.bins
    text = render_provenance(settings, OutputFormat.CSV) + render_report(curve)
    if inv.bins is not None:
        text += "# histogram\n" + render_report(histogram(samples, inv.bins))
    return text


HANDLERS = {
    Command.ESTIMATE: run_estimate,
    Command.SUBSAMPLE: run_subsample,
    Command.SIMULATE: run_simulate,
    Command.PLAN: run_plan,
    Command.DICE: run_dice,
    Command.KDE: run_kde,
}


def run(invocation: CliInvocation, stdout: Optional[TextIO] = None) -> int:
    """Execute one invocation and write its output.

    Returns:
        Exit status 0; failures propagate as PrecisionError.
    """
    text = HANDLERS[invocation.command](invocation)
    if invocation.output:
        with open(invocation.output, "w", encoding="utf-8", newline="\n") as f:
            f.write(text)
    else:
        (stdout or sys.stdout).write(text)
    return EXIT_OK


def configure_logging(verbose: int) -> None:
    level = logging.WARNING
    if verbose == 1:
        level = logging.INFO
    elif verbose >= 2:
        level = logging.DEBUG
    logging.basicConfig(
        level=level,
        stream=sys.stderr,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        force=True,
    )


def main(
    argv: Optional[Sequence[str]] = None,
    stdout: Optional[TextIO] = None,
    stderr: Optional[TextIO] = None,
) -> int:
    """CLI entry point. Returns the process exit status."""
    stderr = stderr or sys.stderr
    try:
        invocation = parse_invocation(argv)
        configure_logging(invocation.verbose)
        return run(invocation, stdout)
    except OSError as e:
        err = InputFileError(f"{e.strerror or e}: {e.filename}" if e.filename else str(e))
        stderr.write(f"error: {err.category}: {err}\n")
        return err.exit_code
    except PrecisionError as e:
        stderr.write(f"error: {e.category}: {e}\n")
        return e.exit_code
    except Exception as e:
        logger.exception("internal error")
        stderr.write(f"error: InternalError: {e}\n")
        return EXIT_INTERNAL


def cli() -> None:
    """Console-script wrapper around main()."""
    sys.exit(main())
