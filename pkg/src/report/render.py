"""Render estimates, study reports, grids and plans as markdown or CSV.

Every real number is printed with exactly two decimals, rounding half away
from zero on the value's shortest decimal repr (1.075 prints as 1.08).
Rendering is pure: equal inputs give byte-identical text.
"""

import csv
import io
from decimal import ROUND_HALF_UP, Decimal
from enum import Enum
from typing import List, Mapping, Sequence, Tuple, Union

from src.models.estimates import BootstrapEstimate, GaussianEstimate
from src.report.kde import Histogram, KdeCurve, render_histogram, render_kde
from src.sim.grid import PlanResult, SimulationGrid
from src.sim.subsample import STATISTICS, Aggregate, SubsampleReport

TWO_PLACES = Decimal("0.01")
PLUS_MINUS = "±"


class OutputFormat(str, Enum):
    MARKDOWN = "markdown"
    CSV = "csv"


# (markdown label, csv name) for each per-draw statistic.
STAT_COLUMNS = {
    "mu": ("μ", "mu"),
    "sigma": ("σ", "sigma"),
    "sem": ("SEM", "sem"),
    "width": ("w", "width"),
    "mu_star": ("μ*", "mu_star"),
    "sem_star": ("SEM*", "sem_star"),
    "width_star": ("w*", "width_star"),
}

Reportable = Union[
    GaussianEstimate,
    BootstrapEstimate,
    Tuple[GaussianEstimate, BootstrapEstimate],
    SubsampleReport,
    SimulationGrid,
    PlanResult,
    KdeCurve,
    Histogram,
]


def format_value(x: float) -> str:
    """Two decimals, half away from zero; never prints -0.00."""
    text = str(Decimal(repr(float(x))).quantize(TWO_PLACES, rounding=ROUND_HALF_UP))
    return "0.00" if text == "-0.00" else text


def format_aggregate(agg: Aggregate) -> str:
    return f"{format_value(agg.mean)} {PLUS_MINUS} {format_value(agg.std)}"


def _table(header: Sequence[str], rows: Sequence[Sequence[str]], format: OutputFormat) -> str:
    if format is OutputFormat.CSV:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
        return buf.getvalue()

    lines = [
        "| " + " | ".join(header) + " |",
        "|" + "|".join("---" for _ in header) + "|",
    ]
    lines.extend("| " + " | ".join(row) + " |" for row in rows)
    return "\n".join(lines) + "\n"


def _pick(format: OutputFormat, markdown: str, csv_name: str) -> str:
    return csv_name if format is OutputFormat.CSV else markdown


def _gaussian_columns(est: GaussianEstimate, format: OutputFormat) -> Tuple[List[str], List[str]]:
    header = [_pick(format, *STAT_COLUMNS[s]) for s in ("mu", "sigma", "sem", "width")]
    row = [format_value(v) for v in (est.mu, est.sigma, est.sem, est.width)]
    return header, row


def _bootstrap_columns(est: BootstrapEstimate, format: OutputFormat) -> Tuple[List[str], List[str]]:
    header = [_pick(format, *STAT_COLUMNS[s]) for s in ("mu_star", "sem_star", "width_star")]
    row = [format_value(v) for v in (est.mu_star, est.sem_star, est.width_star)]
    return header, row


def _render_estimates(
    gaussian: Union[GaussianEstimate, None],
    boot: Union[BootstrapEstimate, None],
    format: OutputFormat,
) -> str:
    n = gaussian.n if gaussian is not None else boot.n
    header, row = ["n"], [str(n)]
    ci_header, ci_row = [], []
    if gaussian is not None:
        h, r = _gaussian_columns(gaussian, format)
        header += h
        row += r
        ci_header += [_pick(format, "CI low", "ci_lo"), _pick(format, "CI high", "ci_hi")]
        ci_row += [format_value(gaussian.ci_lo), format_value(gaussian.ci_hi)]
    if boot is not None:
        h, r = _bootstrap_columns(boot, format)
        header += h
        row += r
        ci_header += [_pick(format, "CI* low", "ci_lo_star"), _pick(format, "CI* high", "ci_hi_star")]
        ci_row += [format_value(boot.ci_lo_star), format_value(boot.ci_hi_star)]
    return _table(header + ci_header, [row + ci_row], format)


def _render_subsample(report: SubsampleReport, format: OutputFormat) -> str:
    if format is OutputFormat.CSV:
        header = ["k"]
        for stat in STATISTICS:
            name = STAT_COLUMNS[stat][1]
            header += [f"{name}_mean", f"{name}_std"]
        rows = []
        for row in report.rows:
            cells = [str(row.k)]
            for stat in STATISTICS:
                agg = row.get(stat)
                cells += [format_value(agg.mean), format_value(agg.std)]
            rows.append(cells)
        return _table(header, rows, format)

    header = ["k"] + [STAT_COLUMNS[stat][0] for stat in STATISTICS]
    rows = [
        [str(row.k)] + [format_aggregate(row.get(stat)) for stat in STATISTICS]
        for row in report.rows
    ]
    return _table(header, rows, format)


def _render_grid(grid: SimulationGrid, format: OutputFormat) -> str:
    header = ["k"]
    for sigma in grid.sigma_values:
        label = format_value(sigma)
        if format is OutputFormat.CSV:
            header += [f"sem_{label}", f"width_{label}"]
        else:
            header += [f"SEM (σ={label})", f"w (σ={label})"]
    rows = []
    for k, cells in zip(grid.k_values, grid.cells):
        row = [str(k)]
        for cell in cells:
            row += [format_value(cell.sem), format_value(cell.width)]
        rows.append(row)
    return _table(header, rows, format)


def _render_plan(plan: PlanResult, format: OutputFormat) -> str:
    if plan.target_width is not None:
        target = [_pick(format, "target w", "target_width")], [format_value(plan.target_width)]
    else:
        target = [_pick(format, "target SEM", "target_sem")], [format_value(plan.target_sem)]
    header = (
        [_pick(format, "σ", "sigma"), "z"]
        + target[0]
        + [_pick(format, "n", "required_n"), _pick(format, "w", "achieved_width"),
           _pick(format, "SEM", "achieved_sem")]
    )
    row = (
        [format_value(plan.sigma), format_value(plan.z)]
        + target[1]
        + [str(plan.required_n), format_value(plan.achieved_width), format_value(plan.achieved_sem)]
    )
    return _table(header, [row], format)


def render_report(data: Reportable, format: OutputFormat = OutputFormat.MARKDOWN) -> str:
    """Render a result in the matching table shape.

    Args:
        data: A Gaussian or bootstrap estimate, a (Gaussian, bootstrap)
            pair, a SubsampleReport, a SimulationGrid, a PlanResult or a
            KdeCurve or Histogram (always CSV at full precision).
        format: markdown or csv.

    Returns:
        The rendered text, newline-terminated.

    Raises:
        TypeError: For any other input.
    """
    format = OutputFormat(format)
    if isinstance(data, tuple) and len(data) == 2:
        gaussian, boot = data
        return _render_estimates(gaussian, boot, format)
    if isinstance(data, GaussianEstimate):
        return _render_estimates(data, None, format)
    if isinstance(data, BootstrapEstimate):
        return _render_estimates(None, data, format)
    if isinstance(data, SubsampleReport):
        return _render_subsample(data, format)
    if isinstance(data, SimulationGrid):
        return _render_grid(data, format)
    if isinstance(data, PlanResult):
        return _render_plan(data, format)
    if isinstance(data, KdeCurve):
        return render_kde(data)
    if isinstance(data, Histogram):
        return render_histogram(data)
    raise TypeError(f"cannot render {type(data).__name__}")


def render_provenance(settings: Mapping[str, object], format: OutputFormat = OutputFormat.MARKDOWN) -> str:
    """One header line listing the effective settings, in the given order."""
    body = " ".join(f"{key}={value}" for key, value in settings.items())
    if OutputFormat(format) is OutputFormat.CSV:
        return f"# {body}\n"
    return f"<!-- {body} -->\n"
