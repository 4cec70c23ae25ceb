"""Tests for report rendering."""

import pytest

from src.engine.bootstrap import bootstrap_estimate
from src.engine.gaussian import gaussian_estimate, gaussian_from_moments
from src.models.config import BootstrapConfig, PercentileMethod, SpreadConvention
from src.report.render import OutputFormat, format_value, render_provenance, render_report
from src.sim.grid import plan_sample_size, simulate_grid
from src.sim.subsample import Aggregate, SubsampleReport, SubsampleRow

from tests.conftest import normal_sample
from tests.test_grid import PUBLISHED


def make_row(k: int) -> SubsampleRow:
    agg = Aggregate(mean=1.005, std=0.0)
    return SubsampleRow(k=k, draws=10, mu=Aggregate(81.014, 3.04), sigma=agg, sem=agg, width=agg,
                        mu_star=agg, sem_star=agg, width_star=agg)


def make_report(sizes) -> SubsampleReport:
    return SubsampleReport(
        rows=tuple(make_row(k) for k in sizes), n=110, seed=1, draws=10, resamples=100, z=1.96,
        convention=SpreadConvention.POPULATION, percentile_method=PercentileMethod.LINEAR,
    )


class TestFormatValue:
    """Test two-decimal rounding."""

    @pytest.mark.parametrize("value,text", [
        (1.075, "1.08"),
        (2.675, "2.68"),
        (-1.005, "-1.01"),
        (0.004, "0.00"),
        (-0.004, "0.00"),
        (80.7, "80.70"),
        (100.0, "100.00"),
        (10.753, "10.75"),
    ])
    def test_half_away_from_zero(self, value, text):
        assert format_value(value) == text


class TestRenderEstimates:
    """Test Table-1-shaped output."""

    def test_gaussian_row(self):
        est = gaussian_from_moments(80.70, 10.75, 110)

        assert "80.70,10.75,1.02,4.02" in render_report(est, OutputFormat.CSV)
        assert "| 110 | 80.70 | 10.75 | 1.02 | 4.02 |" in render_report(est)

    def test_csv_columns(self):
        est = gaussian_from_moments(80.70, 10.75, 110)
        header = render_report(est, OutputFormat.CSV).splitlines()[0]
        assert header == "n,mu,sigma,sem,width,ci_lo,ci_hi"

    def test_pair(self):
        samples = normal_sample(30, seed=1)
        pair = (gaussian_estimate(samples), bootstrap_estimate(samples, BootstrapConfig(resamples=500)))
        lines = render_report(pair, OutputFormat.CSV).splitlines()

        assert lines[0] == "n,mu,sigma,sem,width,mu_star,sem_star,width_star,ci_lo,ci_hi,ci_lo_star,ci_hi_star"
        assert lines[1].startswith("30,")
        assert len(lines) == 2

    def test_bootstrap_alone(self):
        est = bootstrap_estimate(normal_sample(10), BootstrapConfig(resamples=200))
        assert render_report(est, OutputFormat.CSV).startswith("n,mu_star,sem_star,width_star")

    def test_markdown_shape(self):
        lines = render_report(gaussian_from_moments(1.0, 1.0, 4)).splitlines()

        assert lines[0] == "| n | μ | σ | SEM | w | CI low | CI high |"
        assert lines[1] == "|---|---|---|---|---|---|---|"
        assert len(lines) == 3


class TestRenderSubsample:
    """Test Table-2-shaped output."""

    def test_mean_plus_minus_std(self):
        text = render_report(make_report([10]))
        assert "| 10 | 81.01 ± 3.04 | 1.01 ± 0.00 |" in text

    def test_csv_splits_mean_and_std(self):
        lines = render_report(make_report([10]), OutputFormat.CSV).splitlines()

        assert lines[0].startswith("k,mu_mean,mu_std,sigma_mean,sigma_std")
        assert lines[1].startswith("10,81.01,3.04,1.01,0.00")

    def test_empty_report_is_header_only(self):
        lines = render_report(make_report([])).splitlines()
        assert len(lines) == 2
        assert lines[0].startswith("| k |")


class TestRenderGrid:
    """Test Table-3-shaped output."""

    def test_published_numbers(self):
        lines = render_report(simulate_grid(), OutputFormat.CSV).splitlines()
        body = [line.split(",") for line in lines[1:]]

        assert [int(row[0]) for row in body] == list(PUBLISHED)
        for row in body:
            cells = [float(x) for x in row[1:]]
            expected = [x for pair in PUBLISHED[int(row[0])] for x in pair]
            assert cells == expected

    def test_sigma_headers(self):
        header = render_report(simulate_grid(), OutputFormat.CSV).splitlines()[0]
        assert header.startswith("k,sem_2.00,width_2.00,sem_5.00")
        assert "sem_10.75,width_10.75" in header

    def test_markdown_headers(self):
        first = render_report(simulate_grid()).splitlines()[0]
        assert "SEM (σ=10.75)" in first

    def test_deterministic(self):
        assert render_report(simulate_grid()) == render_report(simulate_grid())


class TestRenderPlan:
    """Test planner output."""

    def test_width_plan(self):
        lines = render_report(plan_sample_size(5.0, target_width=1.0), OutputFormat.CSV).splitlines()

        assert lines[0] == "sigma,z,target_width,required_n,achieved_width,achieved_sem"
        assert lines[1] == "5.00,1.96,1.00,385,1.00,0.25"

    def test_sem_plan(self):
        header = render_report(plan_sample_size(10.0, target_sem=1.0), OutputFormat.CSV).splitlines()[0]
        assert "target_sem" in header


class TestProvenance:
    """Test the settings header."""

    def test_markdown(self):
        assert render_provenance({"seed": 3, "resamples": 100}) == "<!-- seed=3 resamples=100 -->\n"

    def test_csv(self):
        assert render_provenance({"seed": 3}, OutputFormat.CSV) == "# seed=3\n"

    def test_unknown_type(self):
        with pytest.raises(TypeError):
            render_report(42)
