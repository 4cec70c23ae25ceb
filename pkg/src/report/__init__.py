# Sample I/O, density curves and report rendering
from src.report.samples_io import (
    SampleFormat,
    load_samples,
    save_samples,
    read_samples,
)
from src.report.kde import (
    KdeCurve,
    silverman_bandwidth,
    kde,
    render_kde,
    Histogram,
    histogram,
    render_histogram,
)
from src.report.render import (
    OutputFormat,
    format_value,
    render_report,
    render_provenance,
)
