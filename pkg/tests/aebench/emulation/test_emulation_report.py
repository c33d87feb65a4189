import csv
import io
import json

import numpy as np

from aebench.emulation import (
    EmulationValidationReport,
    ValidationPoint,
    histograms_csv,
    plot_validation,
    validation_csv,
    validation_summary,
    write_validation_report,
)


def _report() -> EmulationValidationReport:
    hist = np.zeros(64)
    hist[10] = 1.0
    points = [
        ValidationPoint(500.0, 0.2, [0.3, 0.5, 0.9], 0, gt_histogram=hist, emulated_histogram=hist),
        ValidationPoint(1500.0, 0.4, [0.6, 0.4, 0.8], 1, histogram_intersection=0.5),
        ValidationPoint(3000.0, 1.0, [2.0, 0.7, 1.0], 2, histogram_intersection=0.9),
    ]
    return EmulationValidationReport((1000.0, 2000.0, 4000.0), points)


def test_report_statistics():
    """Median, max and how often the selector is within the best two brackets."""
    report = _report()
    assert report.median_pct == 0.4
    assert report.max_pct == 1.0
    assert report.points[2].selection_rank() == 1
    assert report.selector_quality(1) == 2 / 3
    assert report.selector_quality(2) == 1.0


def test_validation_csv_columns():
    rows = list(csv.reader(io.StringIO(validation_csv(_report()))))
    assert rows[0] == [
        "gt_exposure_us",
        "rmse_highernosat_pct",
        "rmse_bracket_1",
        "rmse_bracket_2",
        "rmse_bracket_3",
        "selected_index",
    ]
    assert len(rows) == 4
    assert rows[2][-1] == "1"


def test_histograms_skip_missing():
    """Only points carrying histograms are written, one row per bin and kind."""
    rows = histograms_csv(_report()).splitlines()
    assert len(rows) == 1 + 2 * 64


def test_write_report(tmp_path):
    paths = write_validation_report(_report(), tmp_path)
    assert [p.name for p in paths] == ["validation.csv", "histograms.csv", "summary.json"]

    summary = json.loads((tmp_path / "summary.json").read_text())
    assert summary == validation_summary(_report())
    assert summary["median_pct"] == 0.4
    assert summary["ladder_us"] == [1000.0, 2000.0, 4000.0]


def test_plot_is_reproducible(tmp_path):
    """The SVG is written and identical for identical inputs."""
    (path,) = plot_validation(_report(), tmp_path / "a")
    (again,) = plot_validation(_report(), tmp_path / "b")
    text = path.read_text()
    assert "<svg" in text
    assert text == again.read_text()
