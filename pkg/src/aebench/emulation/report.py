"""Write emulation validation reports as CSV, JSON and SVG."""

import csv
import io
import json

from pathlib import Path
from typing import Any

from matplotlib.figure import Figure

from aebench.util import Pathlike, atomic_write_text, write_svg

from .validation import HISTOGRAM_BINS, EmulationValidationReport


def validation_csv(report: EmulationValidationReport) -> str:
    """One row per ground-truth exposure.

    Columns: gt_exposure_us, rmse_highernosat_pct, rmse_bracket_1..N, selected_index.
    """
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    n = len(report.ladder_us)
    writer.writerow(
        ["gt_exposure_us", "rmse_highernosat_pct"] + [f"rmse_bracket_{k + 1}" for k in range(n)] + ["selected_index"]
    )
    for p in report.points:
        writer.writerow(
            [repr(p.gt_exposure_us), f"{p.rmse_highernosat_pct:.6f}"]
            + [f"{v:.6f}" for v in p.rmse_brackets_pct]
            + [p.selected_index]
        )
    return buf.getvalue()


def histograms_csv(report: EmulationValidationReport) -> str:
    """Long-form DN histograms of ground truth and HigherNoSat emulations."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["gt_exposure_us", "kind", "bin", "fraction"])
    for p in report.points:
        for kind, hist in (("ground_truth", p.gt_histogram), ("emulated", p.emulated_histogram)):
            if hist is None:
                continue
            for b in range(HISTOGRAM_BINS):
                writer.writerow([repr(p.gt_exposure_us), kind, b, f"{hist[b]:.8f}"])
    return buf.getvalue()


def validation_summary(report: EmulationValidationReport) -> dict[str, Any]:
    return {
        "median_pct": report.median_pct,
        "max_pct": report.max_pct,
        "points": len(report.points),
        "ladder_us": list(report.ladder_us),
        "selector_top2_fraction": report.selector_quality(2),
        "mean_histogram_intersection": sum(p.histogram_intersection for p in report.points) / len(report.points),
    }


def write_validation_report(report: EmulationValidationReport, out_dir: Pathlike) -> list[Path]:
    """Write validation.csv, histograms.csv and summary.json into `out_dir`."""
    out = Path(out_dir)
    paths = [out / "validation.csv", out / "histograms.csv", out / "summary.json"]
    atomic_write_text(paths[0], validation_csv(report))
    atomic_write_text(paths[1], histograms_csv(report))
    atomic_write_text(paths[2], json.dumps(validation_summary(report), indent=2, sort_keys=True) + "\n")
    return paths


def plot_validation(report: EmulationValidationReport, out_dir: Pathlike) -> list[Path]:
    """Write rmse.svg: the HigherNoSat curve over the single-bracket curves, log exposure axis."""
    exposures_ms = [p.gt_exposure_us / 1000.0 for p in report.points]
    fig = Figure(figsize=(6.0, 3.5))
    ax = fig.add_subplot()
    for k, ladder in enumerate(report.ladder_us):
        curve = [p.rmse_brackets_pct[k] for p in report.points]
        ax.plot(exposures_ms, curve, linewidth=0.8, label=f"{ladder / 1000:g} ms")
    selected = [p.rmse_highernosat_pct for p in report.points]
    ax.plot(exposures_ms, selected, color="black", linewidth=1.6, label="HigherNoSat")
    ax.set_xscale("log")
    ax.set_xlabel("exposure (ms)")
    ax.set_ylabel("RMSE (% of range)")
    ax.legend(fontsize="small", ncol=2)
    fig.tight_layout()

    path = Path(out_dir) / "rmse.svg"
    write_svg(fig, path)
    return [path]
