"""Static SVG figures of the feature benchmark: uniformity and match box plots, success curves."""

from pathlib import Path
from typing import Sequence

from matplotlib.figure import Figure

from aebench.util import Pathlike, write_svg

from .bench import TAU_MARKER, ControllerFeatureSummary, TrajectoryFeatures


def _boxplot(title: str, ylabel: str, names: list[str], data: list[list[float]]) -> Figure:
    fig = Figure(figsize=(6.0, 3.5))
    ax = fig.add_subplot()
    ax.boxplot(data, showfliers=False)
    ax.set_xticks(range(1, len(names) + 1), names, rotation=30)
    ax.set_title(title)
    ax.set_ylabel(ylabel)
    fig.tight_layout()
    return fig


def plot_features(
    summaries: Sequence[ControllerFeatureSummary],
    trajectories: dict[str, Sequence[TrajectoryFeatures]],
    out_dir: Pathlike,
    tau_marker: int = TAU_MARKER,
) -> list[Path]:
    """Write uniformity.svg, matches.svg and success_curve.svg into `out_dir`."""
    out = Path(out_dir)
    names = [s.controller for s in summaries]

    uniformity = _boxplot(
        "Keypoint uniformity",
        "occupied cells (%)",
        names,
        [[u for t in trajectories[n] for u in t.uniformity_pct] for n in names],
    )
    matches = _boxplot(
        "Matches between consecutive frames",
        "matches",
        names,
        [[float(m) for t in trajectories[n] for m in t.match_counts] for n in names],
    )

    curve = Figure(figsize=(6.0, 3.5))
    ax = curve.add_subplot()
    for s in summaries:
        ax.plot(s.success.thresholds, [r * 100.0 for r in s.success.success_rate], label=s.controller)
    ax.axvline(tau_marker, color="grey", linestyle="--", linewidth=0.8)
    ax.set_xlabel("minimum matches")
    ax.set_ylabel("successful trajectories (%)")
    ax.set_ylim(0.0, 100.0)
    ax.legend(fontsize="small")
    curve.tight_layout()

    paths = [out / "uniformity.svg", out / "matches.svg", out / "success_curve.svg"]
    for path, fig in zip(paths, (uniformity, matches, curve)):
        write_svg(fig, path)
    return paths
