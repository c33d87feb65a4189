"""The work behind each subcommand, on an already merged `RunConfig`."""

import csv
import io
import json
import logging

from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Iterable, Iterator, Optional, Sequence

import numpy as np

from aebench.control import (
    ControllerKind,
    ControlStep,
    RunStatistics,
    frames_of,
    make_controller,
    run_controller,
    run_csv,
    runs_summary,
)
from aebench.emulation import (
    BracketCycle,
    emulate_from_cycle,
    noise_floor,
    plot_validation,
    validate_emulation,
    validation_summary,
    write_validation_report,
)
from aebench.features import (
    TrajectoryFeatures,
    evaluate_frames,
    features_json,
    plot_features,
    summarize_controller,
    trajectory_csv,
)
from aebench.photometry import CalibrationStack, ResponseCurve, estimate_inverse_crf, load_crf, parse_crf_spec, save_crf
from aebench.report import (
    BenchmarkValidator,
    ColoringReportFormatter,
    ReportFormatter,
    ReportLimits,
    Severity,
    findings_json,
    load_results,
    passed,
)
from aebench.synth import (
    generate_radiance_canvas,
    load_sequence,
    render_exposure_sweep,
    render_sequence,
    render_static_cycle,
    save_sequence,
    write_pgm,
)
from aebench.trajectory import (
    Intrinsics,
    OdometryOptions,
    Trajectory,
    VORun,
    evaluate_vo,
    rpe_csv,
    save_trajectory,
    summarize_vo,
    vo_json,
)
from aebench.util import atomic_write_text

from .config import CONFIG_FILE, OutputFormat, RunConfig, UsageError, config_to_json

LOG = logging.getLogger(__name__)


@dataclass(eq=False)
class BenchSequence:
    name: str
    cycles: list[BracketCycle]
    groundtruth: Trajectory
    crf: ResponseCurve


def _json(data: object) -> str:
    return json.dumps(data, indent=2, sort_keys=True) + "\n"


def write_run_config(cfg: RunConfig, out: Path) -> Path:
    path = out / CONFIG_FILE
    atomic_write_text(path, config_to_json(cfg))
    return path


def _response(spec: str) -> ResponseCurve:
    return load_crf(spec) if spec.endswith(".csv") else parse_crf_spec(spec)


def load_sequences(paths: Sequence[str]) -> Iterator[BenchSequence]:
    """Load sequences one at a time, naming each after its directory."""
    if len(paths) == 0:
        raise UsageError("No sequences given")
    names = [Path(p).name or f"seq{k}" for k, p in enumerate(paths)]
    if len(set(names)) != len(names):
        names = [f"{k:02d}_{n}" for k, n in enumerate(names)]

    for name, path in zip(names, paths):
        loaded = load_sequence(path)
        yield BenchSequence(name, loaded.cycles, loaded.groundtruth, loaded.crf)


def synthetic_suite(cfg: RunConfig) -> Iterator[BenchSequence]:
    """Render the synthetic suite lazily; sequence k is seeded with `seed + k`."""
    for k in range(cfg.synthetic.sequences):
        scene, capture = cfg.seeded(k)
        seq = render_sequence(scene, capture, cfg.synthetic.cycles)
        yield BenchSequence(f"synthetic_{k:02d}", seq.cycles, seq.groundtruth, seq.crf)


def roster(cfg: RunConfig) -> list[ControllerKind]:
    if len(cfg.controllers) == 0:
        raise UsageError("No controllers selected")
    return [ControllerKind(c) for c in cfg.controllers]


def gen_synthetic(cfg: RunConfig) -> Path:
    """Render one sequence into `cfg.out`; returns the manifest path."""
    out = Path(cfg.out)
    scene, capture = cfg.seeded()
    seq = render_sequence(scene, capture, cfg.synthetic.cycles)
    manifest = save_sequence(seq, out)
    write_run_config(cfg, out)
    return manifest


def calibrate_crf(cfg: RunConfig, sequence: str) -> Path:
    """Estimate the response from one bracket cycle of a static sequence."""
    out = Path(cfg.out)
    cal = cfg.calibration
    loaded = load_sequence(sequence)
    if not 0 <= cal.cycle < len(loaded.cycles):
        raise UsageError(f"Sequence has {len(loaded.cycles)} cycles, cycle {cal.cycle} does not exist")

    stack = CalibrationStack(loaded.cycles[cal.cycle].images)
    crf = estimate_inverse_crf(stack, cal.lambda_smooth, cal.sample_count)
    path = out / "crf.csv"
    save_crf(crf, path)

    if cfg.wants(OutputFormat.JSON):
        deviation = float(np.max(np.abs(crf.inverse_lut - loaded.crf.inverse_lut)))
        summary = {
            "images": len(stack.images),
            "exposures_us": stack.exposures,
            "max_deviation_from_sequence": deviation,
        }
        atomic_write_text(out / "calibration.json", _json(summary))
    write_run_config(cfg, out)
    return path


def validate(cfg: RunConfig) -> dict[str, object]:
    """Render the static validation scene, emulate the sweep and write the error report."""
    out = Path(cfg.out)
    v = cfg.validation
    if v.exposures < 1:
        raise UsageError(f"Exposure count must be positive, got {v.exposures}")

    scene = replace(v.scene, seed=cfg.seed)
    capture = replace(v.capture, seed=cfg.seed)
    canvas = generate_radiance_canvas(scene)
    exposures = np.geomspace(v.exposure_min_us, v.exposure_max_us, v.exposures).tolist()

    sweep = render_exposure_sweep(scene, capture, exposures, canvas)
    cycle = render_static_cycle(scene, capture, canvas)

    floors: Optional[list[float]] = None
    if v.repeats >= 2:
        floors = []
        for k, t in enumerate(exposures):
            first = len(exposures) + k * v.repeats
            floors.append(noise_floor(render_exposure_sweep(scene, capture, [t] * v.repeats, canvas, first)))

    crf = capture.response() if v.crf is None else _response(v.crf)
    report = validate_emulation(sweep, cycle, crf, floors, v.sat_threshold)

    write_validation_report(report, out)
    if cfg.wants(OutputFormat.SVG):
        plot_validation(report, out)
    write_run_config(cfg, out)
    return validation_summary(report)


def emulate(cfg: RunConfig, sequence: str, exposures: Sequence[float], cycle: Optional[int] = None) -> Path:
    """Emulate each cycle (or one) of a sequence at each target exposure."""
    if len(exposures) == 0:
        raise UsageError("No target exposures given")
    out = Path(cfg.out)
    loaded = load_sequence(sequence)
    cycles = loaded.cycles
    if cycle is not None:
        matching = [c for c in cycles if c.cycle_index == cycle]
        if len(matching) == 0:
            raise UsageError(f"Sequence has no cycle {cycle}")
        cycles = matching

    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["cycle", "exposure_us", "source_index", "source_exposure_us", "filename"])
    for c in cycles:
        for t in exposures:
            emulated = emulate_from_cycle(c, t, loaded.crf, cfg.ae.sat_threshold)
            filename = f"images/cycle_{c.cycle_index:06d}_{t:g}us.pgm"
            write_pgm(emulated.image, out / filename)
            source = repr(emulated.source_exposure)
            writer.writerow([c.cycle_index, repr(float(t)), emulated.source_index, source, filename])

    path = out / "emulation.csv"
    atomic_write_text(path, buf.getvalue())
    write_run_config(cfg, out)
    return path


@dataclass
class BenchOutcome:
    runs: dict[str, RunStatistics] = field(default_factory=dict[str, RunStatistics])
    features: dict[str, list[TrajectoryFeatures]] = field(default_factory=dict[str, list[TrajectoryFeatures]])
    vo: dict[str, list[VORun]] = field(default_factory=dict[str, list[VORun]])


def _runs(
    cfg: RunConfig, sequences: Iterable[BenchSequence]
) -> Iterator[tuple[BenchSequence, ControllerKind, list[ControlStep]]]:
    kinds = roster(cfg)
    for seq in sequences:
        for kind in kinds:
            controller = make_controller(kind, cfg.ae, seq.crf)
            yield seq, kind, run_controller(seq.cycles, controller, seq.crf)


def bench(
    cfg: RunConfig,
    sequences: Iterable[BenchSequence],
    out: Path,
    features: bool = True,
    vo: bool = True,
    runs_dir: Optional[Path] = None,
) -> BenchOutcome:
    """Run every controller over every sequence and score the frames it produced.

    Sequences are consumed one at a time. Per-frame controller CSVs go to
    `runs_dir` when given.
    """
    bench_cfg = cfg.bench
    odometry = OdometryOptions(bench_cfg.detector, bench_cfg.matcher, bench_cfg.ransac, bench_cfg.planar_inlier_ratio)
    outcome = BenchOutcome()

    names: set[str] = set()
    for seq, kind, steps in _runs(cfg, sequences):
        name = str(kind)
        names.add(seq.name)
        outcome.runs.setdefault(name, RunStatistics()).add(steps)
        if runs_dir is not None and cfg.wants(OutputFormat.CSV):
            atomic_write_text(runs_dir / seq.name / f"{name}.csv", run_csv(steps))

        frames = frames_of(steps)
        if features:
            result = evaluate_frames(frames, f"{name}/{seq.name}", bench_cfg.detector, bench_cfg.matcher)
            outcome.features.setdefault(name, []).append(result)
            if cfg.wants(OutputFormat.CSV):
                atomic_write_text(out / "features" / name / f"{seq.name}.csv", trajectory_csv(result))
        if vo:
            intrinsics = Intrinsics.for_image(frames[0].width, frames[0].height, bench_cfg.focal_px)
            run = evaluate_vo(frames, seq.groundtruth, intrinsics, odometry, bench_cfg.rpe, seq.name)
            outcome.vo.setdefault(name, []).append(run)
            if run.alignment is not None and cfg.wants(OutputFormat.CSV):
                save_trajectory(run.alignment.aligned, out / "rpe" / name / f"{seq.name}.txt")

    if len(names) == 0:
        raise UsageError("No sequences to benchmark")
    LOG.info(f"Benchmarked {len(outcome.runs)} controllers on {len(names)} sequences")

    if runs_dir is not None and cfg.wants(OutputFormat.JSON):
        atomic_write_text(runs_dir / "runs.json", _json(runs_summary(outcome.runs, cfg.ae)))

    if features:
        summaries = [summarize_controller(n, t) for n, t in outcome.features.items()]
        if cfg.wants(OutputFormat.JSON):
            atomic_write_text(out / "features" / "features.json", _json(features_json(summaries, bench_cfg.tau_marker)))
        if cfg.wants(OutputFormat.SVG):
            plot_features(summaries, dict(outcome.features), out / "features", bench_cfg.tau_marker)

    if vo:
        vo_summaries = [summarize_vo(n, runs, bench_cfg.rpe) for n, runs in outcome.vo.items()]
        for s in vo_summaries:
            if cfg.wants(OutputFormat.CSV):
                atomic_write_text(out / "rpe" / f"{s.controller}.csv", rpe_csv(s.report))
        if cfg.wants(OutputFormat.JSON):
            atomic_write_text(out / "rpe" / "rpe.json", _json(vo_json(vo_summaries)))

    write_run_config(cfg, out)
    return outcome


def report(
    results_dir: str,
    severities: dict[str, Severity],
    color: bool,
    fmt: Optional[str] = None,
    limits: Optional[ReportLimits] = None,
) -> tuple[str, bool]:
    """Check the results under `results_dir`; returns the rendered report and whether it passed."""
    findings = BenchmarkValidator(load_results(results_dir, limits), severities).validate()
    if fmt == OutputFormat.JSON:
        return findings_json(findings), passed(findings)
    formatter = ColoringReportFormatter() if color else ReportFormatter()
    return formatter.format(findings), passed(findings)
