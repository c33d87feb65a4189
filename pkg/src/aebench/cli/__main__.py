"""
Entry point of the `aebench` command.

Every subcommand reads its configuration the same way: dataclass defaults,
then the file given with `--config` (TOML, or a `run_config.json` written by
an earlier run), then command line flags. The merged configuration is saved
as `run_config.json` in the output directory.

Examples:

Render a synthetic sequence and a motion-free calibration stack:

    $ aebench gen-synthetic --cycles 50 --seed 7 --out seq/
    $ aebench gen-synthetic --static --cycles 1 --out stack/

Recover the camera response from the stack:

    $ aebench calibrate-crf --seq stack/ --out crf/

Check the emulation against captured ground truth:

    $ aebench validate-emulation --out results/emulation --format svg

Run every controller and benchmark the frames they produce:

    $ aebench run-ae --controller all --seq seq/ --out results/runs
    $ aebench bench --synthetic --out results/ --format json --format svg

Check the results, treating a poor bracket selector as a failure:

    $ aebench report results/ --error SelectorQualityFinding

Exit status is 0 on success, 1 when a command fails and 2 on a usage or
configuration error.
"""

import logging
import sys

from argparse import ArgumentParser, Namespace
from dataclasses import replace
from pathlib import Path
from typing import Any, Iterator, Optional, Sequence

from termcolor import colored

from aebench.control import ALL_CONTROLLERS
from aebench.report import FatalFindingError, Severity, validate_severities

from . import commands
from .commands import BenchSequence
from .config import ConfigError, OutputFormat, RunConfig, UsageError, load_config

LOG = logging.getLogger(__name__)


def _common() -> ArgumentParser:
    common = ArgumentParser(add_help=False)
    common.add_argument("--config", help="Path to a TOML configuration or a saved run_config.json.")
    common.add_argument("--seed", type=int, help="Seed of scene and capture generation.")
    common.add_argument("--out", help="Output directory.")
    common.add_argument(
        "--format",
        action="append",
        choices=OutputFormat.ALL,
        help="Output format; repeat to select several. Defaults to csv and json.",
    )
    common.add_argument("-v", "--verbose", action="count", default=0, help="Log progress; repeat for details.")
    common.add_argument("-q", "--quiet", action="store_true", help="Only log errors.")
    common.add_argument("--color", action="store_true", default=True, help="Enable colored output.")
    common.add_argument("--no-color", dest="color", action="store_false", help="Disable colored output.")
    return common


def _sequences_args(parser: ArgumentParser) -> None:
    parser.add_argument("--seq", nargs="+", default=[], help="Sequence directories.")
    parser.add_argument(
        "--synthetic", action="store_true", help="Render the configured synthetic suite instead of loading sequences."
    )
    parser.add_argument("--sequences", type=int, help="Number of sequences in the synthetic suite.")
    parser.add_argument("--cycles", type=int, help="Bracket cycles per synthetic sequence.")
    parser.add_argument(
        "--controller",
        action="append",
        help=f"Controller to run, or 'all'; repeat for several. One of {', '.join(ALL_CONTROLLERS)}.",
    )


def _bench_args(parser: ArgumentParser) -> None:
    _sequences_args(parser)
    parser.add_argument("--tau", type=int, help="Match threshold marked in the success curve report.")
    parser.add_argument("--focal", type=float, help="Focal length in pixels used by visual odometry.")


def build_parser() -> ArgumentParser:
    common = _common()
    parser = ArgumentParser(prog="aebench", description="Offline auto-exposure benchmarking")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen-synthetic", parents=[common], help="Render a synthetic bracketed sequence.")
    p.add_argument("--cycles", type=int, help="Number of bracket cycles.")
    p.add_argument("--static", action="store_true", default=None, help="Render without camera motion.")

    p = sub.add_parser("calibrate-crf", parents=[common], help="Estimate the camera response from a static stack.")
    p.add_argument("--seq", required=True, help="Sequence directory holding the calibration stack.")
    p.add_argument("--cycle", type=int, help="Bracket cycle used as the stack.")
    p.add_argument("--lambda", dest="lambda_smooth", type=float, help="Smoothness weight.")
    p.add_argument("--samples", type=int, help="Number of sampled pixel locations.")

    p = sub.add_parser("validate-emulation", parents=[common], help="Compare emulated against captured images.")
    p.add_argument("--exposures", type=int, help="Number of ground-truth exposures.")
    p.add_argument("--repeats", type=int, help="Captures per exposure for the noise floor; 0 disables it.")
    p.add_argument("--crf", help="Emulator response: a CRF CSV or linear, gamma:<g>, s-curve:<a>.")

    p = sub.add_parser("emulate", parents=[common], help="Emulate images at arbitrary exposures.")
    p.add_argument("--seq", required=True, help="Sequence directory.")
    p.add_argument("--exposure", type=float, action="append", required=True, help="Target exposure in us.")
    p.add_argument("--cycle", type=int, help="Only emulate this bracket cycle.")

    p = sub.add_parser("run-ae", parents=[common], help="Run auto-exposure controllers over sequences.")
    _sequences_args(p)

    p = sub.add_parser("bench-features", parents=[common], help="Feature matching benchmark.")
    _bench_args(p)

    p = sub.add_parser("bench-rpe", parents=[common], help="Visual odometry relative pose error benchmark.")
    _bench_args(p)

    p = sub.add_parser("bench", parents=[common], help="Controller runs, feature and RPE benchmarks in one pass.")
    _bench_args(p)

    p = sub.add_parser("report", parents=[common], help="Check benchmark results.")
    p.add_argument("results", nargs="?", help="Results directory. Defaults to the output directory.")
    p.add_argument("--info", nargs="*", action="append", help="A finding to assign an info severity to.")
    p.add_argument("--warning", nargs="*", action="append", help="A finding to assign a warning severity to.")
    p.add_argument("--error", nargs="*", action="append", help="A finding to assign an error severity to.")
    p.add_argument("--fatal", nargs="*", action="append", help="A finding to assign a fatal severity to.")

    return parser


def _flag(args: Namespace, name: str) -> Any:
    return getattr(args, name, None)


def _controllers(requested: Optional[list[str]]) -> Optional[list[str]]:
    if requested is None:
        return None
    if "all" in requested:
        return [str(k) for k in ALL_CONTROLLERS]
    return requested


def merge_flags(cfg: RunConfig, args: Namespace) -> RunConfig:
    """Apply command line flags over `cfg`; flags that were not given leave it untouched."""
    top: dict[str, Any] = {}
    if args.seed is not None:
        top["seed"] = args.seed
    if args.out is not None:
        top["out"] = args.out
    if args.format is not None:
        top["formats"] = list(dict.fromkeys(args.format))
    controllers = _controllers(_flag(args, "controller"))
    if controllers is not None:
        top["controllers"] = controllers

    synthetic: dict[str, Any] = {}
    if _flag(args, "cycles") is not None:
        synthetic["cycles"] = args.cycles
    if _flag(args, "sequences") is not None:
        synthetic["sequences"] = args.sequences
    if _flag(args, "static") is not None:
        synthetic["static"] = args.static

    calibration: dict[str, Any] = {}
    if _flag(args, "cycle") is not None and args.command == "calibrate-crf":
        calibration["cycle"] = args.cycle
    if _flag(args, "lambda_smooth") is not None:
        calibration["lambda_smooth"] = args.lambda_smooth
    if _flag(args, "samples") is not None:
        calibration["sample_count"] = args.samples

    validation: dict[str, Any] = {}
    if _flag(args, "exposures") is not None:
        validation["exposures"] = args.exposures
    if _flag(args, "repeats") is not None:
        validation["repeats"] = args.repeats
    if _flag(args, "crf") is not None:
        validation["crf"] = args.crf

    bench: dict[str, Any] = {}
    if _flag(args, "tau") is not None:
        bench["tau_marker"] = args.tau
    if _flag(args, "focal") is not None:
        bench["focal_px"] = args.focal

    try:
        return replace(
            cfg,
            synthetic=replace(cfg.synthetic, **synthetic),
            calibration=replace(cfg.calibration, **calibration),
            validation=replace(cfg.validation, **validation),
            bench=replace(cfg.bench, **bench),
            **top,
        )
    except ValueError as e:
        raise UsageError(str(e)) from e


def _severities(cfg: RunConfig, args: Namespace) -> dict[str, Severity]:
    severities = validate_severities(cfg.report.severity)
    for level in Severity:
        for group in _flag(args, level.value) or []:
            for name in group:
                severities[name] = level
    return severities


def _bench_input(cfg: RunConfig, args: Namespace) -> Iterator[BenchSequence]:
    if args.synthetic and len(args.seq) > 0:
        raise UsageError("Give either --seq or --synthetic, not both")
    if args.synthetic:
        return commands.synthetic_suite(cfg)
    if len(args.seq) == 0:
        raise UsageError("No sequences given; use --seq or --synthetic")
    return commands.load_sequences(args.seq)


def run(cfg: RunConfig, args: Namespace) -> int:
    out = Path(cfg.out)
    match args.command:
        case "gen-synthetic":
            print(commands.gen_synthetic(cfg))
        case "calibrate-crf":
            print(commands.calibrate_crf(cfg, args.seq))
        case "validate-emulation":
            summary = commands.validate(cfg)
            print(f"median {summary['median_pct']:.3f} %, max {summary['max_pct']:.3f} % RMSE")
        case "emulate":
            print(commands.emulate(cfg, args.seq, args.exposure, args.cycle))
        case "run-ae":
            commands.bench(cfg, _bench_input(cfg, args), out, features=False, vo=False, runs_dir=out)
        case "bench-features":
            commands.bench(cfg, _bench_input(cfg, args), out, vo=False)
        case "bench-rpe":
            commands.bench(cfg, _bench_input(cfg, args), out, features=False)
        case "bench":
            commands.bench(cfg, _bench_input(cfg, args), out, runs_dir=out / "runs")
        case "report":
            results = args.results if args.results is not None else cfg.out
            fmt = OutputFormat.JSON if args.format is not None and OutputFormat.JSON in args.format else None
            text, ok = commands.report(results, _severities(cfg, args), args.color, fmt, cfg.report.limits)
            print(text, end="")
            return 0 if ok else 1
        case _:
            raise UsageError(f"Unknown command {args.command}")
    return 0


def _configure_logging(args: Namespace) -> None:
    level = logging.WARNING
    if args.quiet:
        level = logging.ERROR
    elif args.verbose == 1:
        level = logging.INFO
    elif args.verbose > 1:
        level = logging.DEBUG
    logging.basicConfig(stream=sys.stderr, level=level, format="%(levelname)s %(name)s: %(message)s", force=True)


def _fail(message: str, color: bool) -> None:
    print(colored(message, "red") if color else message, file=sys.stderr)


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    _configure_logging(args)

    try:
        cfg = load_config(args.config) if args.config else RunConfig()
        cfg = merge_flags(cfg, args)
        return run(cfg, args)
    except (UsageError, ConfigError) as e:
        _fail(f"aebench {args.command}: {e}", args.color)
        return 2
    except FatalFindingError as e:
        _fail(f"Fatal finding: {e}", args.color)
        return 1
    except (ValueError, OSError) as e:
        LOG.debug("Command failed", exc_info=True)
        _fail(f"{e.__class__.__name__}: {e}", args.color)
        return 1


if __name__ == "__main__":
    sys.exit(main())
