import csv
import json

import numpy as np
import pytest

from aebench.cli.__main__ import main
from aebench.control import ALL_CONTROLLERS
from aebench.photometry import load_crf


def _gen(out, *extra: str) -> int:
    return main(["gen-synthetic", "--no-color", "--cycles", "2", "--seed", "3", "--out", str(out), *extra])


def test_argparse_errors_exit_with_two():
    with pytest.raises(SystemExit) as e:
        main(["gen-synthetic", "--cycles", "many"])
    assert e.value.code == 2
    with pytest.raises(SystemExit) as e:
        main(["no-such-command"])
    assert e.value.code == 2


@pytest.mark.integration
def test_gen_synthetic(tmp_path, capsys):
    """Two cycles give twelve images and the same seed reproduces them exactly."""
    assert _gen(tmp_path / "a") == 0
    assert capsys.readouterr().out.strip().endswith("frames.csv")
    assert _gen(tmp_path / "b") == 0

    images = sorted((tmp_path / "a" / "images").glob("*.pgm"))
    assert len(images) == 12
    assert (tmp_path / "a" / "frames.csv").read_text() == (tmp_path / "b" / "frames.csv").read_text()
    for img in images:
        assert img.read_bytes() == (tmp_path / "b" / "images" / img.name).read_bytes()
    for name in ("crf.csv", "groundtruth.txt"):
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()

    saved = json.loads((tmp_path / "a" / "run_config.json").read_text())
    assert saved["seed"] == 3
    assert saved["synthetic"]["cycles"] == 2


def test_usage_errors_exit_with_two(tmp_path, capsys):
    assert _gen(tmp_path, "--cycles", "0") == 2
    assert "Cycle count must be positive" in capsys.readouterr().err

    assert main(["run-ae", "--no-color", "--out", str(tmp_path)]) == 2
    assert main(["run-ae", "--no-color", "--synthetic", "--seq", str(tmp_path), "--out", str(tmp_path)]) == 2
    assert main(["gen-synthetic", "--no-color", "--config", str(tmp_path / "absent.toml")]) == 2


def test_missing_sequence_exits_with_one(tmp_path, capsys):
    assert main(["calibrate-crf", "--no-color", "--seq", str(tmp_path / "absent"), "--out", str(tmp_path)]) == 1
    assert "MissingFileError" in capsys.readouterr().err


@pytest.mark.integration
def test_run_fixed_controller(tmp_path):
    """The fixed controller keeps a single exposure, and the report over its run passes."""
    out = tmp_path / "runs"
    argv = ["run-ae", "--no-color", "--synthetic", "--sequences", "1", "--cycles", "3", "--controller", "fixed"]
    assert main([*argv, "--out", str(out)]) == 0

    with open(out / "synthetic_00" / "fixed.csv") as f:
        rows = list(csv.DictReader(f))
    assert len(rows) == 3
    assert len({r["exposure_us"] for r in rows}) == 1

    runs = json.loads((out / "runs.json").read_text())
    assert list(runs["controllers"].keys()) == ["fixed"]

    assert main(["report", "--no-color", str(tmp_path)]) == 0


def test_report_exit_codes(tmp_path, capsys):
    (tmp_path / "summary.json").write_text(
        json.dumps({"max_pct": 2.5, "median_pct": 0.5, "selector_top2_fraction": 1.0})
    )

    assert main(["report", "--no-color", str(tmp_path)]) == 1
    text = capsys.readouterr().out
    assert "[ERROR] Maximum emulation RMSE 2.500 % exceeds 1.78 %" in text
    assert text.endswith("FAIL\n")

    assert main(["report", "--no-color", "--warning", "EmulationCeilingFinding", str(tmp_path)]) == 0
    assert main(["report", "--no-color", "--fatal", "EmulationCeilingFinding", str(tmp_path)]) == 1
    assert "Fatal finding" in capsys.readouterr().err

    assert main(["report", "--no-color", "--format", "json", str(tmp_path)]) == 1
    data = json.loads(capsys.readouterr().out)
    assert data["passed"] is False

    assert main(["report", "--no-color", str(tmp_path / "absent")]) == 1


@pytest.mark.integration
def test_run_every_controller(tmp_path):
    """`--controller all` writes one run per controller."""
    argv = ["run-ae", "--no-color", "--synthetic", "--sequences", "1", "--cycles", "2", "--controller", "all"]
    assert main([*argv, "--out", str(tmp_path)]) == 0

    written = sorted(p.stem for p in (tmp_path / "synthetic_00").glob("*.csv"))
    assert written == sorted(str(k) for k in ALL_CONTROLLERS)
    assert len(written) == 7
    runs = json.loads((tmp_path / "runs.json").read_text())
    assert sorted(runs["controllers"]) == written


@pytest.mark.integration
def test_calibrate_from_generated_stack(tmp_path):
    """A static single-cycle sequence is a calibration stack for `calibrate-crf`."""
    assert _gen(tmp_path / "stack", "--static", "--cycles", "1") == 0
    argv = ["calibrate-crf", "--no-color", "--seq", str(tmp_path / "stack"), "--out", str(tmp_path / "crf")]
    assert main(argv) == 0

    crf = load_crf(tmp_path / "crf" / "crf.csv")
    assert len(crf.inverse_lut) == 4096
    assert np.all(np.diff(crf.inverse_lut) >= 0.0)
    summary = json.loads((tmp_path / "crf" / "calibration.json").read_text())
    assert summary["images"] == 6
    assert summary["exposures_us"] == [1000.0, 2000.0, 4000.0, 8000.0, 16000.0, 32000.0]
