"""Sequence directories on disk.

Layout:

    frames.csv        frame_index,cycle_index,exposure_us,timestamp_ns,filename
    images/*.pgm      binary 16-bit portable graymaps holding 12-bit DNs
    crf.csv           the response curve
    groundtruth.txt   the reference trajectory

Exposures are written with `repr` and images as big-endian 16-bit samples, so
loading a saved sequence reproduces it bit for bit. The same layout is used to
ingest converted real captures.
"""

import csv
import io
import logging
import re

from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import numpy as np

from aebench.emulation import BracketCycle
from aebench.photometry import DN_MAX, DnArray, RawImage, ResponseCurve, crf_from_csv, crf_to_csv
from aebench.trajectory import Trajectory, TrajectoryFormatError, trajectory_from_text, trajectory_to_text
from aebench.util import Pathlike, atomic_write_bytes, atomic_write_text

from .model import FrameRecord, MalformedFileError, MissingFileError, PixelRangeError, SequenceManifest
from .render import RenderedSequence

LOG = logging.getLogger(__name__)

FRAMES_HEADER = ["frame_index", "cycle_index", "exposure_us", "timestamp_ns", "filename"]

_PGM_TOKEN = re.compile(rb"(?:#[^\n]*\n|\s)*(\S+)")


def encode_pgm(img: RawImage) -> bytes:
    header = f"P5\n{img.width} {img.height}\n{DN_MAX}\n".encode("ascii")
    return header + img.data.astype(">u2").tobytes()


def decode_pgm(data: bytes, source: str = "<bytes>") -> DnArray:
    """Pixel array of a binary (P5) graymap; 8-bit and 16-bit samples are accepted."""
    pos = 0
    tokens: list[bytes] = []
    while len(tokens) < 4:
        m = _PGM_TOKEN.match(data, pos)
        if m is None:
            raise MalformedFileError(f"{source}: truncated PGM header")
        tokens.append(m.group(1))
        pos = m.end()

    if tokens[0] != b"P5":
        raise MalformedFileError(f"{source}: not a binary PGM (magic {tokens[0]!r})")
    try:
        width, height, maxval = (int(t) for t in tokens[1:])
    except ValueError as e:
        raise MalformedFileError(f"{source}: bad PGM header") from e
    if width < 1 or height < 1 or not 0 < maxval < 65536:
        raise MalformedFileError(f"{source}: bad PGM header {width}x{height} maxval {maxval}")

    pos += 1  # single whitespace after maxval
    dtype = np.dtype(">u2") if maxval > 255 else np.dtype(np.uint8)
    expected = width * height * dtype.itemsize
    if len(data) - pos != expected:
        raise MalformedFileError(f"{source}: expected {expected} bytes of pixel data, found {len(data) - pos}")

    pixels = np.frombuffer(data, dtype=dtype, count=width * height, offset=pos).reshape(height, width)
    if int(pixels.max()) > DN_MAX:
        raise PixelRangeError(f"{source}: pixel value {int(pixels.max())} exceeds {DN_MAX}")
    return pixels.astype(np.uint16)


def write_pgm(img: RawImage, path: Pathlike) -> None:
    atomic_write_bytes(path, encode_pgm(img))


def read_pgm(path: Pathlike) -> DnArray:
    path = Path(path)
    if not path.is_file():
        raise MissingFileError(path, "image")
    return decode_pgm(path.read_bytes(), str(path))


def manifest_to_csv(manifest: SequenceManifest) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(FRAMES_HEADER)
    for r in manifest.records:
        writer.writerow([r.frame_index, r.cycle_index, repr(float(r.exposure_us)), r.timestamp_ns, r.filename])
    return buf.getvalue()


def manifest_from_csv(text: str, source: str = "<string>") -> SequenceManifest:
    rows = list(csv.reader(io.StringIO(text)))
    if len(rows) == 0 or [c.strip() for c in rows[0]] != FRAMES_HEADER:
        raise MalformedFileError(f"{source}: expected header {','.join(FRAMES_HEADER)}")

    records: list[FrameRecord] = []
    for lineno, row in enumerate(rows[1:], start=2):
        if len(row) == 0:
            continue
        if len(row) != len(FRAMES_HEADER):
            raise MalformedFileError(f"{source}:{lineno}: expected {len(FRAMES_HEADER)} columns, found {len(row)}")
        try:
            records.append(FrameRecord(int(row[0]), int(row[1]), float(row[2]), int(row[3]), row[4]))
        except ValueError as e:
            raise MalformedFileError(f"{source}:{lineno}: {e}") from e

    if len(records) == 0:
        raise MalformedFileError(f"{source}: no frames")
    return SequenceManifest(records)


def save_sequence(seq: RenderedSequence, directory: Pathlike) -> Path:
    """Write `seq` under `directory`; returns the manifest path."""
    root = Path(directory)
    frames = {img.frame_index: img for img in seq.frames}
    for r in seq.manifest.records:
        write_pgm(frames[r.frame_index], root / r.filename)
    atomic_write_text(root / seq.manifest.crf_file, crf_to_csv(seq.crf))
    atomic_write_text(root / seq.manifest.groundtruth_file, trajectory_to_text(seq.groundtruth))

    manifest = root / "frames.csv"
    atomic_write_text(manifest, manifest_to_csv(seq.manifest))
    LOG.info(f"Saved {len(seq.manifest.records)} frames to {root}")
    return manifest


@dataclass(eq=False)
class LoadedSequence:
    cycles: list[BracketCycle]
    groundtruth: Trajectory
    crf: ResponseCurve
    manifest: SequenceManifest

    @property
    def frames(self) -> list[RawImage]:
        return [img for c in self.cycles for img in c.images]


def _read_text(path: Path, what: str) -> str:
    if not path.is_file():
        raise MissingFileError(path, what)
    return path.read_text()


def load_sequence(directory: Pathlike) -> LoadedSequence:
    """Load a sequence directory written by `save_sequence` (or converted to its layout).

    Raises:
        MissingFileError: a referenced file does not exist; the message names it.
        MalformedFileError: a manifest, image or trajectory does not parse.
        PixelRangeError: an image holds DNs above 4095.
        CrfFormatError: the response curve is malformed or not monotone.
    """
    root = Path(directory)
    manifest_path = root / "frames.csv"
    manifest = manifest_from_csv(_read_text(manifest_path, "manifest"), str(manifest_path))

    crf_path = root / manifest.crf_file
    crf = crf_from_csv(_read_text(crf_path, "response curve"), str(crf_path))

    gt_path = root / manifest.groundtruth_file
    try:
        groundtruth = trajectory_from_text(_read_text(gt_path, "ground-truth trajectory"), str(gt_path))
    except TrajectoryFormatError as e:
        raise MalformedFileError(str(e)) from e

    cycles: list[BracketCycle] = []
    current: list[RawImage] = []
    current_cycle: Optional[int] = None
    ladder: Optional[tuple[float, ...]] = None

    def close() -> None:
        nonlocal ladder
        if current_cycle is None:
            return
        try:
            cycle = BracketCycle(list(current), cycle_index=current_cycle, ladder=ladder)
        except ValueError as e:
            raise MalformedFileError(f"{manifest_path}: cycle {current_cycle}: {e}") from e
        ladder = cycle.ladder
        cycles.append(cycle)

    for r in manifest.records:
        if r.cycle_index != current_cycle:
            close()
            current = []
            current_cycle = r.cycle_index
        pixels = read_pgm(root / r.filename)
        try:
            current.append(RawImage(pixels, r.exposure_us, timestamp=r.timestamp_ns, frame_index=r.frame_index))
        except ValueError as e:
            raise MalformedFileError(f"{root / r.filename}: {e}") from e
    close()

    LOG.info(f"Loaded {len(manifest.records)} frames in {len(cycles)} cycles from {root}")
    return LoadedSequence(cycles, groundtruth, crf, manifest)
