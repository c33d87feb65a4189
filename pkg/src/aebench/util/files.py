"""Atomic file output.

Every artifact the toolkit writes (images, CSV reports, JSON summaries) goes
through these helpers so that a reader never observes a partially written file
and concurrent runs into distinct output directories cannot interfere.
"""

import logging
import os
import tempfile

from pathlib import Path

Pathlike = Path | str

LOG = logging.getLogger(__name__)


def atomic_write_bytes(path: Pathlike, data: bytes) -> None:
    """Write bytes to a temporary file next to `path`, then rename it into place."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)

    fd, tmp = tempfile.mkstemp(prefix=f".{path.name}.", suffix=".tmp", dir=path.parent)
    try:
        with os.fdopen(fd, "wb") as f:
            f.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise

    LOG.debug(f"Wrote {len(data)} bytes to {path}")


def atomic_write_text(path: Pathlike, text: str) -> None:
    """Write text (UTF-8, LF line endings) atomically."""
    atomic_write_bytes(path, text.encode("utf-8"))
