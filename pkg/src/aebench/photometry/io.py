"""Read and write inverse response curves as CSV.

File format: a header line `dn,inverse_exposure` followed by exactly 4096 rows,
`dn` ascending from 0 to 4095, values as decimal floats. Values are written
with `repr` so that a round trip is bit-exact.
"""

import csv
import io

from pathlib import Path

import numpy as np

from aebench.util import Pathlike, atomic_write_text

from .model import LUT_SIZE, CrfFormatError, ResponseCurve

CRF_HEADER = ["dn", "inverse_exposure"]


def crf_to_csv(crf: ResponseCurve) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CRF_HEADER)
    for dn, value in enumerate(crf.inverse_lut.tolist()):
        writer.writerow([dn, repr(float(value))])
    return buf.getvalue()


def crf_from_csv(text: str, source: str = "<string>") -> ResponseCurve:
    """Parse and validate a CRF table.

    Raises:
        CrfFormatError: bad header, wrong row count, out-of-order DNs,
            unparsable values, or a curve violating the ResponseCurve invariants.
    """
    rows = list(csv.reader(io.StringIO(text)))
    if len(rows) == 0 or [c.strip() for c in rows[0]] != CRF_HEADER:
        raise CrfFormatError(f"{source}: expected header {','.join(CRF_HEADER)}")

    data = [r for r in rows[1:] if len(r) > 0]
    if len(data) != LUT_SIZE:
        raise CrfFormatError(f"{source}: expected {LUT_SIZE} data rows, found {len(data)}")

    lut = np.empty(LUT_SIZE, dtype=np.float64)
    for expected, row in enumerate(data):
        if len(row) != 2:
            raise CrfFormatError(f"{source}: row {expected + 2} has {len(row)} columns")
        try:
            dn = int(row[0])
            lut[expected] = float(row[1])
        except ValueError as e:
            raise CrfFormatError(f"{source}: row {expected + 2} is not numeric: {row}") from e
        if dn != expected:
            raise CrfFormatError(f"{source}: expected dn {expected} on row {expected + 2}, found {dn}")

    try:
        return ResponseCurve(lut)
    except CrfFormatError as e:
        raise CrfFormatError(f"{source}: {e}") from e


def save_crf(crf: ResponseCurve, path: Pathlike) -> None:
    atomic_write_text(path, crf_to_csv(crf))


def load_crf(path: Pathlike) -> ResponseCurve:
    path = Path(path)
    with open(path, "r", newline="") as f:
        return crf_from_csv(f.read(), str(path))
