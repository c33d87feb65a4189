"""Deterministic SVG output of matplotlib figures.

Figures are drawn on bare `Figure` objects so no global pyplot state or GUI
backend is involved. SVG ids are salted with a constant and the date metadata
is dropped so that identical inputs give identical files.
"""

import io

import matplotlib

from matplotlib.figure import Figure

from .files import Pathlike, atomic_write_text


def figure_svg(fig: Figure) -> str:
    buf = io.StringIO()
    with matplotlib.rc_context({"svg.hashsalt": "aebench", "svg.fonttype": "none"}):
        fig.savefig(buf, format="svg", metadata={"Date": None})
    return buf.getvalue()


def write_svg(fig: Figure, path: Pathlike) -> None:
    atomic_write_text(path, figure_svg(fig))
