from .files import Pathlike, atomic_write_bytes, atomic_write_text
from .svg import figure_svg, write_svg

__all__ = ["Pathlike", "atomic_write_bytes", "atomic_write_text", "figure_svg", "write_svg"]
