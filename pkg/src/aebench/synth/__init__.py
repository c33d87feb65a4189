from .model import (
    CaptureSpec,
    FrameRecord,
    MalformedFileError,
    MissingFileError,
    PixelRangeError,
    SceneSpec,
    SequenceLoadError,
    SequenceManifest,
    Window,
)
from .noise import fractal_noise, generate_radiance_canvas, shape_bimodal, value_noise
from .render import (
    RenderedSequence,
    camera_path,
    frame_timestamp,
    render_exposure_sweep,
    render_frame,
    render_sequence,
    render_static_cycle,
    static_window,
    vignette_field,
)
from .io import (
    LoadedSequence,
    decode_pgm,
    encode_pgm,
    load_sequence,
    manifest_from_csv,
    manifest_to_csv,
    read_pgm,
    save_sequence,
    write_pgm,
)

__all__ = [
    "CaptureSpec",
    "FrameRecord",
    "LoadedSequence",
    "MalformedFileError",
    "MissingFileError",
    "PixelRangeError",
    "RenderedSequence",
    "SceneSpec",
    "SequenceLoadError",
    "SequenceManifest",
    "Window",
    "camera_path",
    "decode_pgm",
    "encode_pgm",
    "fractal_noise",
    "frame_timestamp",
    "generate_radiance_canvas",
    "load_sequence",
    "manifest_from_csv",
    "manifest_to_csv",
    "read_pgm",
    "render_exposure_sweep",
    "render_frame",
    "render_sequence",
    "render_static_cycle",
    "save_sequence",
    "shape_bimodal",
    "static_window",
    "value_noise",
    "vignette_field",
    "write_pgm",
]
