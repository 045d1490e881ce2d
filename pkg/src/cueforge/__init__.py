"""Cue-based authentication toolkit.

Deterministic cue image generation (cueblots, snowflakes, fractals),
strength and name-agreement metrics for textual image descriptions, and a
registration/authentication/replacement protocol with a thin HTTP layer.
"""

from .params import CueblotParams, FractalParams, SnowflakeParams, params_from_text
from .raster import Raster, decode_png, encode_png, raster_digest

__version__ = "0.1.0"

__all__ = [
    "CueblotParams",
    "SnowflakeParams",
    "FractalParams",
    "params_from_text",
    "Raster",
    "raster_digest",
    "encode_png",
    "decode_png",
    "__version__",
]
