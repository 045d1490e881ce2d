"""Escape-time fractal renderer (quadratic Julia and Mandelbrot views)."""

import numpy as np

from .errors import InvalidParams
from .params import FractalParams
from .prng import SplitMix64, mix_seed
from .raster import Raster

MAX_ITERATIONS = 256

# Each palette is an anchor list; escape iteration counts are mapped onto a
# 256-entry gradient. Points that never escape render black.
_PALETTE_ANCHORS = (
    ((20, 12, 60), (30, 80, 160), (120, 200, 240), (255, 250, 220)),
    ((40, 8, 8), (180, 60, 20), (250, 180, 60), (255, 255, 210)),
    ((8, 40, 24), (20, 140, 90), (150, 230, 160), (245, 255, 235)),
    ((30, 30, 30), (110, 110, 130), (200, 200, 215), (255, 255, 255)),
)


def palette_table(palette_id: int) -> np.ndarray:
    """256x3 uint8 gradient for a palette id (wrapped into the fixed set)."""
    anchors = np.array(_PALETTE_ANCHORS[palette_id % len(_PALETTE_ANCHORS)], dtype=np.float64)
    pos = np.linspace(0.0, 1.0, len(anchors))
    t = np.linspace(0.0, 1.0, 256)
    table = np.stack([np.interp(t, pos, anchors[:, ch]) for ch in range(3)], axis=1)
    return table.astype(np.uint8)


def julia_constant(seed: int) -> complex:
    """Seed-derived Julia constant inside the interesting |c| < 1 region."""
    rng = SplitMix64(mix_seed(seed, 0x10111A))
    radius = 0.55 + 0.35 * rng.next_float()
    angle = rng.next_angle()
    return complex(radius * np.cos(angle), radius * np.sin(angle))


def escape_counts(variant: str, constant: complex, view_center: complex,
                  view_scale: float, canvas: int) -> np.ndarray:
    """Iterations to escape |z| > 2 per pixel; MAX_ITERATIONS = never escaped.

    The view spans ``view_scale`` in the real direction (and equally in the
    imaginary direction), centered on ``view_center``; pixel centers sit at
    half-integer offsets so the grid is symmetric about the view center.
    """
    offsets = (np.arange(canvas) + 0.5 - canvas / 2.0) / canvas * view_scale
    re = view_center.real + offsets[None, :]
    im = view_center.imag + offsets[:, None]
    points = re + 1j * im

    if variant == "julia":
        z = points.copy()
        c = np.full_like(points, constant)
    elif variant == "mandelbrot":
        z = np.zeros_like(points)
        c = points
    else:
        raise InvalidParams(f"unknown fractal variant {variant!r}")

    counts = np.full(points.shape, MAX_ITERATIONS, dtype=np.int64)
    alive = np.ones(points.shape, dtype=bool)
    for i in range(MAX_ITERATIONS):
        z[alive] = z[alive] * z[alive] + c[alive]
        escaped = alive & (np.abs(z) > 2.0)
        counts[escaped] = i
        alive &= ~escaped
        if not alive.any():
            break
    return counts


def colorize(counts: np.ndarray, palette_id: int) -> np.ndarray:
    table = palette_table(palette_id)
    pixels = table[np.minimum(counts, 255)]
    pixels[counts >= MAX_ITERATIONS] = (0, 0, 0)
    return pixels.astype(np.uint8)


def generate_fractal(params: FractalParams, canvas: int = 256) -> Raster:
    if not isinstance(params, FractalParams):
        raise InvalidParams(f"expected FractalParams, got {type(params).__name__}")
    constant = julia_constant(params.seed) if params.variant == "julia" else 0j
    counts = escape_counts(params.variant, constant, params.view_center,
                           params.view_scale, canvas)
    return Raster(colorize(counts, params.palette_id))
