"""Mirrored inkblot ("cueblot") renderer.

Blots are dropped onto the left half of the canvas, each landing within a
disc of radius ``blot_spacing`` around the previous blot's center, then the
left half is mirrored about the vertical center line. Everything is driven
by the splitmix64 stream of the seed, so a stored parameter record
regenerates the identical raster at every login.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidParams
from .params import CueblotParams
from .prng import SplitMix64
from .raster import Raster, blank_raster

# Fixed 16-entry saturated palette; num_colors selects a prefix.
PALETTE = (
    (0xC0, 0x1C, 0x28),  # crimson
    (0x1C, 0x4E, 0xC0),  # cobalt
    (0x1E, 0x8A, 0x2E),  # leaf green
    (0x8A, 0x1E, 0x9E),  # violet
    (0xE0, 0x7A, 0x10),  # amber
    (0x10, 0x96, 0x96),  # teal
    (0xD0, 0x20, 0x78),  # magenta
    (0x5C, 0x38, 0x10),  # umber
    (0x28, 0x28, 0xA8),  # indigo
    (0x98, 0xB0, 0x10),  # olive
    (0xB0, 0x10, 0x10),  # brick
    (0x10, 0x60, 0x30),  # pine
    (0x70, 0x10, 0x70),  # plum
    (0xE0, 0x50, 0x40),  # coral
    (0x20, 0x80, 0xC8),  # azure
    (0x60, 0x60, 0x60),  # slate
)


@dataclass(frozen=True)
class Blot:
    """One planned ellipse: center, semi-axes, palette index."""

    cx: float
    cy: float
    rx: float
    ry: float
    color_index: int


def plan_blots(params: CueblotParams, canvas: int) -> list[Blot]:
    """Deterministic blot plan for the left half-canvas.

    Centers after the first are drawn inside a disc of radius
    ``blot_spacing`` around the previous center, then clamped to the
    half-canvas (projection onto the box never increases the distance to
    the previous, already in-box center).
    """
    rng = SplitMix64(params.seed)
    half_w = canvas // 2
    blots: list[Blot] = []
    cx = cy = 0.0
    for i in range(params.num_blots):
        if i == 0:
            cx = float(rng.next_below(half_w))
            cy = float(rng.next_below(canvas))
        else:
            angle = rng.next_angle()
            dist = params.blot_spacing * math.sqrt(rng.next_float())
            cx = min(max(cx + dist * math.cos(angle), 0.0), half_w - 1.0)
            cy = min(max(cy + dist * math.sin(angle), 0.0), canvas - 1.0)
        diameter = rng.next_int(2, params.max_blot_diameter)
        aspect = 0.5 + 1.5 * rng.next_float()
        color_index = rng.next_below(params.num_colors)
        blots.append(Blot(cx, cy, diameter / 2.0, diameter * aspect / 2.0, color_index))
    return blots


def _fill_ellipse(buf: np.ndarray, blot: Blot, color, half_w: int) -> None:
    canvas = buf.shape[0]
    x0 = max(int(math.floor(blot.cx - blot.rx)), 0)
    x1 = min(int(math.ceil(blot.cx + blot.rx)) + 1, half_w)
    y0 = max(int(math.floor(blot.cy - blot.ry)), 0)
    y1 = min(int(math.ceil(blot.cy + blot.ry)) + 1, canvas)
    if x0 >= x1 or y0 >= y1:
        return
    ys = np.arange(y0, y1, dtype=np.float64)[:, None]
    xs = np.arange(x0, x1, dtype=np.float64)[None, :]
    mask = ((xs - blot.cx) / blot.rx) ** 2 + ((ys - blot.cy) / blot.ry) ** 2 <= 1.0
    region = buf[y0:y1, x0:x1]
    region[mask] = color


def generate_cueblot(params: CueblotParams, canvas: int = 256) -> Raster:
    if not isinstance(params, CueblotParams):
        raise InvalidParams(f"expected CueblotParams, got {type(params).__name__}")
    buf = blank_raster(canvas)
    half_w = canvas // 2
    for blot in plan_blots(params, canvas):
        _fill_ellipse(buf, blot, PALETTE[blot.color_index], half_w)
    # Mirror left half about the vertical center line.
    buf[:, half_w:] = buf[:, :half_w][:, ::-1]
    return Raster(buf)
