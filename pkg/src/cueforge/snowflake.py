"""Rotationally symmetric snowflake renderer.

One branching ray is grown from the canvas center, then replicated by
rotation ``num_rays`` times. Branch randomness is keyed by a per-node
stream id, so the tree at complexity k is a strict prefix of the tree at
complexity k+1 for the same seed: raising complexity only adds branches.
"""

import math
from dataclasses import dataclass

import numpy as np

from .cueblot import PALETTE
from .errors import InvalidParams
from .params import SnowflakeParams
from .prng import SplitMix64, mix_seed
from .raster import Raster, blank_raster

_MIN_SEGMENT_LEN = 2.0


@dataclass(frozen=True)
class Segment:
    x0: float
    y0: float
    x1: float
    y1: float
    width: float


def _grow(seed: int, node_id: int, x: float, y: float, angle: float,
          length: float, depth: int, complexity: int, out: list[Segment]) -> None:
    if length < _MIN_SEGMENT_LEN:
        return
    x1 = x + length * math.cos(angle)
    y1 = y + length * math.sin(angle)
    out.append(Segment(x, y, x1, y1, max(1.0, length / 24.0)))
    if depth >= complexity:
        return
    rng = SplitMix64(mix_seed(seed, node_id))
    n_points = rng.next_int(2, 3)
    spread = math.radians(rng.next_int(35, 65))
    for i in range(n_points):
        t = (i + 1) / (n_points + 1)
        bx = x + t * (x1 - x)
        by = y + t * (y1 - y)
        child_len = length * (0.35 + 0.2 * rng.next_float())
        for side, sign in enumerate((-1.0, 1.0)):
            _grow(seed, node_id * 8 + 2 * i + side + 1, bx, by,
                  angle + sign * spread, child_len, depth + 1, complexity, out)


def plan_ray(params: SnowflakeParams, canvas: int) -> list[Segment]:
    """Segments of the single unreplicated ray, center at the origin."""
    length = params.scale * (canvas / 2.0) * 0.95
    out: list[Segment] = []
    _grow(params.seed, 1, 0.0, 0.0, -math.pi / 2.0, length, 1, params.complexity, out)
    return out


def _stamp_points(buf: np.ndarray, xs: np.ndarray, ys: np.ndarray,
                  radius: int, color) -> None:
    canvas = buf.shape[0]
    for dy in range(-radius, radius + 1):
        for dx in range(-radius, radius + 1):
            if dx * dx + dy * dy > radius * radius:
                continue
            px = xs + dx
            py = ys + dy
            ok = (px >= 0) & (px < canvas) & (py >= 0) & (py < canvas)
            buf[py[ok], px[ok]] = color


def generate_snowflake(params: SnowflakeParams, canvas: int = 256) -> Raster:
    if not isinstance(params, SnowflakeParams):
        raise InvalidParams(f"expected SnowflakeParams, got {type(params).__name__}")
    buf = blank_raster(canvas)
    segments = plan_ray(params, canvas)
    color_rng = SplitMix64(mix_seed(params.seed, 0xC0105))
    color = PALETTE[color_rng.next_below(len(PALETTE))]
    center = (canvas - 1) / 2.0

    # Sample each segment at ~1px spacing, rotate samples for every ray.
    pts = []
    widths = []
    for seg in segments:
        seg_len = math.hypot(seg.x1 - seg.x0, seg.y1 - seg.y0)
        n = max(2, int(seg_len * 2))
        t = np.linspace(0.0, 1.0, n)
        pts.append(np.stack([seg.x0 + t * (seg.x1 - seg.x0),
                             seg.y0 + t * (seg.y1 - seg.y0)]))
        widths.append(np.full(n, seg.width))
    base = np.concatenate(pts, axis=1)
    width_arr = np.concatenate(widths)

    for k in range(params.num_rays):
        theta = 2.0 * math.pi * k / params.num_rays
        c, s = math.cos(theta), math.sin(theta)
        xr = base[0] * c - base[1] * s + center
        yr = base[0] * s + base[1] * c + center
        xs = np.rint(xr).astype(np.int64)
        ys = np.rint(yr).astype(np.int64)
        for radius in np.unique(np.rint(width_arr / 2.0).astype(np.int64)):
            sel = np.rint(width_arr / 2.0).astype(np.int64) == radius
            _stamp_points(buf, xs[sel], ys[sel], int(radius), color)
    return Raster(buf)
