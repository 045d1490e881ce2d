"""Square RGB raster container, content digest, and PNG round trip."""

import hashlib
import io
import struct
from dataclasses import dataclass

import numpy as np
from PIL import Image

from .errors import InvalidCanvas

VALID_CANVAS_SIZES = (128, 256, 512)

WHITE = (0xFF, 0xFF, 0xFF)


@dataclass(frozen=True)
class Raster:
    """Square 24-bit RGB image, row-major uint8 pixels of shape (h, w, 3)."""

    pixels: np.ndarray

    def __post_init__(self):
        px = self.pixels
        if px.ndim != 3 or px.shape[2] != 3 or px.dtype != np.uint8:
            raise ValueError("pixels must be a (h, w, 3) uint8 array")
        h, w = px.shape[:2]
        if h != w or w not in VALID_CANVAS_SIZES:
            raise InvalidCanvas(f"canvas must be square with side in {VALID_CANVAS_SIZES}, got {w}x{h}")

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Raster):
            return NotImplemented
        return self.pixels.shape == other.pixels.shape and bool(
            np.array_equal(self.pixels, other.pixels)
        )


def blank_raster(canvas: int, color=WHITE) -> np.ndarray:
    """Writable pixel buffer prefilled with a background color."""
    if canvas not in VALID_CANVAS_SIZES:
        raise InvalidCanvas(f"canvas must be one of {VALID_CANVAS_SIZES}, got {canvas}")
    buf = np.empty((canvas, canvas, 3), dtype=np.uint8)
    buf[:, :] = color
    return buf


def raster_digest(r: Raster) -> str:
    """SHA-256 over dimensions and row-major pixel bytes, hex-encoded.

    The digest is the test anchor for bit-exact regeneration, so the byte
    layout (big-endian width, height, then raw RGB rows) is frozen.
    """
    h = hashlib.sha256()
    h.update(struct.pack(">II", r.width, r.height))
    h.update(np.ascontiguousarray(r.pixels).tobytes())
    return h.hexdigest()


def encode_png(r: Raster) -> bytes:
    """Encode as 8-bit RGB PNG, no interlacing, fixed encoder settings."""
    img = Image.fromarray(r.pixels, mode="RGB")
    out = io.BytesIO()
    img.save(out, format="PNG", optimize=True)
    return out.getvalue()


def decode_png(data: bytes) -> Raster:
    img = Image.open(io.BytesIO(data))
    return Raster(np.asarray(img.convert("RGB"), dtype=np.uint8))
