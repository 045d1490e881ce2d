"""Image parameter records and their canonical text forms.

Each record fully determines a raster; the canonical text form is the
storage/wire representation and must round-trip exactly.
"""

from dataclasses import dataclass

from .errors import InvalidParams

SEED_MAX = (1 << 64) - 1

FRACTAL_VARIANTS = ("julia", "mandelbrot")


def _check_seed(seed: int) -> None:
    if not isinstance(seed, int) or not (0 <= seed <= SEED_MAX):
        raise InvalidParams(f"seed must be a 64-bit unsigned integer, got {seed!r}")


def _parse_fields(text: str, kind: str, n_fields: int) -> list[str]:
    parts = text.split(":")
    if len(parts) != n_fields + 2 or parts[0] != kind or parts[1] != "v1":
        raise InvalidParams(f"not a {kind}:v1 parameter string: {text!r}")
    return parts[2:]


@dataclass(frozen=True)
class CueblotParams:
    """The 5-element record that fully determines a cueblot raster."""

    seed: int
    max_blot_diameter: int
    num_blots: int
    blot_spacing: int
    num_colors: int

    def __post_init__(self):
        _check_seed(self.seed)
        if self.max_blot_diameter < 2:
            raise InvalidParams(f"max_blot_diameter must be >= 2, got {self.max_blot_diameter}")
        if self.num_blots < 1:
            raise InvalidParams(f"num_blots must be >= 1, got {self.num_blots}")
        if self.blot_spacing < 0:
            raise InvalidParams(f"blot_spacing must be >= 0, got {self.blot_spacing}")
        if not (1 <= self.num_colors <= 16):
            raise InvalidParams(f"num_colors must be in 1..16, got {self.num_colors}")

    def to_text(self) -> str:
        return (
            f"cueblot:v1:{self.seed}:{self.max_blot_diameter}:"
            f"{self.num_blots}:{self.blot_spacing}:{self.num_colors}"
        )

    @classmethod
    def from_text(cls, text: str) -> "CueblotParams":
        f = _parse_fields(text, "cueblot", 5)
        try:
            return cls(int(f[0]), int(f[1]), int(f[2]), int(f[3]), int(f[4]))
        except ValueError as exc:
            raise InvalidParams(f"bad cueblot field in {text!r}: {exc}") from exc


@dataclass(frozen=True)
class SnowflakeParams:
    seed: int
    num_rays: int
    complexity: int
    scale: float

    def __post_init__(self):
        _check_seed(self.seed)
        if not (3 <= self.num_rays <= 24):
            raise InvalidParams(f"num_rays must be in 3..24, got {self.num_rays}")
        if not (1 <= self.complexity <= 8):
            raise InvalidParams(f"complexity must be in 1..8, got {self.complexity}")
        if not (0.0 < self.scale <= 1.0):
            raise InvalidParams(f"scale must be in (0, 1], got {self.scale}")

    def to_text(self) -> str:
        return f"snowflake:v1:{self.seed}:{self.num_rays}:{self.complexity}:{self.scale!r}"

    @classmethod
    def from_text(cls, text: str) -> "SnowflakeParams":
        f = _parse_fields(text, "snowflake", 4)
        try:
            return cls(int(f[0]), int(f[1]), int(f[2]), float(f[3]))
        except ValueError as exc:
            raise InvalidParams(f"bad snowflake field in {text!r}: {exc}") from exc


@dataclass(frozen=True)
class FractalParams:
    seed: int
    variant: str
    view_center: complex
    view_scale: float
    palette_id: int

    def __post_init__(self):
        _check_seed(self.seed)
        if self.variant not in FRACTAL_VARIANTS:
            raise InvalidParams(f"variant must be one of {FRACTAL_VARIANTS}, got {self.variant!r}")
        if not (self.view_scale > 0.0):
            raise InvalidParams(f"view_scale must be > 0, got {self.view_scale}")
        if self.palette_id < 0:
            raise InvalidParams(f"palette_id must be >= 0, got {self.palette_id}")

    def to_text(self) -> str:
        return (
            f"fractal:v1:{self.seed}:{self.variant}:{self.view_center.real!r}:"
            f"{self.view_center.imag!r}:{self.view_scale!r}:{self.palette_id}"
        )

    @classmethod
    def from_text(cls, text: str) -> "FractalParams":
        f = _parse_fields(text, "fractal", 6)
        try:
            return cls(int(f[0]), f[1], complex(float(f[2]), float(f[3])), float(f[4]), int(f[5]))
        except ValueError as exc:
            raise InvalidParams(f"bad fractal field in {text!r}: {exc}") from exc


def params_from_text(text: str):
    """Dispatch a canonical parameter string to its record type."""
    kind = text.split(":", 1)[0]
    if kind == "cueblot":
        return CueblotParams.from_text(text)
    if kind == "snowflake":
        return SnowflakeParams.from_text(text)
    if kind == "fractal":
        return FractalParams.from_text(text)
    raise InvalidParams(f"unknown parameter kind {kind!r}")
