"""Deterministic 64-bit PRNG used by every image generator.

The algorithm is splitmix64 with its published constants. The stream must
stay bit-identical across platforms and releases forever: stored image
parameters are credentials, and the image they regenerate may never change.
"""

import math

MASK64 = (1 << 64) - 1

GOLDEN_GAMMA = 0x9E3779B97F4A7C15
MIX_MULT_1 = 0xBF58476D1CE4E5B9
MIX_MULT_2 = 0x94D049BB133111EB


def prng_next(state: int) -> tuple[int, int]:
    """Advance the splitmix64 state once.

    Returns (new_state, output). Pure function: identical state always
    yields the identical pair.
    """
    state = (state + GOLDEN_GAMMA) & MASK64
    z = state
    z = ((z ^ (z >> 30)) * MIX_MULT_1) & MASK64
    z = ((z ^ (z >> 27)) * MIX_MULT_2) & MASK64
    z = z ^ (z >> 31)
    return state, z


def mix_seed(seed: int, stream: int) -> int:
    """Derive a sub-seed for an independent child stream.

    Used where one seed must drive several structurally stable streams
    (e.g. per-branch randomness in the snowflake renderer).
    """
    _, a = prng_next(seed & MASK64)
    _, b = prng_next((a ^ stream) & MASK64)
    return b


class SplitMix64:
    """Stateful wrapper around :func:`prng_next` with convenience draws."""

    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state, out = prng_next(self.state)
        return out

    def next_below(self, n: int) -> int:
        """Uniform-ish integer in [0, n). Modulo reduction, documented as
        part of the fixed generation algorithm (bias is irrelevant here,
        stability is everything)."""
        if n <= 0:
            raise ValueError("n must be positive")
        return self.next_u64() % n

    def next_int(self, lo: int, hi: int) -> int:
        """Integer in [lo, hi] inclusive."""
        if hi < lo:
            raise ValueError("empty range")
        return lo + self.next_below(hi - lo + 1)

    def next_float(self) -> float:
        """Float in [0, 1) with 53 bits of precision."""
        return (self.next_u64() >> 11) * (1.0 / (1 << 53))

    def next_angle(self) -> float:
        """Angle in [0, 2*pi)."""
        return self.next_float() * 2.0 * math.pi
