"""Portable, seed-reproducible random stream.

The generator is SplitMix64 (Steele, Lea & Flood) run in counter mode: draw
``k`` is ``mix(seed + (k + 1) * GOLDEN_GAMMA)`` over unsigned 64-bit
arithmetic. Because each output depends only on the seed and its position in
the stream, a batch of ``n`` draws can be computed in one vectorized pass and
is bit-identical to ``n`` sequential calls. Uniform reals take the top 53
bits, so every draw lies in ``[0, 1)``.
"""

from __future__ import annotations

import numpy as np

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15
MIX1 = 0xBF58476D1CE4E5B9
MIX2 = 0x94D049BB133111EB
INV_2_53 = 1.0 / (1 << 53)

_GAMMA_U64 = np.uint64(GOLDEN_GAMMA)
_MIX1_U64 = np.uint64(MIX1)
_MIX2_U64 = np.uint64(MIX2)


def splitmix64_mix(z: int) -> int:
    z = ((z ^ (z >> 30)) * MIX1) & MASK64
    z = ((z ^ (z >> 27)) * MIX2) & MASK64
    return z ^ (z >> 31)


class RngStream:
    """Single-owner stream of uniform draws. Do not share between runs."""

    __slots__ = ("seed", "draws")

    def __init__(self, seed: int, draws: int = 0):
        if not 0 <= seed <= MASK64:
            raise ValueError(f"seed must be a 64-bit unsigned integer, got {seed}")
        self.seed = seed
        self.draws = draws

    def next_u64(self) -> int:
        self.draws += 1
        return splitmix64_mix((self.seed + self.draws * GOLDEN_GAMMA) & MASK64)

    def random(self) -> float:
        return (self.next_u64() >> 11) * INV_2_53

    def randoms(self, n: int) -> np.ndarray:
        """Next ``n`` uniform draws as a float64 array, in stream order."""
        if n <= 0:
            return np.empty(0, dtype=np.float64)
        start = self.draws + 1
        self.draws += n
        with np.errstate(over="ignore"):
            k = np.arange(start, start + n, dtype=np.uint64)
            z = np.uint64(self.seed) + k * _GAMMA_U64
            z = (z ^ (z >> np.uint64(30))) * _MIX1_U64
            z = (z ^ (z >> np.uint64(27))) * _MIX2_U64
            z = z ^ (z >> np.uint64(31))
        return (z >> np.uint64(11)).astype(np.float64) * INV_2_53

    def copy(self) -> RngStream:
        return RngStream(self.seed, self.draws)

    def __repr__(self) -> str:
        return f"RngStream(seed={self.seed}, draws={self.draws})"


def make_rng(seed: int) -> RngStream:
    return RngStream(seed)
