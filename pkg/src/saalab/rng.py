"""SplitMix64, vectorised.

SplitMix64 (Steele, Lea & Flood 2014) is a counter-based generator: output
``i`` is ``mix(seed + (i + 1) * GOLDEN)``, so any slice of the stream can be
produced independently.  That makes partitioned Monte-Carlo runs give the
same samples whatever the partition count.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

ALGORITHM = "splitmix64"
GOLDEN = 0x9E3779B97F4A7C15
_M64 = (1 << 64) - 1


@dataclass(frozen=True)
class RngSpec:
    seed: int = 0
    algorithm: str = ALGORITHM

    def __post_init__(self):
        if not 0 <= self.seed <= _M64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        if self.algorithm != ALGORITHM:
            raise ValueError(f"unsupported generator {self.algorithm!r}")


def splitmix64_scalar(state: int) -> tuple[int, int]:
    """Reference step: returns ``(new_state, output)``."""
    state = (state + GOLDEN) & _M64
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _M64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _M64
    return state, z ^ (z >> 31)


def splitmix64(seed: int, start: int, count: int) -> np.ndarray:
    """Outputs ``start .. start + count - 1`` of the stream seeded with ``seed``."""
    idx = np.arange(start + 1, start + count + 1, dtype=np.uint64)
    with np.errstate(over="ignore"):
        z = np.uint64(seed) + idx * np.uint64(GOLDEN)
        z = (z ^ (z >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
        z = (z ^ (z >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
    return z ^ (z >> np.uint64(31))


def uniform_pairs(rng: RngSpec, n: int, start: int, count: int):
    """``count`` operand pairs uniform on ``[0, 2**n)``, pairs ``start ..``.

    Pair ``i`` takes the top ``n`` bits of stream outputs ``2i`` and ``2i+1``.
    """
    raw = splitmix64(rng.seed, 2 * start, 2 * count)
    shift = np.uint64(64 - n)
    return raw[0::2] >> shift, raw[1::2] >> shift
