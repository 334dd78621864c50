"""SplitMix64, pinned so payloads and noise covers are identical everywhere."""

import numpy as np

__all__ = ["prng_next", "SplitMix64", "splitmix64_stream", "splitmix64_bits"]

MASK64 = (1 << 64) - 1
GAMMA = 0x9E3779B97F4A7C15
MIX1 = 0xBF58476D1CE4E5B9
MIX2 = 0x94D049BB133111EB


def prng_next(state: int):
    """One SplitMix64 step: returns ``(value, new_state)``."""
    state = (state + GAMMA) & MASK64
    z = state
    z = ((z ^ (z >> 30)) * MIX1) & MASK64
    z = ((z ^ (z >> 27)) * MIX2) & MASK64
    return z ^ (z >> 31), state


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next(self) -> int:
        value, self.state = prng_next(self.state)
        return value

    def __iter__(self):
        return self

    __next__ = next


def splitmix64_stream(seed: int, count: int) -> np.ndarray:
    """First ``count`` outputs for ``seed`` as a uint64 array (vectorised)."""
    steps = np.arange(1, count + 1, dtype=np.uint64)
    with np.errstate(over="ignore"):
        z = np.uint64(seed & MASK64) + steps * np.uint64(GAMMA)
        z = (z ^ (z >> np.uint64(30))) * np.uint64(MIX1)
        z = (z ^ (z >> np.uint64(27))) * np.uint64(MIX2)
    return z ^ (z >> np.uint64(31))


def splitmix64_bits(seed: int, count: int) -> np.ndarray:
    """``count`` payload bits, 64 per output, most significant bit first."""
    words = splitmix64_stream(seed, -(-count // 64))
    return np.unpackbits(words.astype(">u8").view(np.uint8))[:count]
