"""Deterministic random streams based on splitmix64.

Every stochastic component of the package draws from splitmix64 streams:
the state advances by the 64-bit golden-ratio constant 0x9E3779B97F4A7C15
and each output is the standard murmur-style finalizer of the new state
(xor-shift 30, * 0xBF58476D1CE4E5B9, xor-shift 27, * 0x94D049BB133111EB,
xor-shift 31). Uniform doubles take the top 53 bits: (z >> 11) * 2^-53.

Streams are derived, never split: ``derive_state(seed, iteration, ant)``
chains the finalizer over the three words, so any (seed, iteration, ant)
triple addresses the same stream in any implementation of this recipe.
This is what makes runs reproducible bit-for-bit across the numba and
numpy backends, across serial and parallel execution, and across
re-implementations in other languages.
"""

from __future__ import annotations

import numpy as np

from .kernels import rng_u01, rng_randint

MASK64 = (1 << 64) - 1
GAMMA = 0x9E3779B97F4A7C15


def mix64(z: int) -> int:
    """splitmix64 output finalizer on a 64-bit word."""
    z &= MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def derive_state(seed: int, iteration: int = 0, ant: int = 0) -> np.ndarray:
    """Initial stream state for one (seed, iteration, ant) triple."""
    s = mix64(seed)
    s = mix64(s ^ (((iteration + 1) * GAMMA) & MASK64))
    s = mix64(s ^ (((ant + 1) * GAMMA) & MASK64))
    return np.array([s], dtype=np.uint64)


class Stream:
    """A single splitmix64 stream with the draw helpers the solver uses."""

    __slots__ = ("state",)

    def __init__(self, state: np.ndarray):
        self.state = state

    @classmethod
    def from_seed(cls, seed: int, iteration: int = 0, ant: int = 0) -> "Stream":
        return cls(derive_state(seed, iteration, ant))

    def u01(self) -> float:
        """Uniform double in [0, 1)."""
        return rng_u01(self.state)

    def randint(self, m: int) -> int:
        """Uniform integer in [0, m)."""
        return rng_randint(self.state, m)
