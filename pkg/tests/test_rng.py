"""The stream recipe is a public contract (documented in rng.py); these
tests pin it against an independent transcription of that recipe."""

import numpy as np

from focusedaco import kernels
from focusedaco.rng import GAMMA, MASK64, Stream, derive_state, mix64

_M1 = 0xBF58476D1CE4E5B9
_M2 = 0x94D049BB133111EB


def reference_sequence(state0, count):
    """splitmix64 as written in the docs, in plain python integers."""
    out = []
    s = state0
    for _ in range(count):
        s = (s + GAMMA) & MASK64
        z = ((s ^ (s >> 30)) * _M1) & MASK64
        z = ((z ^ (z >> 27)) * _M2) & MASK64
        z ^= z >> 31
        out.append((z >> 11) * 2.0**-53)
    return out


def test_u01_matches_documented_recipe():
    state = derive_state(42)
    expected = reference_sequence(int(state[0]), 500)
    got = [kernels.rng_u01(state) for _ in range(500)]
    assert got == expected


def test_u01_range_and_mean():
    s = Stream.from_seed(7)
    draws = [s.u01() for _ in range(20000)]
    assert all(0.0 <= d < 1.0 for d in draws)
    assert abs(sum(draws) / len(draws) - 0.5) < 0.01


def test_randint_range_and_determinism():
    s1 = Stream.from_seed(3, 1, 2)
    s2 = Stream.from_seed(3, 1, 2)
    a = [s1.randint(17) for _ in range(2000)]
    b = [s2.randint(17) for _ in range(2000)]
    assert a == b
    assert min(a) == 0 and max(a) == 16


def test_derived_streams_are_distinct():
    states = {
        int(derive_state(seed, it, ant)[0])
        for seed in range(4)
        for it in range(4)
        for ant in range(4)
    }
    assert len(states) == 64


def test_mix64_avalanche_sanity():
    # flipping one input bit should flip roughly half the output bits
    flips = bin(mix64(12345) ^ mix64(12345 ^ 1)).count("1")
    assert 16 <= flips <= 48


def test_vectorized_form_matches_sequential():
    # states advance linearly by GAMMA, so a batch can be generated at once;
    # the fallback backend relies on this equivalence
    state0 = int(derive_state(11)[0])
    seq = reference_sequence(state0, 256)
    states = (np.uint64(state0) + np.uint64(GAMMA) * np.arange(1, 257, dtype=np.uint64))
    z = states
    z = (z ^ (z >> np.uint64(30))) * np.uint64(_M1)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(_M2)
    z = z ^ (z >> np.uint64(31))
    vec = (z >> np.uint64(11)) * 2.0**-53
    assert vec.tolist() == seq
