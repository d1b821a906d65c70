"""Seedable 64-bit generator used by every sampler.

The generator is xoshiro256** (Blackman and Vigna).  Game ``i`` of a run
seeded with ``seed`` gets its own stream: the 256-bit state is filled with
four SplitMix64 outputs started from ``mix64(mix64(seed) ^ i)``.  Integers
below a bound are drawn by rejection, never by floating-point scaling, so the
streams are bit-identical across platforms, thread counts and the two
implementations below (pure Python and numba).
"""

from __future__ import annotations

import numpy as np
from numba import njit

MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


def _mix64(z: int) -> int:
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9 & MASK64
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB & MASK64
    return z ^ (z >> 31)


def stream_state(seed: int, index: int) -> tuple[int, int, int, int]:
    """xoshiro256** state for game ``index`` of a run seeded with ``seed``."""
    x = _mix64(_mix64(seed & MASK64) ^ (index & MASK64))
    out = []
    for _ in range(4):
        x = (x + _GOLDEN) & MASK64
        out.append(_mix64(x))
    return tuple(out)


def _rotl(x: int, k: int) -> int:
    return ((x << k) | (x >> (64 - k))) & MASK64


class Xoshiro256:
    """Pure-Python xoshiro256**; the reference for the compiled kernels."""

    def __init__(self, seed: int, index: int = 0):
        self.s = list(stream_state(seed, index))

    def next_u64(self) -> int:
        s = self.s
        result = _rotl(s[1] * 5 & MASK64, 7) * 9 & MASK64
        t = s[1] << 17 & MASK64
        s[2] ^= s[0]
        s[3] ^= s[1]
        s[1] ^= s[2]
        s[0] ^= s[3]
        s[2] ^= t
        s[3] = _rotl(s[3], 45)
        return result

    def below(self, c: int) -> int:
        """Uniform integer in ``[0, c)`` for ``1 <= c <= 2**64``."""
        if c == 1 << 64:
            return self.next_u64()
        threshold = ((1 << 64) - c) % c
        while True:
            x = self.next_u64()
            if x >= threshold:
                return x % c

    def big_below(self, total: int) -> int:
        """Uniform integer in ``[0, total)`` for any positive big integer."""
        if total <= 1 << 64:
            return self.below(total)
        bits = (total - 1).bit_length()
        words = (bits + 63) // 64
        while True:
            x = 0
            for _ in range(words):
                x = (x << 64) | self.next_u64()
            x >>= words * 64 - bits
            if x < total:
                return x


# -- numba versions ---------------------------------------------------------


@njit(cache=True)
def _nb_mix64(z):
    z = (z ^ (z >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
    return z ^ (z >> np.uint64(31))


@njit(cache=True)
def nb_seed_state(seed, index, state):
    x = _nb_mix64(_nb_mix64(np.uint64(seed)) ^ np.uint64(index))
    for j in range(4):
        x = x + np.uint64(_GOLDEN)
        state[j] = _nb_mix64(x)


@njit(cache=True)
def _nb_rotl(x, k):
    return (x << np.uint64(k)) | (x >> np.uint64(64 - k))


@njit(cache=True)
def nb_next(state):
    s0, s1, s2, s3 = state[0], state[1], state[2], state[3]
    result = _nb_rotl(s1 * np.uint64(5), 7) * np.uint64(9)
    t = s1 << np.uint64(17)
    s2 ^= s0
    s3 ^= s1
    s1 ^= s2
    s0 ^= s3
    s2 ^= t
    s3 = _nb_rotl(s3, 45)
    state[0], state[1], state[2], state[3] = s0, s1, s2, s3
    return result


@njit(cache=True)
def nb_below(state, c):
    """Uniform integer in ``[0, c)`` for ``1 <= c < 2**63``."""
    cu = np.uint64(c)
    threshold = (np.uint64(0) - cu) % cu
    while True:
        x = nb_next(state)
        if x >= threshold:
            return np.int64(x % cu)
