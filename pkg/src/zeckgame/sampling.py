"""Seeded samplers for both measures.

Random play walks the game directly on a height array; the uniform sampler
draws one integer below ``|Omega_N|`` and unranks it through the per-state
game counts, which gives exactly the uniform measure.  Game ``i`` always uses
stream ``(seed, i)``, so output does not depend on how games are split across
threads.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterator

import numpy as np
from numba import njit, types
from numba.extending import intrinsic

from .analysis import MeasureKind, game_counts, state_graph
from .engine import Game, Move, MoveCounts, _apply_inplace, _legal, initial_state
from .numerics import fib_index
from .rng import MASK64, Xoshiro256, nb_below, nb_seed_state

__all__ = ["SampleResult", "sample_games", "sample_lengths"]


@njit(cache=True, nogil=True)
def _refresh(h, legal, L, b):
    # recompute the moves whose precondition reads bin b: C_b, C_{b+1}, S_b
    delta = 0
    for k in (b, b + 1):
        if 1 <= k <= L - 1:
            if k == 1:
                ok = h[1] >= 2
            else:
                ok = h[k - 1] >= 1 and h[k] >= 1
            if ok != legal[k]:
                legal[k] = ok
                delta += 1 if ok else -1
    if 2 <= b <= L - 1:
        ok = h[b] >= 2
        if ok != legal[L + b]:
            legal[L + b] = ok
            delta += 1 if ok else -1
    return delta


@njit(cache=True, nogil=True)
def _random_play_kernel(N, L, seed, start, lengths, mc, ms):
    h = np.zeros(L + 2, np.int64)
    legal = np.zeros(2 * L + 1, np.bool_)  # C_k at k, S_k at L + k
    state = np.zeros(4, np.uint64)
    for g in range(lengths.shape[0]):
        nb_seed_state(seed, np.uint64(start + g), state)
        h[:] = 0
        h[1] = N
        legal[:] = False
        deg = 0
        for b in range(1, L + 1):
            deg += _refresh(h, legal, L, b)
        steps = 0
        while deg > 0:
            r = nb_below(state, deg)
            slot = 0
            for slot in range(1, 2 * L + 1):
                if legal[slot]:
                    if r == 0:
                        break
                    r -= 1
            if slot < L:
                k = slot
                mc[g, k] += 1
                if k == 1:
                    h[1] -= 2
                    h[2] += 1
                    deg += _refresh(h, legal, L, 1)
                    deg += _refresh(h, legal, L, 2)
                else:
                    h[k - 1] -= 1
                    h[k] -= 1
                    h[k + 1] += 1
                    deg += _refresh(h, legal, L, k - 1)
                    deg += _refresh(h, legal, L, k)
                    deg += _refresh(h, legal, L, k + 1)
            else:
                k = slot - L
                ms[g, k] += 1
                h[k] -= 2
                h[k + 1] += 1
                if k == 2:
                    h[1] += 1
                    deg += _refresh(h, legal, L, 1)
                else:
                    h[k - 2] += 1
                    deg += _refresh(h, legal, L, k - 2)
                deg += _refresh(h, legal, L, k)
                deg += _refresh(h, legal, L, k + 1)
            steps += 1
        lengths[g] = steps


# bit k holds C_k and bit 32 + k holds S_k, so mask order is canonical order
MASK_MAX_BINS = 32


@intrinsic
def _popcount(typingctx, x):
    sig = types.uint64(types.uint64)

    def codegen(context, builder, signature, args):
        return builder.ctpop(args[0])

    return sig, codegen


@njit(cache=True, nogil=True)
def _select_bit(x, r):
    """Position of the ``r``-th (0-based) set bit of ``x``."""
    pos = 0
    width = 32
    while width:
        low = x & ((np.uint64(1) << np.uint64(width)) - np.uint64(1))
        c = np.int64(_popcount(low))
        if r >= c:
            r -= c
            x >>= np.uint64(width)
            pos += width
        else:
            x = low
        width >>= 1
    return pos


@njit(cache=True, nogil=True)
def _set(mask, slot, ok):
    one = np.uint64(1) << np.uint64(slot)
    return mask | one if ok else mask & ~one


@njit(cache=True, nogil=True)
def _refresh_mask(h, L, b, mask):
    # moves reading bin b: C_b, C_{b+1}, S_b
    if b == 1:
        mask = _set(mask, 1, L >= 2 and h[1] >= 2)
    elif b <= L - 1:
        mask = _set(mask, b, h[b - 1] >= 1 and h[b] >= 1)
    if 2 <= b + 1 <= L - 1:
        mask = _set(mask, b + 1, h[b] >= 1 and h[b + 1] >= 1)
    if 2 <= b <= L - 1:
        mask = _set(mask, 32 + b, h[b] >= 2)
    return mask


@njit(cache=True, nogil=True)
def _random_play_mask_kernel(N, L, seed, start, lengths, mc, ms):
    h = np.zeros(L + 2, np.int64)
    state = np.zeros(4, np.uint64)
    for g in range(lengths.shape[0]):
        nb_seed_state(seed, np.uint64(start + g), state)
        h[:] = 0
        h[1] = N
        mask = np.uint64(0)
        for b in range(1, L + 1):
            mask = _refresh_mask(h, L, b, mask)
        steps = 0
        while mask:
            r = nb_below(state, np.int64(_popcount(mask)))
            slot = _select_bit(mask, r)
            if slot < 32:
                k = slot
                mc[g, k] += 1
                if k == 1:
                    h[1] -= 2
                    h[2] += 1
                    mask = _refresh_mask(h, L, 1, mask)
                    mask = _refresh_mask(h, L, 2, mask)
                else:
                    h[k - 1] -= 1
                    h[k] -= 1
                    h[k + 1] += 1
                    mask = _refresh_mask(h, L, k - 1, mask)
                    mask = _refresh_mask(h, L, k, mask)
                    mask = _refresh_mask(h, L, k + 1, mask)
            else:
                k = slot - 32
                ms[g, k] += 1
                h[k] -= 2
                h[k + 1] += 1
                if k == 2:
                    h[1] += 1
                    mask = _refresh_mask(h, L, 1, mask)
                else:
                    h[k - 2] += 1
                    mask = _refresh_mask(h, L, k - 2, mask)
                mask = _refresh_mask(h, L, k, mask)
                mask = _refresh_mask(h, L, k + 1, mask)
            steps += 1
        lengths[g] = steps


@njit(cache=True, nogil=True)
def _uniform_kernel(ptr, child, code, counts, seed, start, lengths, mc, ms):
    state = np.zeros(4, np.uint64)
    for g in range(lengths.shape[0]):
        nb_seed_state(seed, np.uint64(start + g), state)
        r = nb_below(state, counts[0])
        node = 0
        steps = 0
        while ptr[node + 1] > ptr[node]:
            e = ptr[node]
            while r >= counts[child[e]]:
                r -= counts[child[e]]
                e += 1
            c = code[e]
            if c > 0:
                mc[g, c] += 1
            else:
                ms[g, -c] += 1
            node = child[e]
            steps += 1
        lengths[g] = steps


@dataclass
class SampleResult:
    """Lengths and per-game move counts of ``count`` sampled games.

    ``mc[i, k]`` counts ``C_k`` in game ``i`` and ``ms[i, k]`` counts ``S_k``.
    """

    n: int
    measure: str
    seed: int
    lengths: np.ndarray
    mc: np.ndarray
    ms: np.ndarray

    def __len__(self) -> int:
        return len(self.lengths)

    def move_counts(self, i: int) -> MoveCounts:
        L = fib_index(self.n)
        return MoveCounts(
            self.n,
            L,
            {k: int(self.mc[i, k]) for k in range(1, L)},
            {k: int(self.ms[i, k]) for k in range(2, L)},
        )

    @property
    def splits(self) -> np.ndarray:
        return self.ms.sum(axis=1)


def _csr(N: int):
    g = state_graph(N)
    counts = game_counts(N)
    ptr = np.zeros(len(g) + 1, np.int64)
    for i, kids in enumerate(g.children):
        ptr[i + 1] = ptr[i] + len(kids)
    child = np.fromiter((j for kids in g.children for j in kids), np.int64, int(ptr[-1]))
    code = np.fromiter(
        (m.index if m.kind == "C" else -m.index for ms in g.moves for m in ms),
        np.int64,
        int(ptr[-1]),
    )
    return ptr, child, code, counts


def _chunks(count: int, threads: int) -> list[tuple[int, int]]:
    threads = max(1, min(threads, count or 1))
    step = -(-count // threads)
    return [(a, min(a + step, count)) for a in range(0, count, step)]


def sample_lengths(
    N: int, measure="random", seed: int = 0, count: int = 1000, threads: int = 1
) -> SampleResult:
    """Sample ``count`` games and keep only their lengths and move counts.

    Results are identical for every ``threads`` value.
    """
    measure = MeasureKind.parse(measure)
    if count < 0:
        raise ValueError("count must be >= 0")
    L = fib_index(N)
    lengths = np.zeros(count, np.int64)
    mc = np.zeros((count, L + 1), np.int64)
    ms = np.zeros((count, L + 1), np.int64)
    useed = np.uint64(seed & MASK64)

    if measure is MeasureKind.RANDOM:
        kernel = _random_play_mask_kernel if L <= MASK_MAX_BINS else _random_play_kernel

        def run(a, b):
            kernel(N, L, useed, a, lengths[a:b], mc[a:b], ms[a:b])
    else:
        ptr, child, code, counts = _csr(N)
        if counts[0] < 1 << 63:
            counts64 = np.array(counts, np.int64)

            def run(a, b):
                _uniform_kernel(ptr, child, code, counts64, useed, a,
                                lengths[a:b], mc[a:b], ms[a:b])
        else:
            def run(a, b):
                for i in range(a, b):
                    for kind, k in _unrank_uniform(N, seed, i):
                        (mc if kind == "C" else ms)[i, k] += 1
                        lengths[i] += 1

    parts = _chunks(count, threads)
    if len(parts) <= 1:
        for a, b in parts:
            run(a, b)
    else:
        with ThreadPoolExecutor(max_workers=len(parts)) as pool:
            list(pool.map(lambda ab: run(*ab), parts))
    return SampleResult(N, measure.value, seed, lengths, mc, ms)


def _random_play_game(N: int, seed: int, i: int) -> list[Move]:
    rng = Xoshiro256(seed, i)
    h = list(initial_state(N).heights)
    out = []
    while True:
        legal = _legal(h)
        if not legal:
            return out
        m = legal[rng.below(len(legal))]
        _apply_inplace(h, m)
        out.append(m)


def _unrank_uniform(N: int, seed: int, i: int) -> list[Move]:
    g = state_graph(N)
    counts = game_counts(N)
    r = Xoshiro256(seed, i).big_below(counts[0])
    node = 0
    out = []
    while g.children[node]:
        for m, j in zip(g.moves[node], g.children[node]):
            if r < counts[j]:
                out.append(m)
                node = j
                break
            r -= counts[j]
    return out


def sample_games(N: int, measure="random", seed: int = 0, count: int = 1) -> Iterator[Game]:
    """Yield ``count`` sampled games; game ``i`` matches ``sample_lengths`` entry ``i``."""
    measure = MeasureKind.parse(measure)
    play = _random_play_game if measure is MeasureKind.RANDOM else _unrank_uniform
    for i in range(count):
        yield Game(N, tuple(play(N, seed, i)))
