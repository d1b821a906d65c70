"""Exact distributional analysis over the reachable-state graph.

Every quantity here (game counts, length laws under both measures, the set of
achievable lengths, shortest-game counts) is a fold over the same DAG: states
are height tuples, edges are legal moves in canonical order, and nodes are
evaluated children-first so no recursion is needed.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import lru_cache, reduce
from typing import Iterator

import numpy as np

from .engine import Game, Move, _apply, _legal, initial_state
from .errors import EnumerationCapExceeded, StateBudgetExceeded
from .numerics import catalan, fib, fib_index

__all__ = [
    "DEFAULT_ENUMERATION_CAP",
    "DEFAULT_STATE_BUDGET",
    "LengthDistribution",
    "MeasureKind",
    "StateGraph",
    "achievable_length_set",
    "count_games",
    "enumerate_games",
    "length_distribution",
    "mod_z_distribution",
    "shortest_game_count",
    "state_budget",
    "state_graph",
]

DEFAULT_STATE_BUDGET = 10**7
DEFAULT_ENUMERATION_CAP = 14
# exact random-play weights switch to floats past this denominator size
DEFAULT_DENOMINATOR_BITS = 1 << 16


class MeasureKind(str, Enum):
    UNIFORM = "uniform"
    RANDOM = "random"

    @classmethod
    def parse(cls, value) -> "MeasureKind":
        if isinstance(value, cls):
            return value
        key = str(value).strip().lower()
        aliases = {"mu": "uniform", "uniform": "uniform", "random": "random",
                   "p": "random", "randomplay": "random", "random-play": "random"}
        if key not in aliases:
            raise ValueError(f"unknown measure {value!r} (use 'uniform' or 'random')")
        return cls(aliases[key])


def state_budget() -> int:
    """State budget, overridable through ``ZECKGAME_STATE_BUDGET``."""
    raw = os.environ.get("ZECKGAME_STATE_BUDGET")
    return int(raw) if raw else DEFAULT_STATE_BUDGET


@dataclass
class LengthDistribution:
    """Law of the game length.

    ``weights`` maps length to a big-integer count (``weight_kind="count"``),
    an exact ``Fraction`` (``"rational"``) or a float (``"double"``).
    """

    n: int
    measure: str
    weight_kind: str
    weights: dict[int, object]
    total_games: int | None = None

    def __post_init__(self):
        self.weights = {k: w for k, w in sorted(self.weights.items()) if w}

    @property
    def support(self) -> list[int]:
        return list(self.weights)

    def total_weight(self):
        return sum(self.weights.values())

    def probabilities(self) -> dict[int, object]:
        """Normalized weights (exact ``Fraction`` unless in double mode)."""
        if self.weight_kind == "count":
            total = self.total_weight()
            return {k: Fraction(w, total) for k, w in self.weights.items()}
        if self.weight_kind == "rational":
            total = self.total_weight()
            return {k: Fraction(w) / total for k, w in self.weights.items()}
        total = float(self.total_weight())
        return {k: float(w) / total for k, w in self.weights.items()}

    @property
    def is_exact(self) -> bool:
        return self.weight_kind != "double"

    def residues(self, Z: int) -> list:
        zero = Fraction(0) if self.is_exact else 0.0
        out = [zero] * Z
        for k, p in self.probabilities().items():
            out[k % Z] += p
        return out


@dataclass
class StateGraph:
    """Reachable positions of the game on ``N``.

    ``order`` lists node indices children-first; node 0 is the start.
    """

    N: int
    states: list[tuple[int, ...]]
    index: dict[tuple[int, ...], int]
    moves: list[list[Move]]
    children: list[list[int]]
    order: list[int] = field(repr=False)

    def __len__(self) -> int:
        return len(self.states)

    def is_terminal(self, i: int) -> bool:
        return not self.children[i]


def _build_graph(N: int, budget: int) -> StateGraph:
    root = initial_state(N).heights
    states = [root]
    index = {root: 0}
    moves: list[list[Move]] = []
    children: list[list[int]] = []
    i = 0
    while i < len(states):
        h = states[i]
        ms = _legal(h)
        kids = []
        for m in ms:
            c = _apply(h, m)
            j = index.get(c)
            if j is None:
                j = len(states)
                if j >= budget:
                    raise StateBudgetExceeded(
                        f"more than {budget} reachable states for N = {N}"
                    )
                index[c] = j
                states.append(c)
            kids.append(j)
        moves.append(ms)
        children.append(kids)
        i += 1

    # children-first order by iterative depth-first search
    order = []
    done = [False] * len(states)
    stack = [(0, 0)]
    while stack:
        node, pos = stack.pop()
        kids = children[node]
        while pos < len(kids) and done[kids[pos]]:
            pos += 1
        if pos < len(kids):
            stack.append((node, pos + 1))
            stack.append((kids[pos], 0))
        elif not done[node]:
            done[node] = True
            order.append(node)
    return StateGraph(N, states, index, moves, children, order)


@lru_cache(maxsize=32)
def _cached_graph(N: int, budget: int) -> StateGraph:
    return _build_graph(N, budget)


def state_graph(N: int, budget: int | None = None) -> StateGraph:
    return _cached_graph(N, budget if budget is not None else state_budget())


def _game_counts(g: StateGraph) -> list[int]:
    counts = [0] * len(g)
    for i in g.order:
        kids = g.children[i]
        counts[i] = sum(counts[j] for j in kids) if kids else 1
    return counts


@lru_cache(maxsize=32)
def _cached_counts(N: int, budget: int) -> tuple[int, ...]:
    return tuple(_game_counts(_cached_graph(N, budget)))


def game_counts(N: int, budget: int | None = None) -> tuple[int, ...]:
    """Number of complete continuations from every node of ``state_graph(N)``."""
    return _cached_counts(N, budget if budget is not None else state_budget())


def count_games(N: int, budget: int | None = None) -> int:
    """``|Omega_N|``, the number of complete games."""
    return game_counts(N, budget)[0]


def _shifted_sum(parts):
    """Sum ``(lo, array)`` laws, each shifted by one move."""
    lo = min(p[0] for p in parts)
    hi = max(p[0] + len(p[1]) for p in parts)
    dtype = parts[0][1].dtype
    acc = np.zeros(hi - lo, dtype=dtype)
    for plo, arr in parts:
        acc[plo - lo: plo - lo + len(arr)] += arr
    return lo + 1, acc


class _DenominatorOverflow(Exception):
    pass


def _uniform_law(g: StateGraph):
    law: list = [None] * len(g)
    for i in g.order:
        kids = g.children[i]
        if not kids:
            law[i] = (0, np.array([1], dtype=object))
        else:
            law[i] = _shifted_sum([law[j] for j in kids])
    return law[0]


def _random_law_exact(g: StateGraph, max_bits: int):
    # node law = numerators / common denominator
    law: list = [None] * len(g)
    for i in g.order:
        kids = g.children[i]
        if not kids:
            law[i] = (0, np.array([1], dtype=object), 1)
            continue
        den = reduce(math.lcm, (law[j][2] for j in kids))
        parts = [(law[j][0], law[j][1] * (den // law[j][2])) for j in kids]
        lo, num = _shifted_sum(parts)
        den *= len(kids)
        if den.bit_length() > max_bits:
            raise _DenominatorOverflow
        law[i] = (lo, num, den)
    return law[0]


def _random_law_float(g: StateGraph):
    law: list = [None] * len(g)
    for i in g.order:
        kids = g.children[i]
        if not kids:
            law[i] = (0, np.array([1.0]))
        else:
            lo, acc = _shifted_sum([law[j] for j in kids])
            law[i] = (lo, acc / len(kids))
    return law[0]


def length_distribution(
    N: int,
    measure="uniform",
    *,
    budget: int | None = None,
    max_denominator_bits: int = DEFAULT_DENOMINATOR_BITS,
    exact: bool = True,
) -> LengthDistribution:
    """Exact law of the game length on ``N`` under ``measure``.

    Uniform: big-integer counts of games per length.  Random play: exact
    rationals, falling back to floats (``weight_kind="double"``) when a
    denominator exceeds ``max_denominator_bits`` or ``exact`` is False.
    """
    measure = MeasureKind.parse(measure)
    g = state_graph(N, budget)
    if measure is MeasureKind.UNIFORM:
        lo, arr = _uniform_law(g)
        weights = {lo + i: int(w) for i, w in enumerate(arr)}
        return LengthDistribution(N, measure.value, "count", weights, sum(weights.values()))
    total = count_games(N, budget)
    if exact:
        try:
            lo, num, den = _random_law_exact(g, max_denominator_bits)
            weights = {lo + i: Fraction(int(w), den) for i, w in enumerate(num)}
            return LengthDistribution(N, measure.value, "rational", weights, total)
        except _DenominatorOverflow:
            pass
    lo, arr = _random_law_float(g)
    weights = {lo + i: float(w) for i, w in enumerate(arr)}
    return LengthDistribution(N, measure.value, "double", weights, total)


def mod_z_distribution(N: int, measure="uniform", Z: int = 2, **kwargs) -> list:
    """``P(length = z mod Z)`` for ``z = 0..Z-1``.

    With ``Z = 2`` entry 1 is the probability that Player 1 wins (odd length).
    """
    if Z < 1:
        raise ValueError("Z must be >= 1")
    return length_distribution(N, measure, **kwargs).residues(Z)


def achievable_length_set(N: int, budget: int | None = None) -> set[int]:
    """All game lengths realized on ``N``, from per-node length bitsets."""
    g = state_graph(N, budget)
    bits = [0] * len(g)
    for i in g.order:
        kids = g.children[i]
        if not kids:
            bits[i] = 1
        else:
            acc = 0
            for j in kids:
                acc |= bits[j]
            bits[i] = acc << 1
    b = bits[0]
    return {k for k in range(b.bit_length()) if b >> k & 1}


def catalan_bound(N: int) -> int:
    """``prod_{k=1}^{n-2} Cat(F_k)`` with ``n = fib_index(N)``."""
    n = fib_index(N)
    out = 1
    for k in range(1, n - 1):
        out *= catalan(fib(k))
    return out


def shortest_game_count(N: int, budget: int | None = None) -> tuple[int, int]:
    """Number of combine-only complete games, and the Catalan lower bound."""
    g = state_graph(N, budget)
    counts = [0] * len(g)
    for i in g.order:
        if not g.children[i]:
            counts[i] = 1
            continue
        counts[i] = sum(
            counts[j] for m, j in zip(g.moves[i], g.children[i]) if m.kind == "C"
        )
    return counts[0], catalan_bound(N)


def enumerate_games(N: int, cap: int = DEFAULT_ENUMERATION_CAP) -> Iterator[Game]:
    """Every complete game on ``N`` exactly once, depth-first in canonical order."""
    if N > cap:
        raise EnumerationCapExceeded(f"N = {N} exceeds the enumeration cap {cap}")
    root = initial_state(N).heights
    path: list[Move] = []
    stack = [(root, _legal(root), 0)]
    while stack:
        h, legal, pos = stack.pop()
        if not legal:
            yield Game(N, tuple(path))
            if path:
                path.pop()
            continue
        if pos == len(legal):
            if path:
                path.pop()
            continue
        m = legal[pos]
        stack.append((h, legal, pos + 1))
        child = _apply(h, m)
        path.append(m)
        stack.append((child, _legal(child), 0))
