"""Deterministic game constructors: shortest, longest, Type-A-only, the
add-one tail, the length upper bound and games of any achievable length."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .engine import (
    Game,
    Move,
    _apply,
    _apply_inplace,
    _legal,
    initial_state,
    is_type_a,
    validate_game,
)
from .errors import (
    DomainError,
    InvalidTarget,
    LengthOutOfRange,
    NotTypeAExpressible,
)
from .numerics import ZeckDecomposition, fib, fib_index, floor_phi_times, zeckendorf

__all__ = [
    "BASE_CASE_MAX_N",
    "CombineMultiset",
    "LengthInterval",
    "TYPE_A_ORDERS",
    "achievable_interval",
    "add_one_tail",
    "combine_multiset",
    "game_of_length",
    "length_upper_bound",
    "longest_game",
    "longest_length",
    "shortest_game",
    "type_a_game",
]

# largest input settled by exhaustive search; the interval recursion starts above it
BASE_CASE_MAX_N = 12
SEARCH_NODE_BUDGET = 10**6

TYPE_A_ORDERS = ("highest-index-first", "lowest-index-first", "C1-last", "C1-first")


@dataclass(frozen=True)
class CombineMultiset:
    """How many times each ``C_k`` is played in any combine-only game."""

    n_input: int
    mc: tuple[int, ...]  # mc[k - 1] = MC_k

    def __getitem__(self, k: int) -> int:
        return self.mc[k - 1] if 1 <= k <= len(self.mc) else 0

    @property
    def total(self) -> int:
        return sum(self.mc)


@dataclass(frozen=True)
class LengthInterval:
    lo: int
    hi: int

    def __contains__(self, m: int) -> bool:
        return self.lo <= m <= self.hi

    def __iter__(self):
        return iter(range(self.lo, self.hi + 1))

    def __len__(self) -> int:
        return self.hi - self.lo + 1


def _target_heights(N: int, target) -> list[int]:
    n = fib_index(N)
    if target is None:
        return list(zeckendorf(N).bits)
    if isinstance(target, ZeckDecomposition):
        heights = list(target.bits)
    else:
        heights = [int(x) for x in target]
    if any(x < 0 for x in heights):
        raise InvalidTarget(f"negative height in target {heights}")
    while len(heights) > n and heights[-1] == 0:
        heights.pop()
    if len(heights) > n:
        raise InvalidTarget(f"target uses bin {len(heights)} > {n}")
    heights += [0] * (n - len(heights))
    if sum(x * fib(k) for k, x in enumerate(heights, start=1)) != N:
        raise InvalidTarget(f"target {heights} does not sum to {N}")
    return heights


def combine_multiset(N: int, target=None) -> CombineMultiset:
    """Solve the bin-balance system for the combine counts reaching ``target``.

    ``target`` is a height vector (or a ``ZeckDecomposition``); it defaults to
    the Zeckendorf decomposition of ``N``.  Bin ``k >= 2`` gains one token per
    ``C_{k-1}`` and loses one per ``C_k`` and ``C_{k+1}``, so the counts are
    fixed from the top bin downwards; bin 1 is the consistency check.
    """
    t = _target_heights(N, target)
    n = len(t)
    mc = [0] * (n + 1)  # mc[k] = MC_k, MC_n and above are 0
    for k in range(n, 1, -1):
        above = mc[k] + (mc[k + 1] if k + 1 <= n else 0)
        mc[k - 1] = t[k - 1] + above
    if N - 2 * mc[1] - (mc[2] if n >= 2 else 0) != t[0]:
        raise InvalidTarget("bin 1 balance fails for target")
    return CombineMultiset(N, tuple(mc[1:n]))


def shortest_game(N: int, target=None) -> Game:
    """Combine-only game from the initial state to ``target``.

    Built backwards: the highest token outside bin 1 is repeatedly split into
    the two tokens a combine would have consumed, and the recorded combines are
    then played in reverse.  With the default target this is a shortest
    complete game of length ``N - Z(N)``.
    """
    h = _target_heights(N, target)
    backwards = []
    top = len(h)
    while True:
        while top >= 2 and h[top - 1] == 0:
            top -= 1
        if top < 2:
            break
        h[top - 1] -= 1
        if top == 2:
            h[0] += 2
            backwards.append(Move("C", 1))
        else:
            h[top - 3] += 1
            h[top - 2] += 1
            backwards.append(Move("C", top - 1))
    backwards.reverse()
    return Game(N, tuple(backwards))


def _type_a_rank(order: str):
    """Sort key over Type A moves for the given policy (lower plays first)."""
    if order == "highest-index-first":
        return lambda m: -m.index
    if order == "lowest-index-first":
        return lambda m: m.index
    if order == "C1-last":
        return lambda m: (m.kind == "C", m.index)
    if order == "C1-first":
        return lambda m: (m.kind != "C", -m.index)
    raise ValueError(f"unknown type_a_order {order!r}; choose from {TYPE_A_ORDERS}")


def _greedy_longest_from(h: list[int], order: str) -> list[Move]:
    """Play Type A moves while any exists, else the lowest combine; mutates h."""
    rank = _type_a_rank(order)
    out = []
    while True:
        legal = _legal(h)
        if not legal:
            return out
        type_a = [m for m in legal if is_type_a(m)]
        m = min(type_a, key=rank) if type_a else legal[0]
        _apply_inplace(h, m)
        out.append(m)


def longest_game(N: int, type_a_order: str = "highest-index-first") -> Game:
    """A longest game: any Type A move when one exists, else the lowest combine."""
    h = list(initial_state(N).heights)
    return Game(N, tuple(_greedy_longest_from(h, type_a_order)))


@lru_cache(maxsize=None)
def longest_length(N: int) -> int:
    return len(longest_game(N))


def length_upper_bound(N: int) -> int:
    """``floor(phi^2 N - Z_I(N) - 2 Z(N) + phi - 1)``, computed exactly.

    ``phi^2 N + phi - 1 = phi (N + 1) + N - 1`` and only ``floor(phi (N + 1))``
    needs irrational arithmetic; it is done with an integer square root.
    """
    if N < 1:
        raise DomainError(f"N must be >= 1, got {N}")
    z = zeckendorf(N)
    return floor_phi_times(N + 1) + N - 1 - z.z_index_sum - 2 * z.z_count


def add_one_tail(N: int) -> tuple[Move, ...]:
    """Forced combines from ``zeckendorf(N - 1)`` plus one extra ``F_1`` to
    ``zeckendorf(N)``."""
    if N < 2:
        raise DomainError(f"add_one_tail needs N >= 2, got {N}")
    n = fib_index(N)
    h = list(zeckendorf(N - 1).bits)
    h += [0] * (n - len(h))
    h[0] += 1
    out = []
    while True:
        legal = _legal(h)
        if not legal:
            break
        if len(legal) != 1 or legal[0].kind != "C":
            raise AssertionError(f"tail from {h} is not forced: {legal}")
        _apply_inplace(h, legal[0])
        out.append(legal[0])
    if tuple(h) != zeckendorf(N).bits:
        raise AssertionError("add-one tail did not reach the Zeckendorf state")
    return tuple(out)


def _fibonacci_minus_one_index(N: int) -> int | None:
    k = fib_index(N + 1)
    return k if fib(k) == N + 1 and k >= 2 else None


def _greedy_type_a(h: list[int], rank) -> list[Move] | None:
    out = []
    while True:
        legal = _legal(h)
        if not legal:
            return out
        type_a = [m for m in legal if is_type_a(m)]
        if not type_a:
            return None
        m = min(type_a, key=rank)
        _apply_inplace(h, m)
        out.append(m)


def _search_type_a(start: tuple[int, ...], rank) -> list[Move]:
    dead = set()
    path: list[Move] = []

    def search(h: tuple[int, ...]) -> bool:
        legal = _legal(h)
        if not legal:
            return True
        if h in dead:
            return False
        for m in sorted((m for m in legal if is_type_a(m)), key=rank):
            path.append(m)
            if search(_apply(h, m)):
                return True
            path.pop()
        dead.add(h)
        return False

    if not search(start):
        raise AssertionError("no Type A game found")
    return path


def type_a_game(N: int, type_a_order: str = "highest-index-first") -> Game:
    """A complete game using only ``C1`` and splits (needs ``N = F_k - 1``)."""
    if N < 1:
        raise DomainError(f"N must be >= 1, got {N}")
    if _fibonacci_minus_one_index(N) is None:
        raise NotTypeAExpressible(f"{N} is not of the form F_k - 1")
    rank = _type_a_rank(type_a_order)
    h = list(initial_state(N).heights)
    path = _greedy_type_a(h, rank)
    if path is None:
        path = _search_type_a(initial_state(N).heights, rank)
    game = Game(N, tuple(path))
    validate_game(N, game.moves, trace=False)
    return game


def achievable_interval(N: int) -> LengthInterval:
    """``[N - Z(N), longest length]``; every length in it is realized."""
    return LengthInterval(N - zeckendorf(N).z_count, longest_length(N))


@lru_cache(maxsize=None)
def _base_case_games(N: int) -> dict[int, Game]:
    from .analysis import enumerate_games

    found: dict[int, Game] = {}
    for g in enumerate_games(N):
        found.setdefault(len(g), g)
    return found


def _search_game_of_length(N: int, m: int, budget: int = SEARCH_NODE_BUDGET) -> Game:
    """Bounded depth-first search for a game of exact length ``m``."""
    dead: set[tuple[tuple[int, ...], int]] = set()
    path: list[Move] = []
    nodes = 0

    def search(h, left) -> bool:
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise LengthOutOfRange(f"search budget exhausted looking for length {m}")
        legal = _legal(h)
        if not legal:
            return left == 0
        if left <= 0 or (h, left) in dead:
            return False
        for mv in legal:
            path.append(mv)
            if search(_apply(h, mv), left - 1):
                return True
            path.pop()
        dead.add((h, left))
        return False

    if not search(initial_state(N).heights, m):
        raise LengthOutOfRange(f"no game of length {m} on input {N}")
    return Game(N, tuple(path))


def game_of_length(N: int, m: int) -> Game:
    """A game on ``N`` with exactly ``m`` moves.

    Above the base case, either ``m`` is reachable by a game on ``N - 1``
    followed by the add-one tail, or by a game on ``F_n - 1`` followed by the
    longest continuation from the position it leaves.  Each step shrinks the
    input, so the construction is a loop collecting suffixes.
    """
    interval = achievable_interval(N)
    if m not in interval:
        raise LengthOutOfRange(f"length {m} not in [{interval.lo}, {interval.hi}] for N = {N}")
    outer_N, outer_m = N, m
    suffixes: list[tuple[Move, ...]] = []
    while N > BASE_CASE_MAX_N:
        tail = add_one_tail(N)
        if m - len(tail) <= longest_length(N - 1):
            suffixes.append(tail)
            N, m = N - 1, m - len(tail)
            continue
        small = fib(fib_index(N)) - 1
        h = list(zeckendorf(small).bits)
        h += [0] * (fib_index(N) - len(h))
        h[0] += N - small
        rest = _greedy_longest_from(h, "highest-index-first")
        if m - len(rest) not in achievable_interval(small):
            break
        suffixes.append(tuple(rest))
        N, m = small, m - len(rest)
    if N <= BASE_CASE_MAX_N:
        core = _base_case_games(N).get(m)
        moves = list(core.moves) if core is not None else None
    else:
        moves = None
    if moves is not None:
        for suffix in reversed(suffixes):
            moves.extend(suffix)
        if len(moves) == outer_m:
            game = Game(outer_N, tuple(moves))
            validate_game(outer_N, game.moves, trace=False)
            return game
    return _search_game_of_length(outer_N, outer_m)
