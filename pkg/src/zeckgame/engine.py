"""Game states, moves, legal-move generation and whole-game replay.

Bins are 1-based in the public API (``h_1 .. h_L`` with ``L = fib_index(N)``)
and stored as a fixed-length tuple, so ``heights[k - 1]`` is ``h_k``.

Legal moves are always listed in one canonical order: ``C1, C2, ..., C_{L-1},
S2, ..., S_{L-1}``.  Enumeration, the DP and both samplers rely on it.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence

from .errors import DomainError, IllegalMove, NonTerminalEnd
from .numerics import fib, fib_index, zeckendorf

__all__ = [
    "Game",
    "GameState",
    "Move",
    "MoveCounts",
    "Replay",
    "apply_move",
    "format_game",
    "initial_state",
    "is_type_a",
    "legal_moves",
    "parse_game",
    "parse_move",
    "validate_game",
]


class Move(NamedTuple):
    """``Move("C", k)`` is the combine ``C_k``; ``Move("S", k)`` the split ``S_k``."""

    kind: str
    index: int

    def __str__(self) -> str:
        return f"{self.kind}{self.index}"

    @property
    def is_combine(self) -> bool:
        return self.kind == "C"

    @property
    def is_split(self) -> bool:
        return self.kind == "S"


def C(k: int) -> Move:
    return Move("C", k)


def S(k: int) -> Move:
    return Move("S", k)


def is_type_a(move: Move) -> bool:
    """Type A moves are ``C1`` and the splits; Type B are ``C_k`` for k >= 2."""
    return move.kind == "S" or move.index == 1


_MOVE_RE = re.compile(r"^([CS])(\d+)$")


def parse_move(token: str) -> Move:
    m = _MOVE_RE.match(token.strip())
    if not m:
        raise ValueError(f"cannot parse move {token!r}")
    kind, k = m.group(1), int(m.group(2))
    if k < 1 or (kind == "S" and k < 2):
        raise ValueError(f"move index out of range in {token!r}")
    return Move(kind, k)


@dataclass(frozen=True)
class GameState:
    """Bin heights for a game on input ``n_input``."""

    n_input: int
    heights: tuple[int, ...]

    def h(self, k: int) -> int:
        """Height of bin ``k`` (0 outside the buffer)."""
        return self.heights[k - 1] if 1 <= k <= len(self.heights) else 0

    @property
    def n(self) -> int:
        return len(self.heights)

    @property
    def value(self) -> int:
        return sum(h * fib(k) for k, h in enumerate(self.heights, start=1))

    @property
    def tokens(self) -> int:
        return sum(self.heights)

    def is_terminal(self) -> bool:
        return not _legal(self.heights)

    def is_zeckendorf(self) -> bool:
        return self.heights == zeckendorf(self.n_input).bits


def initial_state(N: int) -> GameState:
    """All ``N`` tokens in bin 1."""
    if N < 1:
        raise DomainError(f"N must be >= 1, got {N}")
    L = fib_index(N)
    return GameState(N, (N,) + (0,) * (L - 1))


# -- tuple-level primitives shared with the analysis code --------------------


def _legal(h: Sequence[int]) -> list[Move]:
    L = len(h)
    out = []
    if L >= 1 and h[0] >= 2:
        out.append(Move("C", 1))
    for k in range(2, L):
        if h[k - 2] and h[k - 1]:
            out.append(Move("C", k))
    for k in range(2, L):
        if h[k - 1] >= 2:
            out.append(Move("S", k))
    return out


def _failed_precondition(h: Sequence[int], move: Move) -> str | None:
    kind, k = move
    L = len(h)

    def get(i):
        return h[i - 1] if 1 <= i <= L else 0

    if kind == "C":
        if k == 1:
            return None if get(1) >= 2 else "C1 needs h_1 >= 2"
        if k + 1 > L:
            return f"C{k} would create a token above bin {L}"
        if get(k - 1) < 1 or get(k) < 1:
            return f"C{k} needs h_{k - 1} >= 1 and h_{k} >= 1"
        return None
    if k < 2:
        return "split index must be >= 2"
    if k + 1 > L:
        return f"S{k} would create a token above bin {L}"
    if get(k) < 2:
        return f"S{k} needs h_{k} >= 2"
    return None


def _apply_inplace(h: list[int], move: Move) -> None:
    kind, k = move
    if kind == "C":
        if k == 1:
            h[0] -= 2
            h[1] += 1
        else:
            h[k - 2] -= 1
            h[k - 1] -= 1
            h[k] += 1
    elif k == 2:
        h[1] -= 2
        h[0] += 1
        h[2] += 1
    else:
        h[k - 1] -= 2
        h[k - 3] += 1
        h[k] += 1


def _apply(h: tuple[int, ...], move: Move) -> tuple[int, ...]:
    out = list(h)
    _apply_inplace(out, move)
    return tuple(out)


def legal_moves(s: GameState) -> list[Move]:
    """Legal moves at ``s`` in canonical order; empty iff ``s`` is terminal."""
    return _legal(s.heights)


def apply_move(s: GameState, m: Move) -> GameState:
    """Return the state after playing ``m``; raises ``IllegalMove`` otherwise."""
    reason = _failed_precondition(s.heights, m)
    if reason is not None:
        raise IllegalMove(m, reason)
    return GameState(s.n_input, _apply(s.heights, m))


# -- games --------------------------------------------------------------------


@dataclass(frozen=True)
class Game:
    n_input: int
    moves: tuple[Move, ...]

    def __post_init__(self):
        if not isinstance(self.moves, tuple):
            object.__setattr__(self, "moves", tuple(self.moves))

    def __len__(self) -> int:
        return len(self.moves)

    @property
    def length(self) -> int:
        return len(self.moves)

    def __str__(self) -> str:
        return format_game(self)

    def __add__(self, other: Iterable[Move]) -> "Game":
        extra = other.moves if isinstance(other, Game) else tuple(other)
        return Game(self.n_input, self.moves + extra)

    @classmethod
    def parse(cls, text: str) -> "Game":
        return parse_game(text)

    def states(self) -> list[GameState]:
        """States before the first move and after every move."""
        s = initial_state(self.n_input)
        out = [s]
        for m in self.moves:
            s = apply_move(s, m)
            out.append(s)
        return out

    def probability(self) -> Fraction:
        """Probability of this exact game under uniformly random play."""
        h = list(initial_state(self.n_input).heights)
        p = Fraction(1)
        for m in self.moves:
            p /= len(_legal(h))
            _apply_inplace(h, m)
        return p


def format_game(g: Game) -> str:
    """Serialize as ``N:C1,C1,S2``."""
    return f"{g.n_input}:" + ",".join(map(str, g.moves))


def parse_game(text: str) -> Game:
    head, sep, tail = text.strip().partition(":")
    if not sep:
        raise ValueError(f"game text must look like 'N:C1,C2,...', got {text!r}")
    N = int(head)
    moves = tuple(parse_move(t) for t in tail.split(",")) if tail.strip() else ()
    return Game(N, moves)


@dataclass(frozen=True)
class MoveCounts:
    """Per-move-type counts of a complete game.

    ``mc[k]`` counts ``C_k`` for ``1 <= k <= n - 1``; ``ms[k]`` counts ``S_k``
    for ``2 <= k <= n - 1`` (missing keys are 0).
    """

    n_input: int
    n: int
    mc: dict[int, int] = field(default_factory=dict)
    ms: dict[int, int] = field(default_factory=dict)

    @classmethod
    def from_moves(cls, N: int, moves: Iterable[Move]) -> "MoveCounts":
        n = fib_index(N)
        mc = {k: 0 for k in range(1, n)}
        ms = {k: 0 for k in range(2, n)}
        for kind, k in moves:
            (mc if kind == "C" else ms)[k] += 1
        return cls(N, n, mc, ms)

    @property
    def combines(self) -> int:
        return sum(self.mc.values())

    @property
    def splits(self) -> int:
        return sum(self.ms.values())

    @property
    def length(self) -> int:
        return self.combines + self.splits

    @property
    def type_a_total(self) -> int:
        return self.mc.get(1, 0) + self.splits

    @property
    def type_b_total(self) -> int:
        return self.combines - self.mc.get(1, 0)

    def conserved_sum(self, k: int) -> int:
        """``MS_k + MC_k + MC_{k+1} + ... + MC_{n-1}``."""
        return self.ms.get(k, 0) + sum(c for j, c in self.mc.items() if j >= k)

    def high_index_combines(self, delta) -> int:
        """Number of combines ``C_k`` with ``k > delta * n``."""
        cut = Fraction(str(delta)) * self.n
        return sum(c for k, c in self.mc.items() if k > cut)


@dataclass(frozen=True)
class Replay:
    counts: MoveCounts
    trace: list[tuple[int, ...]] | None

    @property
    def length(self) -> int:
        return self.counts.length


def validate_game(N: int, moves: Iterable[Move], trace: bool = True) -> Replay:
    """Replay ``moves`` from the initial state of ``N``.

    Every move is checked against its precondition and the token value is
    re-checked after each move.  The last state must be terminal.  ``trace``
    holds the heights after each move.
    """
    h = list(initial_state(N).heights)
    weights = [fib(k) for k in range(1, len(h) + 1)]
    moves = list(moves)
    states = [] if trace else None
    for i, m in enumerate(moves, start=1):
        reason = _failed_precondition(h, m)
        if reason is not None:
            raise IllegalMove(m, reason, step=i)
        _apply_inplace(h, m)
        if trace:
            if sum(x * w for x, w in zip(h, weights)) != N:
                raise AssertionError(f"token value not conserved at step {i}")
            states.append(tuple(h))
    if sum(x * w for x, w in zip(h, weights)) != N:
        raise AssertionError("token value not conserved")
    left = _legal(h)
    if left:
        raise NonTerminalEnd(
            f"{len(left)} legal move(s) remain after the last move, e.g. {left[0]}"
        )
    if tuple(h) != zeckendorf(N).bits:
        raise AssertionError("terminal state differs from the Zeckendorf state")
    return Replay(MoveCounts.from_moves(N, moves), states)
