"""Partitions of the game set by prefix/suffix interchanges.

A combine ``C_k`` can often be replaced by a short chain with the same net
effect on the bins:

* basic prefix: ``S_k, C_{k-1}``  (one step, only if the move before is not
  ``S_{k+1}``);
* prefix of length l: ``S_k, S_{k-1}, ..., S_{k-l+1}, C_{k-l}``;
* suffix of length l: ``C_{k-l}, S_{k-l+1}, ..., S_k``.

Compressing every such chain back into its combine gives the *base sequence*
of a game; two games are in the same class iff their base sequences agree.
Each combine of the base that admits at least one expansion is a delimiter;
its expansions are independent of each other, which is what makes the class
law a convolution of per-delimiter increments.
"""

from __future__ import annotations

import itertools
import math
from collections import defaultdict
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Iterable, Sequence

from .analysis import (
    DEFAULT_ENUMERATION_CAP,
    LengthDistribution,
    MeasureKind,
    count_games,
    enumerate_games,
)
from .engine import Game, Move, _apply, _failed_precondition, _legal, initial_state
from .errors import NotARepresentative, ZeroVarianceClass
from .numerics import fib_index
from .stats import ks_to_normal

__all__ = [
    "BaseSequence",
    "ClassKS",
    "ClassSummary",
    "Delimiter",
    "MStatistics",
    "PartitionReport",
    "SchemeKind",
    "class_ks",
    "class_summary",
    "compress",
    "convolve_increments",
    "expansion",
    "m_statistics",
    "partition_check",
    "representative",
]


class SchemeKind(str, Enum):
    BASIC_PREFIX = "basic"
    PREFIX = "prefix"
    SUFFIX = "suffix"

    @classmethod
    def parse(cls, value) -> "SchemeKind":
        if isinstance(value, cls):
            return value
        key = str(value).strip().lower().replace("_", "-")
        aliases = {"basic": "basic", "basic-prefix": "basic", "basicprefix": "basic",
                   "prefix": "prefix", "suffix": "suffix"}
        if key not in aliases:
            raise ValueError(f"unknown scheme {value!r} (use basic, prefix or suffix)")
        return cls(aliases[key])


def expansion(move: Move, l: int, scheme) -> list[Move]:
    """The length-``l`` chain standing in for the combine ``move``."""
    scheme = SchemeKind.parse(scheme)
    k = move.index
    if l == 0:
        return [move]
    if scheme is SchemeKind.SUFFIX:
        return [Move("C", k - l)] + [Move("S", j) for j in range(k - l + 1, k + 1)]
    return [Move("S", j) for j in range(k, k - l, -1)] + [Move("C", k - l)]


def compress(moves: Sequence[Move], scheme) -> list[tuple[Move, int]]:
    """Base sequence of ``moves`` as ``(move, absorbed)`` pairs.

    ``absorbed`` is the number of splits folded into a combine (always 0 for
    splits left standing).
    """
    scheme = SchemeKind.parse(scheme)
    out: list[tuple[Move, int]] = []
    if scheme is SchemeKind.BASIC_PREFIX:
        i = 0
        while i < len(moves):
            m = moves[i]
            if (
                m.kind == "S"
                and i + 1 < len(moves)
                and moves[i + 1] == Move("C", m.index - 1)
                and (i == 0 or moves[i - 1] != Move("S", m.index + 1))
            ):
                out.append((Move("C", m.index), 1))
                i += 2
            else:
                out.append((m, 0))
                i += 1
        return out
    if scheme is SchemeKind.PREFIX:
        for m in moves:
            if m.kind == "C":
                l = 0
                while out and out[-1] == (Move("S", m.index + l + 1), 0):
                    out.pop()
                    l += 1
                out.append((Move("C", m.index + l), l))
            else:
                out.append((m, 0))
        return out
    for m in moves:
        if m.kind == "S" and out and out[-1][0] == Move("C", m.index - 1):
            out[-1] = (Move("C", m.index), out[-1][1] + 1)
        else:
            out.append((m, 0))
    return out


def _basic_compress_restart(moves: Sequence[Move]) -> list[Move]:
    """Rewrite-and-restart form of the basic compression (reference only)."""
    moves = list(moves)
    changed = True
    while changed:
        changed = False
        for i in range(len(moves) - 1):
            m = moves[i]
            if (
                m.kind == "S"
                and moves[i + 1] == Move("C", m.index - 1)
                and (i == 0 or moves[i - 1] != Move("S", m.index + 1))
            ):
                moves[i: i + 2] = [Move("C", m.index)]
                changed = True
                break
    return moves


@dataclass(frozen=True)
class Delimiter:
    """A base combine with ``max_len >= 1`` admissible expansions.

    ``weights[l]`` is the random-play weight of expansion length ``l``
    relative to the bare combine (``weights[0] = 1``); ``branch_count`` is the
    number of legal moves right after the first inserted move.
    """

    position: int
    move: Move
    max_len: int
    weights: tuple[Fraction, ...]
    branch_count: int

    def law(self, measure) -> list[Fraction]:
        """Distribution of the expansion length given the class."""
        if MeasureKind.parse(measure) is MeasureKind.UNIFORM:
            return [Fraction(1, self.max_len + 1)] * (self.max_len + 1)
        total = sum(self.weights)
        return [w / total for w in self.weights]

    def p(self, measure) -> Fraction:
        """Probability that the delimiter is expanded at all."""
        return 1 - self.law(measure)[0]


@dataclass(frozen=True)
class BaseSequence:
    """Compressed game plus its delimiters."""

    n_input: int
    scheme: str
    moves: tuple[Move, ...]
    delimiters: tuple[Delimiter, ...]

    @property
    def m(self) -> int:
        return len(self.delimiters)

    @property
    def class_size(self) -> int:
        return math.prod(d.max_len + 1 for d in self.delimiters)

    def expand(self, choice: Sequence[int]) -> Game:
        """The class member with expansion length ``choice[i]`` at delimiter ``i``."""
        if len(choice) != self.m:
            raise ValueError(f"need {self.m} expansion lengths, got {len(choice)}")
        at = {d.position: (d, l) for d, l in zip(self.delimiters, choice)}
        out: list[Move] = []
        for i, mv in enumerate(self.moves):
            if i in at:
                d, l = at[i]
                if not 0 <= l <= d.max_len:
                    raise ValueError(f"expansion {l} outside [0, {d.max_len}]")
                out.extend(expansion(mv, l, self.scheme))
            else:
                out.append(mv)
        return Game(self.n_input, tuple(out))

    def canonical_choice(self) -> tuple[int, ...]:
        if self.scheme == SchemeKind.BASIC_PREFIX.value:
            return (0,) * self.m
        return tuple(d.max_len for d in self.delimiters)

    def members(self) -> Iterable[tuple[tuple[int, ...], Game]]:
        for choice in itertools.product(*(range(d.max_len + 1) for d in self.delimiters)):
            yield choice, self.expand(choice)


def _delimiter_at(h, prev: Move | None, move: Move, scheme: SchemeKind, position: int):
    k = move.index
    if move.kind != "C" or k < 2:
        return None
    if scheme is SchemeKind.BASIC_PREFIX:
        if prev == Move("S", k + 1) or h[k - 1] < 2:
            return None
        max_l = 1
    else:
        max_l = k - 1
    weights = [Fraction(1)]
    branch = 0
    for l in range(1, max_l + 1):
        chain = expansion(move, l, scheme)
        cur = h
        w = Fraction(1)
        ok = True
        for j, mv in enumerate(chain):
            if _failed_precondition(cur, mv) is not None:
                ok = False
                break
            cur = _apply(cur, mv)
            if j < len(chain) - 1:
                deg = len(_legal(cur))
                w /= deg
                if l == 1 and j == 0:
                    branch = deg
        if not ok:
            break  # admissible lengths form an initial segment
        weights.append(w)
    if len(weights) == 1:
        return None
    return Delimiter(position, move, len(weights) - 1, tuple(weights), branch)


def _base_sequence(N: int, base: Sequence[Move], scheme: SchemeKind) -> BaseSequence:
    h = initial_state(N).heights
    delims = []
    prev = None
    for i, mv in enumerate(base):
        d = _delimiter_at(h, prev, mv, scheme, i)
        if d is not None:
            delims.append(d)
        h = _apply(h, mv)
        prev = mv
    return BaseSequence(N, scheme.value, tuple(base), tuple(delims))


def _decompose(g: Game, scheme: SchemeKind) -> tuple[BaseSequence, tuple[int, ...]]:
    pairs = compress(g.moves, scheme)
    base = _base_sequence(g.n_input, [m for m, _ in pairs], scheme)
    choice = tuple(pairs[d.position][1] for d in base.delimiters)
    return base, choice


def representative(g: Game, scheme) -> tuple[Game, BaseSequence]:
    """Class representative of ``g`` and the class base sequence.

    Basic prefix classes are represented by the compressed game; prefix and
    suffix classes by the maximal expansion of every delimiter.
    """
    scheme = SchemeKind.parse(scheme)
    base, _ = _decompose(g, scheme)
    return base.expand(base.canonical_choice()), base


def expansion_choice(g: Game, scheme) -> tuple[BaseSequence, tuple[int, ...]]:
    """Base sequence of ``g`` and the expansion length used at each delimiter."""
    return _decompose(g, SchemeKind.parse(scheme))


def convolve_increments(laws: Iterable[Sequence], offset: int = 0) -> dict[int, object]:
    """Law of ``offset + sum of independent increments`` (``laws[i][l] = P(l)``)."""
    dist = {offset: Fraction(1)}
    for law in laws:
        nxt: dict[int, object] = defaultdict(int)
        for x, px in dist.items():
            for l, pl in enumerate(law):
                if pl:
                    nxt[x + l] += px * pl
        dist = dict(nxt)
    return dist


@dataclass
class ClassSummary:
    representative: Game
    scheme: str
    measure: str
    base: BaseSequence
    m: int
    class_size: int
    bernoulli_params: list[Fraction]
    branch_counts: list[int]
    increment_laws: list[list[Fraction]]
    conditional_dist: LengthDistribution
    class_prob: Fraction


def _game_probability(moves: Sequence[Move], N: int) -> Fraction:
    return Game(N, tuple(moves)).probability()


def class_summary(rep: Game, scheme, measure="uniform") -> ClassSummary:
    """Size, delimiter parameters, conditional length law and probability of
    the class represented by ``rep``."""
    scheme = SchemeKind.parse(scheme)
    measure = MeasureKind.parse(measure)
    canon, base = representative(rep, scheme)
    if canon != rep:
        raise NotARepresentative(f"{rep} is not a {scheme.value} representative")
    laws = [d.law(measure) for d in base.delimiters]
    dist = convolve_increments(laws, offset=len(base.moves))
    cond = LengthDistribution(rep.n_input, measure.value, "rational", dist)
    if measure is MeasureKind.UNIFORM:
        prob = Fraction(base.class_size, count_games(rep.n_input))
    else:
        prob = _game_probability(base.moves, rep.n_input)
        for d in base.delimiters:
            prob *= sum(d.weights)
    return ClassSummary(
        rep,
        scheme.value,
        measure.value,
        base,
        base.m,
        base.class_size,
        [d.p(measure) for d in base.delimiters],
        [d.branch_count for d in base.delimiters],
        laws,
        cond,
        prob,
    )


@dataclass
class PartitionReport:
    n: int
    scheme: str
    n_games: int
    classes: dict[str, int]
    prob_sums: dict[str, Fraction]
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    @property
    def n_classes(self) -> int:
        return len(self.classes)


def partition_check(N: int, scheme, cap: int = DEFAULT_ENUMERATION_CAP) -> PartitionReport:
    """Check that the classes of ``scheme`` partition all games on ``N``.

    Every enumerated game is mapped to its representative; the classes must be
    disjoint, cover the game set, contain exactly the expansions of their base
    sequence, have the predicted size and carry total probability 1 under
    both measures.  Failures name the first offending game.
    """
    scheme = SchemeKind.parse(scheme)
    games = list(enumerate_games(N, cap))
    groups: dict[Game, list[Game]] = defaultdict(list)
    failures: list[str] = []
    for g in games:
        rep, _ = representative(g, scheme)
        if representative(rep, scheme)[0] != rep:
            failures.append(f"representative of {g} is not a fixed point")
        groups[rep].append(g)
    seen: set[Game] = set()
    sums = {"uniform": Fraction(0), "random": Fraction(0)}
    for rep, members in groups.items():
        base = representative(rep, scheme)[1]
        expected = {g for _, g in base.members()}
        if set(members) != expected:
            odd = sorted(set(members) ^ expected, key=str)[0]
            failures.append(f"class of {rep} mismatches its expansions at {odd}")
        overlap = seen & set(members)
        if overlap:
            failures.append(f"{next(iter(overlap))} lies in two classes")
        seen |= set(members)
        size = len(members)
        if size != base.class_size:
            failures.append(f"class of {rep} has {size} games, formula gives {base.class_size}")
        if scheme is SchemeKind.BASIC_PREFIX and size != 2**base.m:
            failures.append(f"class of {rep} has size {size} != 2^{base.m}")
        for measure in ("uniform", "random"):
            sums[measure] += class_summary(rep, scheme, measure).class_prob
    if len(seen) != len(games):
        failures.append(f"classes cover {len(seen)} of {len(games)} games")
    for measure, total in sums.items():
        if total != 1:
            failures.append(f"class probabilities under {measure} sum to {total}")
    return PartitionReport(
        N,
        scheme.value,
        len(games),
        {str(rep): len(ms) for rep, ms in sorted(groups.items(), key=lambda kv: str(kv[0]))},
        sums,
        failures,
    )


# -- m statistics -------------------------------------------------------------


def _basic_delta(h, p2: Move | None, p1: Move | None, move: Move) -> int:
    """1 iff ``move`` closes a basic-prefix delimiter of the containing class."""
    if move.kind != "C":
        return 0
    j = move.index
    if p1 == Move("S", j + 1):
        return int(p2 != Move("S", j + 2))
    return int(j >= 2 and h[j - 1] >= 2)


def _ccc_delta(h, p2, p1, move) -> int:
    return int(move == Move("C", 2) and p1 == Move("C", 1) and p2 == Move("C", 1))


def _path_law(N: int, measure: MeasureKind, delta) -> dict[int, object]:
    """Law of ``sum_i delta(h(i), M_{i-2}, M_{i-1}, M_i)`` over complete games."""
    uniform = measure is MeasureKind.UNIFORM
    memo: dict = {}
    root = (initial_state(N).heights, None, None)
    stack = [root]
    while stack:
        key = stack[-1]
        if key in memo:
            stack.pop()
            continue
        h, p2, p1 = key
        legal = _legal(h)
        kids = [(_apply(h, mv), p1, mv) for mv in legal]
        missing = [c for c in kids if c not in memo]
        if missing:
            stack.extend(missing)
            continue
        stack.pop()
        if not legal:
            memo[key] = {0: 1 if uniform else Fraction(1)}
            continue
        law: dict[int, object] = defaultdict(int)
        scale = 1 if uniform else Fraction(1, len(legal))
        for mv, c in zip(legal, kids):
            d = delta(h, p2, p1, mv)
            for x, w in memo[c].items():
                law[x + d] += w * scale
        memo[key] = dict(law)
    return dict(sorted(memo[root].items()))


@dataclass
class MStatistics:
    n: int
    measure: str
    scheme: str
    m_distribution: dict[int, Fraction]
    ccc_distribution: dict[int, Fraction]
    max_class_prob: Fraction | None

    @property
    def median_m(self) -> int:
        acc = Fraction(0)
        for m, p in self.m_distribution.items():
            acc += p
            if acc >= Fraction(1, 2):
                return m
        raise AssertionError("empty m distribution")


def _normalize(law: dict[int, object]) -> dict[int, Fraction]:
    total = sum(law.values())
    return {k: Fraction(v) / total for k, v in sorted(law.items())}


def m_statistics(
    N: int,
    measure="uniform",
    scheme="basic",
    *,
    cap: int = DEFAULT_ENUMERATION_CAP,
    with_max_class: bool = True,
) -> MStatistics:
    """Law of the delimiter count ``m`` of the class containing a random game,
    the law of the number of ``(C1, C1, C2)`` runs, and the largest class
    probability.

    For the basic scheme both laws come from an exact DP over (state, last two
    moves); other schemes and the largest class use enumeration.
    """
    measure = MeasureKind.parse(measure)
    scheme = SchemeKind.parse(scheme)
    ccc = _normalize(_path_law(N, measure, _ccc_delta))
    max_prob = None
    if scheme is SchemeKind.BASIC_PREFIX:
        m_law = _normalize(_path_law(N, measure, _basic_delta))
        if with_max_class and N <= cap:
            max_prob = max(_class_probs(N, scheme, measure, cap).values())
    else:
        probs = _class_probs(N, scheme, measure, cap)
        law: dict[int, Fraction] = defaultdict(Fraction)
        for rep, p in probs.items():
            law[representative(rep, scheme)[1].m] += p
        m_law = dict(sorted(law.items()))
        max_prob = max(probs.values()) if with_max_class else None
    return MStatistics(N, measure.value, scheme.value, m_law, ccc, max_prob)


def _class_probs(N: int, scheme: SchemeKind, measure: MeasureKind, cap: int) -> dict[Game, Fraction]:
    reps = {representative(g, scheme)[0] for g in enumerate_games(N, cap)}
    return {rep: class_summary(rep, scheme, measure).class_prob for rep in reps}


# -- per-class KS -------------------------------------------------------------


@dataclass
class ClassKS:
    representative: Game
    m: int
    class_size: int
    ks: float | None
    excluded: str | None = None


def class_ks(
    N: int,
    scheme="basic",
    measure="uniform",
    min_m: int = 1,
    *,
    games: Iterable[Game] | None = None,
    cap: int = DEFAULT_ENUMERATION_CAP,
) -> list[ClassKS]:
    """KS distance to the normal law of each class's conditional length law.

    Classes come from full enumeration, or from ``games`` (e.g. a sample) when
    given.  Zero-variance classes are kept with ``excluded`` set rather than
    raising.
    """
    scheme = SchemeKind.parse(scheme)
    source = enumerate_games(N, cap) if games is None else games
    reps = sorted({representative(g, scheme)[0] for g in source}, key=str)
    out = []
    for rep in reps:
        summary = class_summary(rep, scheme, measure)
        if summary.m < min_m:
            continue
        try:
            if len(summary.conditional_dist.weights) < 2:
                raise ZeroVarianceClass(f"class of {rep} has a point-mass length law")
            ks = ks_to_normal(summary.conditional_dist)
            out.append(ClassKS(rep, summary.m, summary.class_size, ks))
        except ZeroVarianceClass as exc:
            out.append(ClassKS(rep, summary.m, summary.class_size, None, type(exc).__name__))
    return out


def bound_interval(N: int) -> tuple[Fraction, Fraction]:
    """Range ``[1/(2n-2), 1/2]`` that every Bernoulli parameter must lie in."""
    n = fib_index(N)
    return Fraction(1, 2 * n - 2), Fraction(1, 2)
