"""Theorem-check suites behind ``zeckgame verify``.

Each suite returns a list of ``Check`` records; a suite passes iff every
check does.  ``max_n`` bounds the inputs; suites with an expensive oracle
(enumeration, the full state graph) also clamp to their own cap.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable

from .analysis import (
    achievable_length_set,
    enumerate_games,
    mod_z_distribution,
    shortest_game_count,
)
from .engine import MoveCounts, validate_game
from .numerics import fib, fib_index, phi_sign, zeckendorf
from .partitions import SchemeKind, bound_interval, class_summary, expansion_choice, partition_check, representative
from .sampling import sample_lengths
from .strategies import (
    TYPE_A_ORDERS,
    achievable_interval,
    game_of_length,
    length_upper_bound,
    longest_game,
    shortest_game,
)

__all__ = [
    "Check",
    "SUITES",
    "basic_factorization_failures",
    "high_index_bound",
    "run_suites",
    "split_balance_ok",
]

SHARP_INPUTS = (12, 33, 88)
DELTAS = ("0.3", "0.5", "0.7")


@dataclass
class Check:
    suite: str
    name: str
    passed: bool
    detail: str = ""

    def as_dict(self) -> dict:
        return {"suite": self.suite, "name": self.name, "passed": self.passed, "detail": self.detail}


def split_balance_ok(counts: MoveCounts) -> bool:
    """Exact test of ``|MC_1 - MS_2 - (2 - phi) N| <= phi - 1``."""
    N = counts.n_input
    d = counts.mc.get(1, 0) - counts.ms.get(2, 0)
    # upper: phi (N - 1) <= 2N - d - 1; lower: phi (N + 1) >= 2N - d + 1
    return phi_sign(N - 1, 2 * N - d - 1) <= 0 and phi_sign(N + 1, 2 * N - d + 1) >= 0


def high_index_bound(N: int, delta) -> Fraction:
    """``(N - 1) / (floor(delta n / 2) + 1)`` with ``n = fib_index(N)``."""
    n = fib_index(N)
    return Fraction(N - 1, int(Fraction(str(delta)) * n / 2) + 1)


def movesum_failures(N: int, counts: Iterable[MoveCounts]) -> list[str]:
    """Violations of the per-game move-count laws over a collection of games."""
    z = zeckendorf(N).z_count
    sums: dict[int, set[int]] = defaultdict(set)
    bad: list[str] = []
    for c in counts:
        if c.combines != N - z:
            bad.append(f"N={N}: {c.combines} combines, expected {N - z}")
        for k in range(2, c.n):
            sums[k].add(c.conserved_sum(k))
        if not split_balance_ok(c):
            bad.append(f"N={N}: MC_1 - MS_2 = {c.mc.get(1, 0) - c.ms.get(2, 0)} breaks the bound")
        for delta in DELTAS:
            if c.high_index_combines(delta) > high_index_bound(N, delta):
                bad.append(f"N={N}: high-index combines exceed the bound at delta={delta}")
    for k, vals in sums.items():
        if len(vals) != 1:
            bad.append(f"N={N}: conserved sum at k={k} takes values {sorted(vals)}")
    return bad


def basic_factorization_failures(N: int) -> list[str]:
    """Check each basic-prefix class's conditional laws against game probabilities.

    Uniform: members are equally likely and the class length law is the
    shifted ``Bin(m, 1/2)``.  Random play: the conditional probability of each
    member is ``prod p_i^x_i (1 - p_i)^(1 - x_i)`` with ``p_i = 1/(1 + n_i)``.
    """
    bad: list[str] = []
    lo, hi = bound_interval(N) if N >= 3 else (Fraction(0), Fraction(1))
    reps = {representative(g, "basic")[0] for g in enumerate_games(N)}
    for rep in sorted(reps, key=str):
        uni = class_summary(rep, "basic", "uniform")
        rnd = class_summary(rep, "basic", "random")
        members = list(rnd.base.members())
        hist: dict[int, Fraction] = defaultdict(Fraction)
        for _, g in members:
            hist[len(g)] += Fraction(1, len(members))
        if dict(hist) != uni.conditional_dist.probabilities():
            bad.append(f"uniform class law of {rep} is not the binomial convolution")
        for p, n_i in zip(rnd.bernoulli_params, rnd.branch_counts):
            if p != Fraction(1, 1 + n_i):
                bad.append(f"class {rep}: p = {p} but n_i = {n_i}")
            if not lo <= p <= hi:
                bad.append(f"class {rep}: p = {p} outside [{lo}, {hi}]")
        for choice, g in members:
            if expansion_choice(g, "basic")[1] != choice:
                bad.append(f"{g} does not decode to its expansion choice")
            want = Fraction(1)
            for x, p in zip(choice, rnd.bernoulli_params):
                want *= p if x else 1 - p
            if g.probability() / rnd.class_prob != want:
                bad.append(f"{g}: conditional probability does not factorize")
    return bad


# -- suites -------------------------------------------------------------------


def _shortest(max_n: int, **_) -> list[Check]:
    bad = []
    for N in range(1, max_n + 1):
        g = shortest_game(N)
        validate_game(N, g.moves, trace=False)
        if len(g) != N - zeckendorf(N).z_count:
            bad.append(N)
    return [Check("shortest", f"length N - Z(N) for N <= {max_n}", not bad, f"failures: {bad[:5]}" if bad else "")]


def _longest(max_n: int, **_) -> list[Check]:
    out = [Check("longest", "longest_game(12) has 17 moves", len(longest_game(12)) == 17)]
    over = [N for N in range(1, max_n + 1) if len(longest_game(N)) > length_upper_bound(N)]
    out.append(Check("longest", f"longest <= upper bound for N <= {max_n}", not over, str(over[:5])))
    for N in SHARP_INPUTS:
        if N <= max_n:
            a, b = len(longest_game(N)), length_upper_bound(N)
            out.append(Check("longest", f"bound is sharp at N = {N}", a == b, f"longest {a}, bound {b}"))
    diff = [N for N in range(1, min(max_n, 60) + 1)
            if len({len(longest_game(N, o)) for o in TYPE_A_ORDERS}) != 1]
    out.append(Check("longest", "length independent of Type A order", not diff, str(diff[:5])))
    return out


def _interval(max_n: int, **_) -> list[Check]:
    gaps = [N for N in range(1, min(max_n, 40) + 1)
            if achievable_length_set(N) != set(achievable_interval(N))]
    out = [Check("interval", f"achievable lengths are an interval for N <= {min(max_n, 40)}", not gaps, str(gaps[:5]))]
    bad = []
    for N in range(1, min(max_n, 60) + 1):
        for m in achievable_interval(N):
            g = game_of_length(N, m)
            validate_game(N, g.moves, trace=False)
            if len(g) != m:
                bad.append((N, m))
    out.append(Check("interval", f"game_of_length hits every length for N <= {min(max_n, 60)}", not bad, str(bad[:5])))
    return out


def _movesum(max_n: int, samples: int = 2000, seed: int = 0, **_) -> list[Check]:
    bad = []
    for N in range(1, min(max_n, 12) + 1):
        bad += movesum_failures(N, (validate_game(N, g.moves, trace=False).counts for g in enumerate_games(N)))
    out = [Check("movesum", f"move-count laws over all games, N <= {min(max_n, 12)}", not bad, "; ".join(bad[:3]))]
    for N in (50, 100, 200):
        if N > max_n:
            continue
        r = sample_lengths(N, "random", seed, samples)
        fails = movesum_failures(N, (r.move_counts(i) for i in range(len(r))))
        out.append(Check("movesum", f"move-count laws over {samples} random games at N = {N}", not fails, "; ".join(fails[:3])))
    return out


def _catalan(max_n: int, **_) -> list[Check]:
    out = [Check("catalan", "N = 5 has exactly 2 shortest games", shortest_game_count(5) == (2, 2))]
    n = 2
    while fib(n) <= max_n and n <= 12:
        count, bound = shortest_game_count(fib(n))
        out.append(Check("catalan", f"F_{n} = {fib(n)}: count >= Catalan product", count >= bound, f"{count} vs {bound}"))
        n += 1
    return out


def _partition(max_n: int, **_) -> list[Check]:
    out = []
    for N in range(1, min(max_n, 10) + 1):
        for scheme in SchemeKind:
            r = partition_check(N, scheme)
            out.append(Check("partition", f"{scheme.value} partitions N = {N}", r.ok, "; ".join(r.failures[:3])))
        bad = basic_factorization_failures(N)
        out.append(Check("partition", f"basic class laws factorize at N = {N}", not bad, "; ".join(bad[:3])))
    return out


def fairness_deviation(N: int, measure) -> Fraction:
    """``|P(Player 1 wins) - 1/2|``, exact when the DP is exact."""
    return abs(mod_z_distribution(N, measure, 2)[1] - Fraction(1, 2))


def fairness_trend(measure, lo: int = 8, hi: int = 36, width: int = 5) -> tuple[Fraction, Fraction]:
    """Largest deviation over ``[lo, lo + width)`` and over ``[hi, hi + width)``."""
    a = max(fairness_deviation(N, measure) for N in range(lo, lo + width))
    b = max(fairness_deviation(N, measure) for N in range(hi, hi + width))
    return a, b


def _fairness(max_n: int, **_) -> list[Check]:
    hi = min(max_n, 36)
    out = []
    for measure in ("uniform", "random"):
        d8, dhi = fairness_deviation(8, measure), fairness_deviation(hi, measure)
        detail = f"deviations {float(d8):.6g} at N = 8 and {float(dhi):.6g} at N = {hi}"
        passed = dhi < d8
        if not passed:
            detail = f"exact deviations {d8} at N = 8 and {dhi} at N = {hi}"
            # ties (both exactly fair) or a local bump: fall back to windowed maxima
            a, b = fairness_trend(measure, 8, hi)
            passed = b < a
            detail += f"; window maxima {float(a):.3g} near N = 8 and {float(b):.3g} near N = {hi}"
        out.append(Check("fairness", f"{measure}: deviation shrinks from N = 8 to N = {hi}", passed, detail))
        out.append(Check("fairness", f"{measure}: deviation at N = {hi} below 0.1", dhi < Fraction(1, 10),
                         f"{float(dhi):.6g}"))
    return out


SUITES: dict[str, Callable[..., list[Check]]] = {
    "shortest": _shortest,
    "longest": _longest,
    "interval": _interval,
    "movesum": _movesum,
    "catalan": _catalan,
    "partition": _partition,
    "fairness": _fairness,
}


def run_suites(suite: str = "all", max_n: int = 40, **kwargs) -> list[Check]:
    names = list(SUITES) if suite == "all" else [suite]
    out: list[Check] = []
    for name in names:
        if name not in SUITES:
            raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)} or all")
        out += SUITES[name](max_n, **kwargs)
    return out
