from collections import Counter, defaultdict
from fractions import Fraction

import pytest

from zeckgame.analysis import (
    LengthDistribution,
    MeasureKind,
    achievable_length_set,
    count_games,
    enumerate_games,
    length_distribution,
    mod_z_distribution,
    shortest_game_count,
    state_graph,
)
from zeckgame.engine import C, Game, validate_game
from zeckgame.errors import EnumerationCapExceeded, StateBudgetExceeded
from zeckgame.numerics import catalan, fib
from zeckgame.strategies import longest_game
from zeckgame.numerics import zeckendorf


def test_distribution_examples():
    for measure in ("uniform", "random"):
        assert length_distribution(3, measure).probabilities() == {2: 1}
    d = length_distribution(5, "uniform")
    assert d.probabilities() == {4: Fraction(2, 3), 5: Fraction(1, 3)}
    assert d.total_games == 3 and d.weight_kind == "count"
    d = length_distribution(5, "random")
    assert d.probabilities() == {4: Fraction(3, 4), 5: Fraction(1, 4)}
    assert d.weight_kind == "rational"


def test_distribution_matches_enumeration():
    for N in range(1, 13):
        hist = Counter()
        prob = defaultdict(Fraction)
        for g in enumerate_games(N):
            hist[len(g)] += 1
            prob[len(g)] += g.probability()
        assert length_distribution(N, "uniform").weights == dict(hist)
        assert length_distribution(N, "random").weights == dict(prob)
        assert count_games(N) == sum(hist.values())


def test_double_fallback():
    exact = length_distribution(30, "random")
    d = length_distribution(30, "random", max_denominator_bits=8)
    assert d.weight_kind == "double" and not d.is_exact
    assert abs(sum(d.probabilities().values()) - 1) < 1e-12
    for k, p in exact.probabilities().items():
        assert abs(d.probabilities()[k] - float(p)) < 1e-12
    assert length_distribution(30, "random", exact=False).weight_kind == "double"


def test_mod_z_examples():
    assert mod_z_distribution(4, "uniform", 2) == [Fraction(1, 2), Fraction(1, 2)]
    for measure in ("uniform", "random"):
        assert mod_z_distribution(3, measure, 2) == [1, 0]
    assert mod_z_distribution(5, "random", 2) == [Fraction(3, 4), Fraction(1, 4)]
    assert sum(mod_z_distribution(20, "random", 3)) == 1
    with pytest.raises(ValueError):
        mod_z_distribution(5, "random", 0)


def test_enumerate_examples():
    assert len(list(enumerate_games(4))) == 2
    assert len(list(enumerate_games(5))) == 3
    assert list(enumerate_games(2)) == [Game(2, (C(1),))]
    assert list(enumerate_games(1)) == [Game(1, ())]
    with pytest.raises(EnumerationCapExceeded):
        next(enumerate_games(15))


def test_enumerate_distinct_valid_canonical():
    for N in range(1, 12):
        games = list(enumerate_games(N))
        assert len(set(games)) == len(games)
        for g in games:
            validate_game(N, g.moves, trace=False)
        # depth-first in canonical order means lexicographic in move rank
        keys = [tuple((m.kind != "C", m.index) for m in g.moves) for g in games]
        assert keys == sorted(keys)


def test_achievable_examples():
    assert achievable_length_set(4) == {2, 3}
    assert achievable_length_set(5) == {4, 5}
    assert achievable_length_set(1) == {0}


def test_achievable_extremes():
    for N in range(1, 41):
        s = achievable_length_set(N)
        assert min(s) == N - zeckendorf(N).z_count
        assert max(s) == len(longest_game(N))


def test_shortest_count_examples():
    assert shortest_game_count(5) == (2, 2)
    count, bound = shortest_game_count(13)
    assert bound == catalan(1) * catalan(2) * catalan(3) * catalan(5) == 420
    assert count >= 420
    assert shortest_game_count(2) == (1, 1)


def test_shortest_count_enumeration_oracle():
    for N in range(1, 13):
        combine_only = sum(all(m.kind == "C" for m in g.moves) for g in enumerate_games(N))
        assert shortest_game_count(N)[0] == combine_only


def test_shortest_count_monotone_and_bound():
    counts = [shortest_game_count(N)[0] for N in range(1, 35)]
    assert all(a <= b for a, b in zip(counts, counts[1:]))
    for n in range(2, 9):
        count, bound = shortest_game_count(fib(n))
        assert count >= bound


def test_fairness_trend():
    for measure in ("uniform", "random"):
        win8 = mod_z_distribution(8, measure, 2)[1]
        win36 = mod_z_distribution(36, measure, 2)[1]
        assert abs(win36 - Fraction(1, 2)) <= abs(win8 - Fraction(1, 2))
        assert abs(win36 - Fraction(1, 2)) < Fraction(1, 10)


def test_uniform_even_inputs_are_exactly_fair():
    for N in range(4, 41, 2):
        assert mod_z_distribution(N, "uniform", 2)[1] == Fraction(1, 2)


def test_state_budget(monkeypatch):
    with pytest.raises(StateBudgetExceeded):
        state_graph(40, budget=100)
    monkeypatch.setenv("ZECKGAME_STATE_BUDGET", "50")
    with pytest.raises(StateBudgetExceeded):
        length_distribution(41)


def test_graph_order_is_children_first():
    g = state_graph(25)
    pos = {node: i for i, node in enumerate(g.order)}
    assert len(pos) == len(g)
    for i, kids in enumerate(g.children):
        for j in kids:
            assert pos[j] < pos[i]


def test_distribution_object():
    d = LengthDistribution(5, "uniform", "count", {5: 1, 4: 2, 6: 0})
    assert d.support == [4, 5]
    assert d.residues(2) == [Fraction(2, 3), Fraction(1, 3)]
    assert MeasureKind.parse("mu") is MeasureKind.UNIFORM
    with pytest.raises(ValueError):
        MeasureKind.parse("bogus")


def test_moments_exact_vs_double():
    from zeckgame.stats import summarize

    for N in range(3, 21):
        exact = summarize(length_distribution(N, "random"))
        approx = summarize(length_distribution(N, "random", exact=False))
        for a, b in [(exact.mean, approx.mean), (exact.variance, approx.variance)]:
            assert abs(a - b) <= 1e-10 * max(1.0, abs(a))
