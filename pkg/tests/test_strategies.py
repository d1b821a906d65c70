import random

import pytest

from zeckgame.analysis import achievable_length_set, enumerate_games
from zeckgame.engine import C, S, Game, MoveCounts, validate_game
from zeckgame.errors import InvalidTarget, LengthOutOfRange, NotTypeAExpressible
from zeckgame.numerics import fib, fib_index, zeckendorf
from zeckgame.strategies import (
    TYPE_A_ORDERS,
    achievable_interval,
    add_one_tail,
    combine_multiset,
    game_of_length,
    length_upper_bound,
    longest_game,
    shortest_game,
    type_a_game,
)


def test_combine_multiset_examples():
    assert combine_multiset(13).mc == (5, 3, 2, 1, 1)
    assert combine_multiset(13).mc == tuple(fib(k) for k in range(4, -1, -1))
    assert combine_multiset(4).mc == (1, 1)
    assert combine_multiset(2).mc == (1,)


def test_combine_multiset_solves_balance_equations():
    for N in range(2, 400):
        z = zeckendorf(N).bits
        mc = (0,) + combine_multiset(N).mc + (0, 0)
        n = len(z)
        assert N - 2 * mc[1] - mc[2] == z[0]
        for k in range(2, n + 1):
            assert mc[k - 1] - mc[k] - mc[k + 1] == z[k - 1]
        assert sum(mc) == N - sum(z)


def test_combine_multiset_rejects_bad_target():
    with pytest.raises(InvalidTarget):
        combine_multiset(5, (1, 1, 0, 0))
    with pytest.raises(InvalidTarget):
        combine_multiset(5, (0, 0, 0, 0, 1))


def test_shortest_examples():
    g = shortest_game(5)
    assert len(g) == 4
    validate_game(5, g.moves)
    assert len(shortest_game(12)) == 9
    assert shortest_game(2).moves == (C(1),)


def test_shortest_multiset_matches():
    for N in range(1, 300):
        g = shortest_game(N)
        counts = validate_game(N, g.moves, trace=False).counts
        assert counts.splits == 0
        assert tuple(counts.mc[k] for k in range(1, fib_index(N))) == combine_multiset(N).mc


def _random_target(N, rng):
    """A random reachable position: random-play a prefix of a game."""
    h = [N] + [0] * (fib_index(N) - 1)
    from zeckgame.engine import _apply_inplace, _legal

    for _ in range(rng.randrange(0, 2 * N)):
        legal = _legal(h)
        if not legal:
            break
        _apply_inplace(h, rng.choice(legal))
    return h


def test_shortest_to_random_targets():
    rng = random.Random(1)
    for _ in range(1000):
        N = rng.randrange(1, 201)
        target = _random_target(N, rng)
        g = shortest_game(N, target)
        h = [N] + [0] * (fib_index(N) - 1)
        from zeckgame.engine import _apply_inplace, _failed_precondition

        for m in g.moves:
            assert m.kind == "C"
            assert _failed_precondition(h, m) is None
            _apply_inplace(h, m)
        assert h == target
        assert len(g) == N - sum(target)


def test_longest_examples():
    assert len(longest_game(12)) == 17
    assert len(longest_game(4)) == 3
    assert longest_game(2).moves == (C(1),)


def test_longest_matches_enumeration():
    for N in range(1, 13):
        assert len(longest_game(N)) == max(len(g) for g in enumerate_games(N))


def test_longest_order_insensitive():
    for N in range(1, 61):
        lengths = {len(longest_game(N, o)) for o in TYPE_A_ORDERS}
        assert len(lengths) == 1
    with pytest.raises(ValueError):
        longest_game(10, "random")


def test_upper_bound_examples():
    assert length_upper_bound(12) == 17
    assert length_upper_bound(4) == 3
    assert length_upper_bound(33) == 63


def test_longest_below_bound():
    for N in range(1, 301):
        g = longest_game(N)
        validate_game(N, g.moves, trace=False)
        assert len(g) <= length_upper_bound(N)


def test_add_one_tail_examples():
    assert add_one_tail(5) == (C(1), C(3))
    assert add_one_tail(3) == (C(2),)
    assert add_one_tail(13) == (C(1), C(3), C(5))


def test_add_one_tail_shape():
    for N in range(2, 500):
        tail = add_one_tail(N)
        assert len(tail) <= fib_index(N) // 2
        idx = [m.index for m in tail]
        assert all(b - a == 2 for a, b in zip(idx, idx[1:]))


def test_type_a_examples():
    assert type_a_game(4).moves == (C(1), C(1), S(2))
    g = type_a_game(12)
    assert len(g) == 17 and all(m.kind == "S" or m.index == 1 for m in g.moves)
    with pytest.raises(NotTypeAExpressible):
        type_a_game(5)


def test_type_a_iff_fibonacci_minus_one():
    for N in range(1, 13):
        has = any(all(m.kind == "S" or m.index == 1 for m in g.moves) for g in enumerate_games(N))
        expressible = any(fib(k) - 1 == N for k in range(2, 12))
        assert has == expressible
    for k in range(3, 16):
        N = fib(k) - 1
        for order in TYPE_A_ORDERS:
            g = type_a_game(N, order)
            assert len(g) == len(longest_game(N))


def test_interval_examples():
    i = achievable_interval(4)
    assert (i.lo, i.hi) == (2, 3)
    i = achievable_interval(5)
    assert (i.lo, i.hi) == (4, 5)
    i = achievable_interval(12)
    assert (i.lo, i.hi) == (9, 17)


def test_game_of_length_examples():
    assert game_of_length(4, 2).moves == (C(1), C(2))
    assert game_of_length(4, 3).moves == (C(1), C(1), S(2))
    lengths = {len(g) for g in enumerate_games(12)}
    for m in range(9, 18):
        assert m in lengths
        g = game_of_length(12, m)
        assert len(g) == m
        validate_game(12, g.moves, trace=False)
    with pytest.raises(LengthOutOfRange):
        game_of_length(12, 18)


def test_game_of_length_above_base_case():
    for N in (61, 89, 100, 143):
        for m in achievable_interval(N):
            g = game_of_length(N, m)
            assert len(g) == m
            validate_game(N, g.moves, trace=False)


def test_interval_width_growth():
    def width(n):
        N = fib(n) - 1
        return len(longest_game(N)) - len(shortest_game(N))

    assert width(6) == 8
    for n in range(6, 15):
        assert width(n + 1) >= width(n) + 1
        assert width(n) >= n


def test_achievable_set_matches_interval_small():
    for N in range(1, 30):
        assert achievable_length_set(N) == set(achievable_interval(N))
