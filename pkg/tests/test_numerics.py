import itertools
import math

import mpmath
import pytest
from hypothesis import given, strategies as st

from zeckgame.errors import DomainError
from zeckgame.numerics import (
    catalan,
    fib,
    fib_index,
    floor_phi_times,
    phi_decimal,
    phi_sign,
    zeckendorf,
)


def test_fib_values():
    assert fib(0) == 1
    assert fib(1) == 1
    assert fib(2) == 2
    assert fib(10) == 89
    a, b = 1, 2
    for k in range(3, 200):
        a, b = b, a + b
        assert fib(k) == b


def test_fib_rejects_negative():
    with pytest.raises(DomainError):
        fib(-1)


@pytest.mark.parametrize("N,n", [(1, 1), (12, 5), (13, 6), (2, 2), (3, 3), (88, 9), (89, 10)])
def test_fib_index_examples(N, n):
    assert fib_index(N) == n


def test_fib_index_rejects_zero():
    with pytest.raises(DomainError):
        fib_index(0)


@given(st.integers(min_value=1, max_value=10**30))
def test_fib_index_brackets(N):
    n = fib_index(N)
    assert fib(n) <= N < fib(n + 1)


def test_zeckendorf_examples():
    z = zeckendorf(13)
    assert z.indices == (6,) and z.z_count == 1 and z.z_index_sum == 6
    z = zeckendorf(12)
    assert z.indices == (5, 3, 1) and z.z_count == 3
    z = zeckendorf(100)
    assert z.indices == (10, 5, 3) and z.z_count == 3 and z.z_index_sum == 18


def test_zeckendorf_invariants_to_a_million():
    for N in range(1, 10**6 + 1):
        z = zeckendorf.__wrapped__(N)
        bits = z.bits
        assert bits[-1] == 1 and len(bits) == fib_index(N)
        assert all(not (a and b) for a, b in zip(bits, bits[1:]))
        assert z.value() == N


def _all_decompositions(N):
    idx = [k for k in range(1, fib_index(N) + 1)]
    found = []
    for r in range(1, len(idx) + 1):
        for combo in itertools.combinations(idx, r):
            if any(b - a == 1 for a, b in zip(combo, combo[1:])):
                continue
            if sum(fib(k) for k in combo) == N:
                found.append(tuple(sorted(combo, reverse=True)))
    return found


def test_zeckendorf_uniqueness_oracle():
    for N in range(1, 501):
        found = _all_decompositions(N)
        assert found == [zeckendorf(N).indices]


def test_zeckendorf_rejects_zero():
    with pytest.raises(DomainError):
        zeckendorf(0)


def test_catalan():
    assert [catalan(m) for m in range(8)] == [1, 1, 2, 5, 14, 42, 132, 429]
    for m in range(60):
        assert catalan(m) == math.comb(2 * m, m) - math.comb(2 * m, m + 1)


mpmath.mp.dps = 80
MP_PHI = (1 + mpmath.sqrt(5)) / 2


@given(st.integers(-10**40, 10**40), st.integers(-10**40, 10**40))
def test_phi_sign_against_mpmath(a, b):
    v = MP_PHI * a - b
    assert phi_sign(a, b) == (v > 0) - (v < 0)


@given(st.integers(-10**40, 10**40))
def test_floor_phi_times_against_mpmath(a):
    assert floor_phi_times(a) == int(mpmath.floor(MP_PHI * a))


def test_floor_phi_times_near_integers():
    # phi * F_k is within 1/F_k of an integer; the floor must not flip
    for k in range(1, 150):
        a = fib(k)
        assert floor_phi_times(a) == int(mpmath.floor(MP_PHI * a))


def test_phi_decimal():
    assert str(phi_decimal(20)) == "1.6180339887498948482"


def test_fib_ratio_brackets_phi():
    # successive ratios alternate around phi and close in
    prev = None
    for k in range(2, 40):
        r = mpmath.mpf(fib(k + 1)) / fib(k)
        gap = abs(r - MP_PHI)
        if prev is not None:
            assert gap < prev
        prev = gap
