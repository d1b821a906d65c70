"""Fibonacci numbers, Zeckendorf decompositions, Catalan numbers and exact
golden-ratio arithmetic.

Fibonacci numbers use the shifted indexing of the game: ``F_1 = 1``,
``F_2 = 2``, ``F_k = F_{k-1} + F_{k-2}``.  ``F_0 = 1`` is also admitted because
the combine counts of a shortest game on a Fibonacci input end with it; bin 0
is never playable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import Decimal, localcontext
from functools import lru_cache

from .errors import DomainError

__all__ = [
    "PHI",
    "ZeckDecomposition",
    "catalan",
    "fib",
    "fib_index",
    "floor_phi_times",
    "phi_decimal",
    "phi_sign",
    "zeckendorf",
]

PHI = (1 + math.sqrt(5)) / 2

_FIB = [1, 1, 2]


def fib(k: int) -> int:
    """Return ``F_k`` (``F_0 = F_1 = 1``, ``F_2 = 2``) as an exact integer."""
    if k < 0:
        raise DomainError(f"Fibonacci index must be >= 0, got {k}")
    while len(_FIB) <= k:
        _FIB.append(_FIB[-1] + _FIB[-2])
    return _FIB[k]


def fib_index(N: int) -> int:
    """Return the unique ``n`` with ``F_n <= N < F_{n+1}``."""
    if N < 1:
        raise DomainError(f"N must be >= 1, got {N}")
    # F_k grows like phi**k, so a log estimate lands within a step or two
    n = max(1, int(math.log(N, PHI)) - 2) if N > 2 else 1
    while fib(n + 1) <= N:
        n += 1
    while fib(n) > N:
        n -= 1
    return n


@dataclass(frozen=True)
class ZeckDecomposition:
    """Zeckendorf decomposition of ``N``.

    ``bits[i]`` is ``z_{i+1}``; the tuple has length ``n = fib_index(N)`` and
    its last entry is always 1.
    """

    N: int
    bits: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.bits)

    @property
    def indices(self) -> tuple[int, ...]:
        """Indices ``k`` with ``z_k = 1``, largest first."""
        return tuple(k for k in range(self.n, 0, -1) if self.bits[k - 1])

    @property
    def z_count(self) -> int:
        """``Z(N)``, the number of summands."""
        return sum(self.bits)

    @property
    def z_index_sum(self) -> int:
        """``Z_I(N)``, the sum of the summand indices."""
        return sum(k for k, b in enumerate(self.bits, start=1) if b)

    def value(self) -> int:
        return sum(fib(k) for k, b in enumerate(self.bits, start=1) if b)


@lru_cache(maxsize=4096)
def zeckendorf(N: int) -> ZeckDecomposition:
    """Greedy largest-first Zeckendorf decomposition of ``N >= 1``."""
    if N < 1:
        raise DomainError(f"N must be >= 1, got {N}")
    n = fib_index(N)
    bits = [0] * n
    rest = N
    k = n
    while rest:
        while fib(k) > rest:
            k -= 1
        bits[k - 1] = 1
        rest -= fib(k)
        k -= 2
    return ZeckDecomposition(N, tuple(bits))


def catalan(m: int) -> int:
    """Catalan number ``binom(2m, m) / (m + 1)``."""
    if m < 0:
        raise DomainError(f"Catalan index must be >= 0, got {m}")
    return math.comb(2 * m, m) // (m + 1)


def phi_sign(a: int, b: int) -> int:
    """Exact sign of ``phi*a - b`` for integers ``a``, ``b``.

    ``phi*a - b = (a*sqrt(5) - c) / 2`` with ``c = 2b - a``; the value is
    irrational unless ``a = 0``, so the sign is decided by comparing squares.
    """
    c = 2 * b - a
    if a == 0:
        return (c < 0) - (c > 0)
    if a > 0 and c <= 0:
        return 1
    if a < 0 and c >= 0:
        return -1
    # same signs: compare |a|*sqrt(5) with |c|
    bigger = 5 * a * a > c * c
    return (1 if bigger else -1) if a > 0 else (-1 if bigger else 1)


def floor_phi_times(a: int) -> int:
    """Exact ``floor(phi * a)`` for an integer ``a``."""
    if a == 0:
        return 0
    s = math.isqrt(5 * a * a)
    if a > 0:
        return (a + s) // 2
    # phi*a = (a - sqrt(5a^2))/2 with sqrt(5a^2) in (s, s+1)
    return (a - s - 1) // 2


def phi_decimal(digits: int = 50) -> Decimal:
    """The golden ratio to ``digits`` significant decimal digits."""
    with localcontext() as ctx:
        ctx.prec = digits + 5
        value = (1 + Decimal(5).sqrt()) / 2
        ctx.prec = digits
        return +value
