"""Moments, Kolmogorov-Smirnov distance to the normal law, binomial residues
and a chi-square goodness-of-fit helper.

Distributions are accepted as a ``LengthDistribution`` or as a plain mapping
``value -> weight``.  Integer and ``Fraction`` weights are handled exactly;
only the normal CDF and the standardized moments go through floats.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

import numpy as np
from scipy import stats as sps
from scipy.special import ndtr

from .errors import ZeroVariance

__all__ = [
    "SummaryStats",
    "binom_mod_z",
    "binomial_law",
    "chi_square_test",
    "ks_to_normal",
    "normal_cdf",
    "sample_law",
    "summarize",
]


def normal_cdf(x):
    """Standard normal CDF (``scipy.special.ndtr``, accurate to ~1e-16)."""
    return ndtr(x)


def _law(dist) -> tuple[list[int], list, bool]:
    """Sorted support, normalized weights and whether they are exact."""
    if hasattr(dist, "probabilities"):
        probs = dist.probabilities()
    else:
        weights = {k: w for k, w in dict(dist).items() if w}
        total = sum(weights.values())
        exact = all(isinstance(w, (int, Fraction)) for w in weights.values())
        probs = {
            k: (Fraction(w) / total if exact else float(w) / float(total))
            for k, w in weights.items()
        }
    if not probs:
        raise ValueError("empty distribution")
    xs = sorted(probs)
    ps = [probs[x] for x in xs]
    exact = all(isinstance(p, Fraction) for p in ps)
    return xs, ps, exact


@dataclass
class SummaryStats:
    """Moments of a distribution.

    Moments that do not exist (skewness and kurtosis of a point mass, KS of a
    zero-variance law) are ``None`` and named in ``undefined``.
    """

    mean: float
    variance: float
    skewness: float | None
    excess_kurtosis: float | None
    ks_to_normal: float | None
    undefined: tuple[str, ...] = ()
    exact_mean: Fraction | None = field(default=None, repr=False)
    exact_variance: Fraction | None = field(default=None, repr=False)

    def as_dict(self) -> dict:
        return {
            "mean": self.mean,
            "variance": self.variance,
            "skewness": self.skewness,
            "excess_kurtosis": self.excess_kurtosis,
            "ks_to_normal": self.ks_to_normal,
            "undefined": list(self.undefined),
        }


def _central_moments(xs, ps, exact):
    mean = sum(p * x for x, p in zip(xs, ps))
    cm = [sum(p * (x - mean) ** j for x, p in zip(xs, ps)) for j in (2, 3, 4)]
    if exact:
        return mean, cm
    return float(mean), [float(c) for c in cm]


def _ks(xs, ps, mean, var) -> float:
    sd = math.sqrt(var)
    z = (np.asarray(xs, dtype=float) - float(mean)) / sd
    phi = normal_cdf(z)
    cdf = np.cumsum(np.asarray([float(p) for p in ps]))
    cdf[-1] = 1.0
    before = np.concatenate(([0.0], cdf[:-1]))
    # the sup is attained at an atom, from the left or the right
    return float(max(np.max(np.abs(cdf - phi)), np.max(np.abs(before - phi))))


def ks_to_normal(dist) -> float:
    """``sup_x |F(x) - Phi(x)|`` for the law standardized to mean 0, variance 1."""
    xs, ps, exact = _law(dist)
    mean, (m2, _, _) = _central_moments(xs, ps, exact)
    if m2 == 0:
        raise ZeroVariance("KS distance needs positive variance")
    return _ks(xs, ps, mean, m2)


def summarize(dist) -> SummaryStats:
    """Mean, variance, skewness, excess kurtosis and KS distance to the normal."""
    xs, ps, exact = _law(dist)
    mean, (m2, m3, m4) = _central_moments(xs, ps, exact)
    if m2 == 0:
        return SummaryStats(
            float(mean), 0.0, None, None, None,
            ("skewness", "excess_kurtosis", "ks_to_normal"),
            mean if exact else None, Fraction(0) if exact else None,
        )
    skew = float(m3) / float(m2) ** 1.5
    kurt = float(Fraction(m4) / Fraction(m2) ** 2 - 3) if exact else m4 / m2**2 - 3
    return SummaryStats(
        float(mean), float(m2), skew, kurt, _ks(xs, ps, mean, m2), (),
        mean if exact else None, m2 if exact else None,
    )


def sample_law(values) -> dict[int, int]:
    """Empirical law of integer samples as exact counts."""
    uniq, counts = np.unique(np.asarray(values), return_counts=True)
    return {int(u): int(c) for u, c in zip(uniq, counts)}


def binomial_law(m: int, p=Fraction(1, 2)) -> dict[int, Fraction]:
    """Exact ``Bin(m, p)`` probabilities."""
    p = Fraction(p)
    return {k: math.comb(m, k) * p**k * (1 - p) ** (m - k) for k in range(m + 1)}


def binom_mod_z(m: int, p, Z: int) -> list:
    """Law of ``Bin(m, p) mod Z`` by a DP over residues.

    Exact when ``p`` is a ``Fraction`` or an integer, float otherwise.
    """
    if m < 0 or Z < 1:
        raise ValueError("need m >= 0 and Z >= 1")
    if isinstance(p, float):
        one, zero = 1.0, 0.0
    else:
        p, one, zero = Fraction(p), Fraction(1), Fraction(0)
    if not 0 <= p <= 1:
        raise ValueError("p must lie in [0, 1]")
    q = one - p
    vec = [one] + [zero] * (Z - 1)
    for _ in range(m):
        vec = [q * vec[r] + p * vec[r - 1] for r in range(Z)]
    if Z == 1:
        return [one]
    return vec


def chi_square_test(samples, expected_probs: Mapping[int, object], min_expected: float = 5.0):
    """Pearson chi-square of integer samples against an exact law.

    Adjacent cells (in support order) are pooled until every expected count is
    at least ``min_expected``.  Returns ``(statistic, dof, p_value)``.
    """
    observed = sample_law(samples)
    n = sum(observed.values())
    cells_obs, cells_exp = [], []
    acc_o, acc_e = 0, 0.0
    for k in sorted(set(expected_probs) | set(observed)):
        acc_o += observed.get(k, 0)
        acc_e += float(expected_probs.get(k, 0)) * n
        if acc_e >= min_expected:
            cells_obs.append(acc_o)
            cells_exp.append(acc_e)
            acc_o, acc_e = 0, 0.0
    if acc_o or acc_e:
        if cells_obs:
            cells_obs[-1] += acc_o
            cells_exp[-1] += acc_e
        else:
            cells_obs.append(acc_o)
            cells_exp.append(acc_e)
    if len(cells_obs) < 2:
        return 0.0, 0, 1.0
    exp = np.asarray(cells_exp)
    exp *= n / exp.sum()
    res = sps.chisquare(np.asarray(cells_obs, dtype=float), exp)
    return float(res.statistic), len(cells_obs) - 1, float(res.pvalue)
