import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy import stats as sps

from zeckgame.errors import ZeroVariance
from zeckgame.stats import (
    binom_mod_z,
    binomial_law,
    chi_square_test,
    ks_to_normal,
    normal_cdf,
    sample_law,
    summarize,
)


def test_point_mass():
    s = summarize({7: 1})
    assert s.mean == 7 and s.variance == 0
    assert s.skewness is None and s.ks_to_normal is None
    assert "ks_to_normal" in s.undefined
    with pytest.raises(ZeroVariance):
        ks_to_normal({7: 1})


def test_two_point_law():
    s = summarize({4: 1, 5: 1})
    assert s.mean == 4.5 and s.variance == 0.25
    assert s.exact_mean == Fraction(9, 2) and s.exact_variance == Fraction(1, 4)
    assert s.skewness == 0 and s.excess_kurtosis == -2


def test_symmetric_two_point_ks():
    expected = 0.5 - float(sps.norm.cdf(-1))
    assert abs(ks_to_normal({-1: 1, 1: 1}) - expected) < 1e-12
    assert abs(ks_to_normal({-1: 1, 1: 1}) - 0.3413) < 1e-4


def _ks_oracle(m):
    """KS of the standardized Bin(m, 1/2) straight from scipy's binomial CDF."""
    k = np.arange(m + 1)
    z = (k - m / 2) / math.sqrt(m / 4)
    right = sps.binom.cdf(k, m, 0.5)
    left = right - sps.binom.pmf(k, m, 0.5)
    phi = sps.norm.cdf(z)
    return max(np.max(np.abs(right - phi)), np.max(np.abs(left - phi)))


@pytest.mark.parametrize("m", [1, 2, 5, 30, 100, 200])
def test_binomial_ks_matches_oracle(m):
    assert abs(ks_to_normal(binomial_law(m)) - _ks_oracle(m)) < 1e-9


def test_binomial_ks_thresholds():
    assert ks_to_normal(binomial_law(30)) < 0.1
    assert ks_to_normal(binomial_law(200)) < 0.04


def test_binom_mod_z_examples():
    assert binom_mod_z(2, Fraction(1, 2), 2) == [Fraction(1, 2), Fraction(1, 2)]
    p = Fraction(2, 7)
    assert binom_mod_z(1, p, 2) == [1 - p, p]
    for m in range(0, 41):
        even, odd = binom_mod_z(m, Fraction(1, 3), 2)
        assert even - odd == Fraction(1, 3) ** m


@given(st.integers(0, 60), st.fractions(0, 1), st.integers(1, 7))
def test_binom_mod_z_against_direct_sum(m, p, Z):
    res = binom_mod_z(m, p, Z)
    law = binomial_law(m, p)
    direct = [sum(w for k, w in law.items() if k % Z == r) for r in range(Z)]
    assert res == direct


def test_binom_mod_z_equidistributes():
    res = binom_mod_z(200, 0.25, 3)
    assert max(abs(x - 1 / 3) for x in res) < 1e-4


def test_ks_nonincreasing_when_adding_fair_delimiters():
    prev = None
    for m in range(1, 201):
        ks = ks_to_normal(binomial_law(m))
        if prev is not None:
            assert ks <= prev + 1e-12
        prev = ks


def test_normal_cdf_accuracy():
    import mpmath

    for x in np.linspace(-8, 8, 81):
        exact = float(mpmath.ncdf(x))
        assert abs(normal_cdf(x) - exact) < 1e-12


def test_sample_law_and_chi_square():
    rng = np.random.default_rng(0)
    xs = rng.binomial(20, 0.5, size=20000)
    assert sum(sample_law(xs).values()) == 20000
    _, dof, p = chi_square_test(xs, binomial_law(20))
    assert dof > 5 and p > 1e-3
    _, _, p = chi_square_test(xs + 1, binomial_law(20))
    assert p < 1e-6


def test_float_weights():
    s = summarize({0: 0.5, 2: 0.5})
    assert s.exact_mean is None and s.mean == 1.0 and s.variance == 1.0
