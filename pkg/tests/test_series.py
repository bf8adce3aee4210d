from fractions import Fraction as F

import pytest

from twistedzhu.errors import WindowUnderflow
from twistedzhu.series import (
    FracSeries,
    binom_expand,
    coeff,
    expand_diff_power,
    residue,
    series_mul,
    substitute_neg,
)
from twistedzhu.scalars import root_of_unity


def test_mul_basic():
    one_plus = FracSeries({0: F(1), 1: F(1)}, 0, 5)
    one_minus = FracSeries({0: F(1), 1: F(-1)}, 0, 5)
    prod = series_mul(one_plus, one_minus)
    assert prod.coeff(0) == 1 and prod.coeff(1) == 0 and prod.coeff(2) == -1
    half = FracSeries({F(1, 2): F(1)}, F(1, 2), F(1, 2))
    assert series_mul(half, half).coeff(1) == 1
    zero = FracSeries({}, 0, 5)
    assert series_mul(one_plus, zero).is_zero()


def test_mul_empty_window():
    s1 = FracSeries({0: F(1)}, 0, 0)
    s2 = FracSeries({3: F(1)}, 3, 3)
    prod = series_mul(s1, s2)  # single-point window stays sound
    assert prod.coeff(3) == 1
    with pytest.raises(WindowUnderflow):
        prod.coeff(4)


def test_binom_expand():
    s = binom_expand(F(1, 2), 2)
    assert s.coeff(0) == 1 and s.coeff(1) == F(1, 2) and s.coeff(2) == F(-1, 8)
    assert binom_expand(1, 5).to_pairs() == [(0, F(1)), (1, F(1))]
    g = binom_expand(-1, 2)
    assert g.coeff(0) == 1 and g.coeff(1) == -1 and g.coeff(2) == 1


def test_residue_and_coeff():
    s = FracSeries({-1: F(2), F(-1, 2): F(3)}, -2, 2)
    assert residue(s) == 2
    assert coeff(s, F(-1, 2)) == 3
    assert residue(FracSeries({0: F(1), 1: F(1)}, -1, 2)) == 0
    # z^{-2} (1+z)^{1/2}: residue is the z coefficient of the expansion
    assert residue(binom_expand(F(1, 2), 3).shift(-2)) == F(1, 2)
    with pytest.raises(WindowUnderflow):
        residue(FracSeries({0: F(1)}, 0, 3))


def test_out_of_window_coeff_is_error_not_zero():
    s = FracSeries({0: F(1)}, 0, 5)
    assert s.coeff(5) == 0  # inside the window: certified zero
    with pytest.raises(WindowUnderflow):
        s.coeff(6)


def test_substitute_neg():
    s = FracSeries({1: F(1)}, 0, 2)
    assert substitute_neg(s, 4).coeff(1) == -1
    half = FracSeries({F(1, 2): F(1)}, 0, 1)
    assert substitute_neg(half, 4).coeff(F(1, 2)) == root_of_unity(1, 4)
    const = FracSeries({0: F(5)}, 0, 1)
    assert substitute_neg(const, 4).coeff(0) == 5
    # involution up to the square of the branch: f(-(-z)) = f(z) times (-1)^{2e}
    twice = substitute_neg(substitute_neg(half, 4), 4)
    assert twice.coeff(F(1, 2)) == root_of_unity(2, 4)


def test_derivative_has_no_residue():
    s = FracSeries({-3: F(4), 0: F(2), 2: F(5), F(1, 2): F(7)}, -3, 3)
    d = s.differentiate()
    assert d.residue() == 0


def test_truncation_soundness():
    # coefficients computed in a small window agree with a larger recomputation
    big1 = binom_expand(F(1, 3), 8)
    big2 = binom_expand(F(-5, 2), 8)
    small1 = binom_expand(F(1, 3), 4)
    small2 = binom_expand(F(-5, 2), 4)
    big = series_mul(big1, big2)
    small = series_mul(small1, small2)
    for e in range(0, 5):
        assert small.coeff(e) == big.coeff(e)


def test_expand_diff_power():
    lin = expand_diff_power(1, "first", 3)
    assert lin.coeff(1, 0) == 1 and lin.coeff(0, 1) == -1
    s = expand_diff_power(F(1, 2), "first", 2)
    assert s.coeff(F(1, 2), 0) == 1
    assert s.coeff(F(-1, 2), 1) == F(-1, 2)
    assert s.coeff(F(-3, 2), 2) == F(-1, 8)
    t = expand_diff_power(F(1, 2), "second", 2, N=4)
    assert t.coeff(0, F(1, 2)) == root_of_unity(1, 4)


def test_expand_diff_power_integer_agreement():
    # for integer exponents both expansions are the same finite polynomial
    for alpha in (0, 1, 2, 3):
        first = expand_diff_power(alpha, "first", alpha)
        second = expand_diff_power(alpha, "second", alpha, N=4)
        keys = set(first.terms) | set(second.terms)
        for k in keys:
            assert first.terms.get(k, 0) == second.terms.get(k, 0), (alpha, k)


def test_two_var_mul():
    a = expand_diff_power(1, "first", 2)
    sq = a.mul(a)
    assert sq.coeff(2, 0) == 1 and sq.coeff(1, 1) == -2 and sq.coeff(0, 2) == 1
