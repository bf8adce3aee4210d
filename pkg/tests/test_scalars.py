import random
from fractions import Fraction as F

import pytest

from twistedzhu.errors import DivisionByZero, ModulusMismatch
from twistedzhu.scalars import (
    Cyclo,
    cyclotomic_polynomial,
    euler_phi,
    gen_binomial,
    power_branch,
    root_of_unity,
    scalar_arith,
)


def test_cyclotomic_polynomials():
    assert cyclotomic_polynomial(1) == (-1, 1)
    assert cyclotomic_polynomial(2) == (1, 1)
    assert cyclotomic_polynomial(4) == (1, 0, 1)
    assert cyclotomic_polynomial(12) == (1, 0, -1, 0, 1)
    assert euler_phi(12) == 4


def test_roots_of_unity():
    assert root_of_unity(0, 4) == 1
    assert root_of_unity(2, 4) == -1
    z4 = root_of_unity(1, 4)
    assert z4 * z4 == -1
    for N in (2, 3, 4, 6, 8, 12):
        z = root_of_unity(1, N)
        assert z ** N == 1
        assert z.inverse() == z ** (N - 1)


def test_scalar_arith_dispatch():
    z4 = root_of_unity(1, 4)
    assert scalar_arith("add", F(1), F(-1)) == 0
    assert scalar_arith("mul", z4, z4) == -1
    assert scalar_arith("neg", z4) == -z4
    assert scalar_arith("inv", z4) == root_of_unity(3, 4)
    with pytest.raises(DivisionByZero):
        scalar_arith("inv", Cyclo(4, [0, 0]))
    with pytest.raises(ModulusMismatch):
        scalar_arith("add", root_of_unity(1, 4), root_of_unity(1, 8))


def test_field_axioms_random_triples():
    rng = random.Random(11)
    N = 12
    phi = euler_phi(N)

    def rand():
        return Cyclo(N, [F(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(phi)])

    for _ in range(40):
        a, b, c = rand(), rand(), rand()
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a * b == b * a
        if not a.is_zero():
            assert a * a.inverse() == 1


def test_power_branch():
    assert power_branch(1, 4) == -1
    assert power_branch(0, 4) == 1
    assert power_branch(F(1, 2), 4) == root_of_unity(1, 4)
    # multiplicativity over a box of (1/T)Z, T = 3
    N = 6
    for p in range(-6, 7):
        for q in range(-6, 7):
            a, b = F(p, 3), F(q, 3)
            assert power_branch(a, N) * power_branch(b, N) == power_branch(a + b, N)


def test_gen_binomial():
    assert gen_binomial(F(1, 2), 2) == F(-1, 8)
    assert gen_binomial(-1, 3) == -1
    assert gen_binomial(F(17, 5), 0) == 1
    # Pascal's rule on random rational alpha
    rng = random.Random(3)
    for _ in range(50):
        alpha = F(rng.randint(-20, 20), rng.randint(1, 7))
        for j in range(1, 21):
            assert gen_binomial(alpha, j) == gen_binomial(alpha - 1, j) + gen_binomial(alpha - 1, j - 1)


def test_cyclo_rational_detection():
    z = root_of_unity(1, 4)
    assert (z * z).as_rational() == -1
    assert z.as_rational() is None
    assert Cyclo.from_rational(4, F(3, 7)) == F(3, 7)
