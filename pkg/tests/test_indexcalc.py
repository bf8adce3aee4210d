import random
from fractions import Fraction as F

import pytest

from twistedzhu.errors import InvalidBox
from twistedzhu.indexcalc import (
    LemmaBox,
    TwistContext,
    delta_ge,
    lam,
    lam_t,
    split,
    verify_binomial_identities,
    verify_index_lemmas,
)


def test_split():
    assert split(F(5, 3), 3) == (1, 2)
    assert split(F(-1, 2), 2) == (-1, 1)
    for x in range(-5, 6):
        assert split(F(x), 4) == (x, 0)
    with pytest.raises(ValueError):
        split(F(1, 3), 2)


def test_split_bijection():
    for T in (1, 2, 3, 4, 6):
        seen = set()
        for num in range(-3 * T, 3 * T + 1):
            fl, tl = split(F(num, T), T)
            assert 0 <= tl < T
            assert F(num, T) == fl + F(tl, T)
            seen.add((fl, tl))
        assert len(seen) == 6 * T + 1


def test_delta():
    assert delta_ge(3, 3) == 1
    assert delta_ge(2, 3) == 0
    assert delta_ge(-1, -5) == 1


def test_lam_values():
    assert lam(F(0), 0, 1) == 0
    assert lam(F(1, 2), 1, 2) == F(1, 2)
    assert lam(F(1, 2), 0, 2) == 0
    assert lam_t(1, F(1, 2), 0, 2) == 1
    assert lam_t(1, F(1), 1, 2) == F(3, 2)
    # t = 0, tilde x = 0, r > 0: both indicators vanish
    assert lam_t(0, F(2), 1, 2) == -1 + 2 + F(1, 2)


def test_lam_agreement_set():
    # lam agrees with lam_t at t = 0 exactly when the wrapped indicator is off
    for T in (2, 3, 4):
        for num in range(-2 * T, 2 * T + 1):
            x = F(num, T)
            for r in range(T):
                agree = lam(x, r, T) == lam_t(0, x, r, T)
                tl = split(x, T)[1]
                assert agree == (not delta_ge(tl - T, r)), (T, x, r)


def test_index_lemmas_default_box():
    reports = verify_index_lemmas(LemmaBox((1, 2, 3, 4, 6), -6, 6))
    assert len(reports) == 4
    total = 0
    for rep in reports:
        assert rep.passed, rep.name
        assert not rep.counterexamples
        total += rep.cases
    assert total >= 10 ** 5


def test_index_lemma_single_instances():
    # shift identity at i = 2, r = 3, x = 5
    assert delta_ge(2 + 5, 3 + 5) == delta_ge(2, 3) == 0
    # untwisted collapse of the commutator lemma: T = 1 means everything is a floor
    T = 1
    for z in range(-4, 5):
        for x in range(-4, 5):
            for q1 in range(-4, 5):
                assert lam(F(z + x), 0, T) - x + q1 == z + q1


def test_invalid_box():
    with pytest.raises(InvalidBox):
        verify_index_lemmas(LemmaBox((), -6, 6))
    with pytest.raises(InvalidBox):
        verify_index_lemmas(LemmaBox((2,), 6, -6))


def test_binomial_identities():
    rng = random.Random(0)
    samples = [(F(rng.randint(-12, 12), rng.randint(1, 6)),
                F(rng.randint(-12, 12), rng.randint(1, 6))) for _ in range(50)]
    reports = verify_binomial_identities(12, samples)
    assert all(rep.passed for rep in reports)
    assert all(rep.cases == 50 * 13 for rep in reports)


def test_binomial_identity_small_cases():
    # l = 1, e = 2, f = 1: both sides of the first identity are 1 + z^{-1}
    [rep_a, rep_b] = verify_binomial_identities(1, [(F(2), F(1))])
    assert rep_a.passed and rep_b.passed
    # direct expansion: LHS_A = 1 - binom(f+1,1) u + binom(e+1,1) u = 1 + u
    lhs = [F(1), -F(2) + F(3)]
    assert lhs == [F(1), F(1)]
    # l = 1, e = f = 1, second identity: both sides are 1 + 3w
    lhs_b = [F(1), F(2) + F(1)]
    assert lhs_b == [F(1), F(3)]


def test_twist_context():
    ctx = TwistContext(4, 3, 2)
    assert ctx.j3 == 1
    assert ctx.j3vee == 3
    assert (ctx.j3 + ctx.j3vee) % ctx.T == 0
