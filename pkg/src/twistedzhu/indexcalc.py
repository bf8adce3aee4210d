"""Integer and fractional exponent bookkeeping.

Everything downstream indexes modes by numbers in (1/T)Z.  This module owns
the residue/floor split of such numbers, the indicator delta_i(r), the two
pole-order functions lam and lam_t, exhaustive verification of the four
index-arithmetic lemmas these satisfy, and brute-force verification of the
two binomial identities used by the mode-commutation checks.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import InvalidBox
from .scalars import F, gen_binomial


@dataclass(frozen=True)
class TwistContext:
    """Common order T and the eigendata residues of a fixed element."""

    T: int
    j1: int
    j2: int

    def __post_init__(self):
        assert self.T >= 1 and 0 <= self.j1 < self.T and 0 <= self.j2 < self.T

    @property
    def j3(self) -> int:
        return (self.j1 + self.j2) % self.T

    @property
    def j3vee(self) -> int:
        return (-self.j1 - self.j2) % self.T


def check_frac(x, T: int) -> Fraction:
    x = F(x)
    if (x * T).denominator != 1:
        raise ValueError(f"{x} is not in (1/{T})Z")
    return x


def split(x, T: int) -> tuple[int, int]:
    """x = floor + tilde/T with 0 <= tilde < T."""
    x = check_frac(x, T)
    scaled = int(x * T)
    return scaled // T, scaled % T


def tilde(x, T: int) -> int:
    return split(x, T)[1]


def delta_ge(i, r) -> int:
    """Indicator of i >= r."""
    return 1 if i >= r else 0


def lam(x, r: int, T: int) -> Fraction:
    """-1 + floor(x) + delta_{tilde x}(r) + r/T."""
    assert 0 <= r < T
    fl, tl = split(x, T)
    return F(-1) + fl + delta_ge(tl, r) + F(r, T)


def lam_t(t: int, x, r: int, T: int) -> Fraction:
    """-1 + floor(x) + delta_{t+tilde x}(r) + delta_{t+tilde x-T}(r) + r/T."""
    assert 0 <= r < T and 0 <= t < T
    fl, tl = split(x, T)
    return F(-1) + fl + delta_ge(t + tl, r) + delta_ge(t + tl - T, r) + F(r, T)


@dataclass(frozen=True)
class LemmaBox:
    """Parameter ranges for the exhaustive lemma suites."""

    Ts: tuple[int, ...] = (1, 2, 3, 4, 6)
    int_lo: int = -6
    int_hi: int = 6

    def ints(self):
        return range(self.int_lo, self.int_hi + 1)


@dataclass
class CheckReport:
    name: str
    cases: int = 0
    counterexamples: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.cases > 0 and not self.counterexamples

    def record(self, witness, limit=5):
        if len(self.counterexamples) < limit:
            self.counterexamples.append(witness)
        else:
            self.counterexamples.append("...")

    def to_json(self):
        return {
            "name": self.name,
            "cases": self.cases,
            "passed": self.passed,
            "counterexamples": [repr(w) for w in self.counterexamples[:6]],
        }


def verify_index_lemmas(box: LemmaBox = LemmaBox()) -> list[CheckReport]:
    """Exhaustively check the four index-arithmetic lemmas over the box.

    All four identities are verified with scaled-integer arithmetic
    (numbers in (1/T)Z are held as integer numerators), so the inner loops
    stay cheap enough for the full default box.
    """
    if not box.Ts or box.int_lo > box.int_hi:
        raise InvalidBox("empty parameter box")
    reports = [
        _lemma_delta_properties(box),
        _lemma_right_action(box),
        _lemma_circ_product(box),
        _lemma_commutativity(box),
    ]
    for rep in reports:
        if rep.cases == 0:
            raise InvalidBox(f"hypothesis filter emptied the box for {rep.name}")
    return reports


def _lemma_delta_properties(box: LemmaBox) -> CheckReport:
    rep = CheckReport("delta-and-floor-identities")
    ints = list(box.ints())
    for i in ints:
        for r in ints:
            for x in ints:
                rep.cases += 2
                if delta_ge(i + x, r + x) != delta_ge(i, r):
                    rep.record(("shift", i, r, x))
                if delta_ge(i, r - x) != delta_ge(x, r - i):
                    rep.record(("swap", i, r, x))
    # floor(r+x) = floor(r) + floor(x) + delta_{tilde r}(T - tilde x), r,x in (1/T)Z
    for T in box.Ts:
        for fr in ints:
            for tr in range(T):
                for fx in ints:
                    for tx in range(T):
                        rep.cases += 1
                        lhs = ((fr * T + tr) + (fx * T + tx)) // T
                        rhs = fr + fx + (1 if tr >= T - tx else 0)
                        if lhs != rhs:
                            rep.record(("floor", T, F(fr * T + tr, T), F(fx * T + tx, T)))
    return rep


def _lemma_right_action(box: LemmaBox) -> CheckReport:
    # Under (tilde m - tilde p - j2) = 0 mod T, with r = (t + tilde p - tilde n - j1) mod T
    # and j3vee = (-j1-j2) mod T:  lam_t(m, r) + n - t/T = lam(n, j3vee) + m.
    rep = CheckReport("right-action-exponent")
    ints = list(box.ints())
    for T in box.Ts:
        res = range(T)
        for j1 in res:
            for j2 in res:
                j3vee = (-j1 - j2) % T
                for t in res:
                    for tm in res:
                        tp = (tm - j2) % T  # hypothesis filter solved for tilde p
                        for tn in res:
                            r = (t + tp - tn - j1) % T
                            d1 = 1 if t + tm >= r else 0
                            d2 = 1 if t + tm - T >= r else 0
                            dn = 1 if tn >= j3vee else 0
                            for fm in ints:
                                for fn in ints:
                                    rep.cases += 1
                                    # both sides scaled by T
                                    lhs = -T + fm * T + (d1 + d2) * T + r + fn * T + tn - t
                                    rhs = -T + fn * T + dn * T + j3vee + fm * T + tm
                                    if lhs != rhs:
                                        rep.record((T, j1, j2, t, tm, tn, fm, fn))
    return rep


def _lemma_circ_product(box: LemmaBox) -> CheckReport:
    # Under (tilde m - tilde n + t + j3vee - r) = 0 mod T:
    #   lam_t(m, r) + n - m - t/T = lam(n, j3vee).
    rep = CheckReport("circ-product-exponent")
    ints = list(box.ints())
    for T in box.Ts:
        res = range(T)
        for j3vee in res:
            for t in res:
                for tm in res:
                    for tn in res:
                        r = (tm - tn + t + j3vee) % T
                        d1 = 1 if t + tm >= r else 0
                        d2 = 1 if t + tm - T >= r else 0
                        dn = 1 if tn >= j3vee else 0
                        for fm in ints:
                            for fn in ints:
                                rep.cases += 1
                                lhs = -T + fm * T + (d1 + d2) * T + r + (fn * T + tn) - (fm * T + tm) - t
                                rhs = -T + fn * T + dn * T + j3vee
                                if lhs != rhs:
                                    rep.record((T, j3vee, t, tm, tn, fm, fn))
    return rep


def _lemma_commutativity(box: LemmaBox) -> CheckReport:
    # For z in (1/T)Z, x in Z - j2/T, q1 in Z + j1/T, j3vee = (-j1-j2) mod T:
    #   lam(z + x, j3vee) - x + q1 = floor(z + q1).
    rep = CheckReport("commutator-exponent")
    ints = list(box.ints())
    for T in box.Ts:
        res = range(T)
        for j1 in res:
            for j2 in res:
                j3vee = (-j1 - j2) % T
                for tz in res:
                    for fz in ints:
                        Z = fz * T + tz
                        for ix in ints:
                            X = ix * T - j2
                            zx = Z + X
                            fzx, tzx = zx // T, zx % T
                            lam_scaled = -T + fzx * T + (T if tzx >= j3vee else 0) + j3vee
                            for iq in ints:
                                rep.cases += 1
                                Q = iq * T + j1
                                lhs = lam_scaled - X + Q
                                rhs = ((Z + Q) // T) * T
                                if lhs != rhs:
                                    rep.record((T, j1, j2, F(Z, T), F(X, T), F(Q, T)))
    return rep


def verify_binomial_identities(l_max: int, samples) -> list[CheckReport]:
    """Expand both sides of the two finite binomial identities and compare.

    Identity A (in u = z^{-1}):
      sum_{i+j<=l} binom(e+i, i)(-1)^j binom(f+i+j, j) u^{i+j} = sum_p binom(e-f, p) u^p.
    Identity B (in w = (1+z)/z):
      sum_{i+j<=l} binom(e, i) binom(f+i+j, j) w^{i+j} = sum_p binom(e+f+p, p) w^p.
    """
    rep_a = CheckReport("binomial-identity-A")
    rep_b = CheckReport("binomial-identity-B")
    for e, f in samples:
        e, f = F(e), F(f)
        for l in range(l_max + 1):
            lhs_a = [F(0)] * (l + 1)
            lhs_b = [F(0)] * (l + 1)
            for i in range(l + 1):
                bea = gen_binomial(e + i, i)
                beb = gen_binomial(e, i)
                for j in range(l - i + 1):
                    bf = gen_binomial(f + i + j, j)
                    lhs_a[i + j] += bea * (-1) ** j * bf
                    lhs_b[i + j] += beb * bf
            rhs_a = [gen_binomial(e - f, p) for p in range(l + 1)]
            rhs_b = [gen_binomial(e + f + p, p) for p in range(l + 1)]
            rep_a.cases += 1
            rep_b.cases += 1
            if lhs_a != rhs_a:
                rep_a.record((l, e, f, lhs_a, rhs_a))
            if lhs_b != rhs_b:
                rep_b.record((l, e, f, lhs_b, rhs_b))
    return [rep_a, rep_b]
