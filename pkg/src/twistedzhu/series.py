"""Formal Laurent-type series in z^{1/T} with exact coefficients.

A :class:`FracSeries` is a finitely supported map exponent -> coefficient
together with a window [lo, hi]: outside the window coefficients are
*unspecified*, not zero, and reading them raises ``WindowUnderflow``.
Coefficients are scalars (Fraction/Cyclo) or dict-vectors; the same
exponent machinery serves both.

:class:`TwoVarSeries` holds truncated expansions in two variables, used for
the two inequivalent expansions of (z1 - z2)^alpha.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import WindowUnderflow
from .linal import cadd, cscale, cis_zero
from .scalars import F, gen_binomial, power_branch

_INF = None  # open window bound


class FracSeries:
    """sum_e c_e z^e with exponents in Q, certified on [lo, hi]."""

    __slots__ = ("terms", "lo", "hi")

    def __init__(self, terms=None, lo=None, hi=None):
        self.terms = {}
        if terms:
            for e, c in dict(terms).items():
                if not cis_zero(c):
                    self.terms[F(e)] = c
        self.lo = F(lo) if lo is not None else None
        self.hi = F(hi) if hi is not None else None
        for e in self.terms:
            assert self._inside(e), f"exponent {e} outside window [{self.lo}, {self.hi}]"

    def _inside(self, e) -> bool:
        if self.lo is not None and e < self.lo:
            return False
        if self.hi is not None and e > self.hi:
            return False
        return True

    def support(self):
        return sorted(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, e):
        """Certified coefficient of z^e; raises outside the window."""
        e = F(e)
        if not self._inside(e):
            raise WindowUnderflow(f"exponent {e} outside window [{self.lo}, {self.hi}]")
        return self.terms.get(e, 0)

    def residue(self):
        """Coefficient of z^{-1}."""
        return self.coeff(F(-1))

    def __add__(self, other):
        lo = _maxb(self.lo, other.lo)
        hi = _minb(self.hi, other.hi)
        out = {}
        for src in (self.terms, other.terms):
            for e, c in src.items():
                if _between(e, lo, hi):
                    out[e] = cadd(out.get(e), c)
        return FracSeries(out, lo, hi)

    def __neg__(self):
        return FracSeries({e: cscale(-1, c) for e, c in self.terms.items()}, self.lo, self.hi)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s):
        return FracSeries({e: cscale(s, c) for e, c in self.terms.items()}, self.lo, self.hi)

    def shift(self, d):
        """Multiply by z^d."""
        d = F(d)
        return FracSeries(
            {e + d: c for e, c in self.terms.items()},
            None if self.lo is None else self.lo + d,
            None if self.hi is None else self.hi + d,
        )

    def mul(self, other: "FracSeries") -> "FracSeries":
        """Cauchy product; the window is the largest range sound for both factors."""
        lo = _addb(self.lo, other.lo)
        hi = _minb(_addb(self.lo, other.hi), _addb(self.hi, other.lo))
        if lo is not None and hi is not None and lo > hi:
            raise WindowUnderflow(f"empty product window [{lo}, {hi}]")
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = e1 + e2
                if _between(e, lo, hi):
                    out[e] = cadd(out.get(e), _cmul(c1, c2))
        return FracSeries(out, lo, hi)

    __mul__ = mul

    def differentiate(self):
        """Formal d/dz."""
        out = {}
        for e, c in self.terms.items():
            if e != 0:
                out[e - 1] = cscale(e, c)
        return FracSeries(
            out,
            None if self.lo is None else self.lo - 1,
            None if self.hi is None else self.hi - 1,
        )

    def substitute_neg(self, N: int):
        """z -> -z under the fixed branch: c z^e becomes c (-1)^e z^e."""
        out = {e: cscale(power_branch(e, N), c) for e, c in self.terms.items()}
        return FracSeries(out, self.lo, self.hi)

    def map_coeff(self, f):
        return FracSeries({e: f(c) for e, c in self.terms.items()}, self.lo, self.hi)

    def __eq__(self, other):
        if not isinstance(other, FracSeries):
            return NotImplemented
        keys = set(self.terms) | set(other.terms)
        return all(_ceq(self.terms.get(k, 0), other.terms.get(k, 0)) for k in keys)

    def __repr__(self):
        body = " + ".join(f"({c})z^{e}" for e, c in sorted(self.terms.items()))
        return f"FracSeries({body or '0'}; window [{self.lo}, {self.hi}])"

    def to_pairs(self):
        return [(e, c) for e, c in sorted(self.terms.items())]


def _cmul(c1, c2):
    # scalar*scalar, scalar*vector or vector*scalar; vector*vector is not defined
    if isinstance(c1, dict):
        assert not isinstance(c2, dict)
        return cscale(c2, c1)
    if isinstance(c2, dict):
        return cscale(c1, c2)
    return c1 * c2


def _ceq(a, b):
    if isinstance(a, dict) or isinstance(b, dict):
        a = a if isinstance(a, dict) else {}
        b = b if isinstance(b, dict) else {}
        keys = set(a) | set(b)
        return all(a.get(k, 0) == b.get(k, 0) for k in keys)
    return a == b


def _maxb(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return max(a, b)


def _minb(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def _addb(a, b):
    if a is None or b is None:
        return None
    return a + b


def _between(e, lo, hi):
    return (lo is None or e >= lo) and (hi is None or e <= hi)


def series(terms, lo=None, hi=None) -> FracSeries:
    return FracSeries(terms, lo, hi)


def one(hi=0) -> FracSeries:
    return FracSeries({F(0): F(1)}, 0, hi)


def binom_expand(alpha, jmax: int) -> FracSeries:
    """(1+z)^alpha truncated: sum_{j<=jmax} binom(alpha, j) z^j, window [0, jmax]."""
    alpha = F(alpha)
    return FracSeries({F(j): gen_binomial(alpha, j) for j in range(jmax + 1)}, 0, jmax)


def series_mul(s1: FracSeries, s2: FracSeries) -> FracSeries:
    return s1.mul(s2)


def residue(s: FracSeries):
    return s.residue()


def coeff(s: FracSeries, e):
    return s.coeff(e)


def substitute_neg(s: FracSeries, N: int) -> FracSeries:
    return s.substitute_neg(N)


class TwoVarSeries:
    """Finitely supported sum c z1^{e1} z2^{e2} with per-variable windows."""

    __slots__ = ("terms", "win1", "win2", "dominant")

    def __init__(self, terms=None, win1=(None, None), win2=(None, None), dominant="first"):
        self.terms = {}
        if terms:
            for (e1, e2), c in dict(terms).items():
                if not cis_zero(c):
                    self.terms[(F(e1), F(e2))] = c
        self.win1 = tuple(None if b is None else F(b) for b in win1)
        self.win2 = tuple(None if b is None else F(b) for b in win2)
        self.dominant = dominant

    def coeff(self, e1, e2):
        e1, e2 = F(e1), F(e2)
        if not (_between(e1, *self.win1) and _between(e2, *self.win2)):
            raise WindowUnderflow(f"({e1}, {e2}) outside window")
        return self.terms.get((e1, e2), 0)

    def __add__(self, other):
        w1 = (_maxb(self.win1[0], other.win1[0]), _minb(self.win1[1], other.win1[1]))
        w2 = (_maxb(self.win2[0], other.win2[0]), _minb(self.win2[1], other.win2[1]))
        out = {}
        for src in (self.terms, other.terms):
            for k, c in src.items():
                if _between(k[0], *w1) and _between(k[1], *w2):
                    out[k] = cadd(out.get(k), c)
        return TwoVarSeries(out, w1, w2, self.dominant)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, s):
        return TwoVarSeries(
            {k: cscale(s, c) for k, c in self.terms.items()}, self.win1, self.win2, self.dominant
        )

    def mul(self, other):
        w1 = (
            _addb(self.win1[0], other.win1[0]),
            _minb(_addb(self.win1[0], other.win1[1]), _addb(self.win1[1], other.win1[0])),
        )
        w2 = (
            _addb(self.win2[0], other.win2[0]),
            _minb(_addb(self.win2[0], other.win2[1]), _addb(self.win2[1], other.win2[0])),
        )
        out = {}
        for (a1, a2), c1 in self.terms.items():
            for (b1, b2), c2 in other.terms.items():
                k = (a1 + b1, a2 + b2)
                if _between(k[0], *w1) and _between(k[1], *w2):
                    out[k] = cadd(out.get(k), _cmul(c1, c2))
        return TwoVarSeries(out, w1, w2, self.dominant)

    __mul__ = mul

    def __eq__(self, other):
        keys = set(self.terms) | set(other.terms)
        return all(_ceq(self.terms.get(k, 0), other.terms.get(k, 0)) for k in keys)

    def __repr__(self):
        body = " + ".join(f"({c})z1^{e1} z2^{e2}" for (e1, e2), c in sorted(self.terms.items()))
        return f"TwoVarSeries({body or '0'})"


def expand_diff_power(alpha, dominant: str, jmax: int, N: int = 2) -> TwoVarSeries:
    """Truncated expansion of (z1 - z2)^alpha.

    dominant="first" expands in nonnegative powers of z2:
        sum_j binom(alpha, j) (-1)^j z1^{alpha-j} z2^j.
    dominant="second" is the opposite expansion of (-z2 + z1)^alpha and picks
    up the branch prefactor (-1)^alpha:
        (-1)^alpha sum_j binom(alpha, j) (-1)^j z2^{alpha-j} z1^j.
    """
    alpha = F(alpha)
    exact = alpha.denominator == 1 and 0 <= alpha <= jmax  # terminating expansion
    terms = {}
    if dominant == "first":
        for j in range(jmax + 1):
            terms[(alpha - j, F(j))] = gen_binomial(alpha, j) * (-1) ** j
        win1 = (None, None) if exact else (alpha - jmax, alpha)
        win2 = (None, None) if exact else (F(0), F(jmax))
        return TwoVarSeries(terms, win1, win2, "first")
    if dominant == "second":
        pref = power_branch(alpha, N)
        for j in range(jmax + 1):
            terms[(F(j), alpha - j)] = cscale(gen_binomial(alpha, j) * (-1) ** j, pref)
        win1 = (None, None) if exact else (F(0), F(jmax))
        win2 = (None, None) if exact else (alpha - jmax, alpha)
        return TwoVarSeries(terms, win1, win2, "second")
    raise ValueError(f"dominant must be 'first' or 'second', got {dominant!r}")
