"""Exact scalars: rationals and elements of the cyclotomic field Q(zeta_N).

Rationals are plain ``fractions.Fraction``.  A :class:`Cyclo` is a residue
modulo the N-th cyclotomic polynomial, stored as a dense rational vector of
length phi(N).  Arithmetic freely mixes ``Fraction``/``int`` with ``Cyclo``
of one fixed modulus; two different moduli never mix implicitly.

The branch of fractional powers of -1 is fixed globally:
(-1)^alpha = e^{pi i alpha}, realised by :func:`power_branch` as a power of
zeta_N, which forces N = 2T when exponents live in (1/T)Z.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from numbers import Rational

from .errors import DivisionByZero, ModulusMismatch

F = Fraction


def rat(text) -> Fraction:
    """Parse a rational from the serial form "p/q" (or "p")."""
    if isinstance(text, Rational):
        return F(text)
    return F(str(text))


def rat_str(q) -> str:
    q = F(q)
    return f"{q.numerator}/{q.denominator}"


def gen_binomial(alpha, j: int) -> Fraction:
    """Generalized binomial alpha(alpha-1)...(alpha-j+1)/j! for rational alpha."""
    if j < 0:
        return F(0)
    alpha = F(alpha)
    num = F(1)
    for i in range(j):
        num *= alpha - i
    for i in range(2, j + 1):
        num /= i
    return num


@lru_cache(maxsize=None)
def cyclotomic_polynomial(N: int) -> tuple[int, ...]:
    """Monic N-th cyclotomic polynomial, ascending integer coefficients."""
    assert N >= 1
    # (x^N - 1) divided by the product of Phi_d for proper divisors d.
    poly = [-1] + [0] * (N - 1) + [1]
    for d in range(1, N):
        if N % d == 0:
            poly = _polydiv_exact(poly, list(cyclotomic_polynomial(d)))
    return tuple(poly)


def _polydiv_exact(num: list[int], den: list[int]) -> list[int]:
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for k in range(len(out) - 1, -1, -1):
        c = num[k + len(den) - 1]
        assert c % den[-1] == 0
        q = c // den[-1]
        out[k] = q
        for i, d in enumerate(den):
            num[k + i] -= q * d
    assert all(c == 0 for c in num)
    return out


@lru_cache(maxsize=None)
def euler_phi(N: int) -> int:
    return len(cyclotomic_polynomial(N)) - 1


def _reduce(coeffs: list[Fraction], N: int) -> tuple[Fraction, ...]:
    phi = euler_phi(N)
    mod = cyclotomic_polynomial(N)
    coeffs = list(coeffs) + [F(0)] * max(0, phi - len(coeffs))
    for k in range(len(coeffs) - 1, phi - 1, -1):
        c = coeffs[k]
        if c:
            for i in range(phi):
                coeffs[k - phi + i] -= c * mod[i]
        coeffs[k] = F(0)
    return tuple(coeffs[:phi])


class Cyclo:
    """An element of Q(zeta_N), reduced modulo the N-th cyclotomic polynomial."""

    __slots__ = ("N", "c")

    def __init__(self, N: int, coeffs=()):
        self.N = N
        coeffs = [F(x) for x in coeffs]
        if len(coeffs) != euler_phi(N):
            coeffs = list(_reduce(coeffs, N))
        self.c = tuple(coeffs)

    @staticmethod
    def from_rational(N: int, q) -> Cyclo:
        return Cyclo(N, [F(q)])

    def is_zero(self) -> bool:
        return all(x == 0 for x in self.c)

    def as_rational(self) -> Fraction | None:
        """The value as a Fraction when it lies in Q, else None."""
        if all(x == 0 for x in self.c[1:]):
            return self.c[0]
        return None

    def _coerce(self, other):
        if isinstance(other, Cyclo):
            if other.N != self.N:
                raise ModulusMismatch(f"moduli differ: {self.N} vs {other.N}")
            return other
        if isinstance(other, Rational):
            return Cyclo.from_rational(self.N, other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Cyclo(self.N, [a + b for a, b in zip(self.c, o.c)])

    __radd__ = __add__

    def __neg__(self):
        return Cyclo(self.N, [-a for a in self.c])

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Cyclo(self.N, [a - b for a, b in zip(self.c, o.c)])

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if isinstance(other, Rational):
            return Cyclo(self.N, [a * other for a in self.c])
        out = [F(0)] * (2 * len(self.c) - 1)
        for i, a in enumerate(self.c):
            if a:
                for j, b in enumerate(o.c):
                    if b:
                        out[i + j] += a * b
        return Cyclo(self.N, _reduce(out, self.N))

    __rmul__ = __mul__

    def inverse(self) -> Cyclo:
        if self.is_zero():
            raise DivisionByZero("inverse of zero cyclotomic scalar")
        # Extended Euclid in Q[x] against the (irreducible) modulus.
        mod = [F(x) for x in cyclotomic_polynomial(self.N)]
        r0, r1 = mod, list(self.c)
        s0, s1 = [F(0)], [F(1)]
        while any(x != 0 for x in r1):
            q, r = _polydivmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _polysub(s0, _polymul(q, s1))
        lead = _polytrim(r0)
        assert len(lead) == 1, "cyclotomic modulus must be irreducible"
        inv = [x / lead[0] for x in s0]
        return Cyclo(self.N, _reduce(inv, self.N))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = Cyclo.from_rational(self.N, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, Rational):
            return self.as_rational() == F(other)
        if isinstance(other, Cyclo):
            if other.N != self.N:
                a, b = self.as_rational(), other.as_rational()
                return a is not None and a == b
            return self.c == other.c
        return NotImplemented

    def __bool__(self):
        return not self.is_zero()

    def __hash__(self):
        q = self.as_rational()
        if q is not None:
            return hash(q)
        return hash((self.N, self.c))

    def __repr__(self):
        q = self.as_rational()
        if q is not None:
            return f"Cyclo({self.N}, {q})"
        parts = [f"{a}*z^{i}" for i, a in enumerate(self.c) if a]
        return f"Cyclo({self.N}, {' + '.join(parts)})"

    def to_json(self):
        return {"N": self.N, "coeffs": [rat_str(x) for x in self.c]}


def _polytrim(p):
    while p and p[-1] == 0:
        p = p[:-1]
    return p


def _polymul(p, q):
    out = [F(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return out


def _polysub(p, q):
    n = max(len(p), len(q))
    p = list(p) + [F(0)] * (n - len(p))
    q = list(q) + [F(0)] * (n - len(q))
    return [a - b for a, b in zip(p, q)]


def _polydivmod(num, den):
    num = _polytrim([F(x) for x in num])
    den = _polytrim([F(x) for x in den])
    q = [F(0)] * max(1, len(num) - len(den) + 1)
    while len(num) >= len(den) and num:
        k = len(num) - len(den)
        c = num[-1] / den[-1]
        q[k] = c
        num = _polysub(num, [F(0)] * k + [c * d for d in den])
        num = _polytrim(num)
    return q, num


def root_of_unity(k: int, N: int) -> Cyclo:
    """zeta_N^k as a reduced cyclotomic scalar."""
    k %= N
    return Cyclo(N, [F(0)] * k + [F(1)])


def power_branch(alpha, N: int) -> Cyclo:
    """The fixed branch (-1)^alpha = e^{pi i alpha}, as a power of zeta_N.

    Requires N*alpha/2 to be an integer, i.e. N = 2T for exponents in (1/T)Z.
    """
    alpha = F(alpha)
    k = alpha * N / 2
    if k.denominator != 1:
        raise ValueError(f"exponent {alpha} needs a finer root of unity than zeta_{N}")
    return root_of_unity(int(k), N)


def scalar_arith(op: str, a, b=None):
    """Field arithmetic dispatcher: op in {add, mul, neg, inv}."""
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "neg":
        return -a
    if op == "inv":
        if isinstance(a, Cyclo):
            return a.inverse()
        if a == 0:
            raise DivisionByZero("inverse of zero")
        return 1 / F(a)
    raise ValueError(f"unknown op {op!r}")


def as_scalar(x, N: int | None = None):
    """Normalize ints/strings/Fractions (and Cyclo) to workbench scalars."""
    if isinstance(x, Cyclo):
        return x
    if isinstance(x, str):
        return rat(x)
    return F(x)


def scalar_is_zero(x) -> bool:
    if isinstance(x, Cyclo):
        return x.is_zero()
    return x == 0
