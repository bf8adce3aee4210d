"""Rank-one free-boson mode engines.

States live in the polynomial Fock space on one current h with bracket
[h(p), h(q)] = p delta_{p+q,0}.  A monomial is a descending tuple of
positive mode magnitudes: (p1, ..., pk) stands for h(-p1)...h(-pk)|0>.
Magnitudes are integers on the untwisted side and half-odd integers on the
order-two twisted side.

Fields of composite states are normal-ordered products of derivative
fields; on the twisted side the state is first corrected by the standard
quadratic exponential whose coefficient table comes from the generating
series -log(((1+x)^{1/2} + (1+y)^{1/2})/2).  Every series is computed
exactly below a degree cap.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .scalars import F, gen_binomial

HALF = F(1, 2)

Mon = tuple  # descending tuple of positive Fractions
VAC: Mon = ()


def mon_deg(mon: Mon) -> Fraction:
    return sum(mon, F(0))


def mon_insert(mon: Mon, p) -> Mon:
    out = sorted(mon + (p,), reverse=True)
    return tuple(out)


def mon_remove(mon: Mon, p) -> Mon:
    out = list(mon)
    out.remove(p)
    return tuple(out)


def state_add(u: dict, v: dict) -> dict:
    out = dict(u)
    for k, c in v.items():
        s = out.get(k, 0) + c
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


def annihilate(p, state: dict) -> dict:
    """Apply h(p), p > 0."""
    out = {}
    for mon, c in state.items():
        if p in mon:
            k = mon.count(p)
            new = mon_remove(mon, p)
            s = out.get(new, 0) + c * p * k
            if s:
                out[new] = s
            else:
                out.pop(new, None)
    return out


def create(p, state: dict) -> dict:
    """Apply h(-p), p > 0."""
    return {mon_insert(mon, p): c for mon, c in state.items()}


def partitions(max_deg, half: bool) -> list[Mon]:
    """All monomials of degree <= max_deg, ordered by (degree, parts)."""
    step = HALF if half else F(1)
    start = HALF if half else F(1)
    out = [VAC]
    frontier = [VAC]
    while frontier:
        nxt = []
        for mon in frontier:
            cap = mon[-1] if mon else max_deg
            p = start
            while p <= cap and mon_deg(mon) + p <= max_deg:
                if half and p.denominator != 2:
                    p += step
                    continue
                grown = mon + (p,)
                nxt.append(grown)
                p += step
        out.extend(nxt)
        frontier = nxt
    return sorted(set(out), key=lambda m: (mon_deg(m), m))


# --- normal-ordered products of derivative fields ---------------------------

Series = dict  # exponent Fraction -> state dict


def _series_add_into(acc: Series, other: Series):
    for e, vec in other.items():
        acc[e] = state_add(acc.get(e, {}), vec)
        if not acc[e]:
            del acc[e]


def _ann_field(n: int, S: Series, half: bool) -> Series:
    """Annihilation part of the n-th derivative field applied to a series."""
    out: Series = {}
    for e, vec in S.items():
        for mon, c in vec.items():
            for p in set(mon):
                coeff = c * gen_binomial(-p - 1, n) * p * mon.count(p)
                if coeff:
                    key = e - p - 1 - n
                    tgt = out.setdefault(key, {})
                    new = mon_remove(mon, p)
                    s = tgt.get(new, 0) + coeff
                    if s:
                        tgt[new] = s
                    else:
                        del tgt[new]
    return {e: vec for e, vec in out.items() if vec}


def _cre_field(n: int, S: Series, half: bool, dmax) -> Series:
    """Creation part of the n-th derivative field, capped at degree dmax."""
    start = HALF if half else F(1)
    out: Series = {}
    for e, vec in S.items():
        for mon, c in vec.items():
            d = mon_deg(mon)
            p = start
            while d + p <= dmax:
                coeff = c * gen_binomial(p - 1, n)
                if coeff:
                    key = e + p - 1 - n
                    tgt = out.setdefault(key, {})
                    new = mon_insert(mon, p)
                    s = tgt.get(new, 0) + coeff
                    if s:
                        tgt[new] = s
                    else:
                        del tgt[new]
                p += 1
    return {e: vec for e, vec in out.items() if vec}


def normal_ordered_series(derivs: tuple[int, ...], v: dict, half: bool, dmax) -> Series:
    """:prod_i d^(derivs_i) h(z): applied to the state v, exactly on degrees <= dmax.

    Each field contributes either a creation or an annihilation mode; in the
    normal-ordered product all annihilations act first, so the sum runs over
    the 2^k splittings.  Creations only raise the degree, which makes the cap
    sound.
    """
    k = len(derivs)
    total: Series = {}
    for mask in range(1 << k):
        cur: Series = {F(0): dict(v)}
        for i in range(k):
            if not (mask >> i) & 1:
                cur = _ann_field(derivs[i], cur, half)
                if not cur:
                    break
        else:
            for i in range(k):
                if (mask >> i) & 1 and cur:
                    cur = _cre_field(derivs[i], cur, half, dmax)
            if cur:
                _series_add_into(total, cur)
    return {
        e: {m: c for m, c in vec.items() if mon_deg(m) <= dmax}
        for e, vec in total.items()
        if any(mon_deg(m) <= dmax for m in vec)
    }


def untwisted_vertex_series(a: dict, b: dict, dmax) -> Series:
    """Y(a, z) b on the Fock space itself, exact for output degrees <= dmax."""
    total: Series = {}
    for mon, c in a.items():
        derivs = tuple(int(p) - 1 for p in mon)
        part = normal_ordered_series(derivs, b, False, dmax)
        _series_add_into(total, {e: {m: c * x for m, x in vec.items()} for e, vec in part.items()})
    return total


# --- twisted side ------------------------------------------------------------


@lru_cache(maxsize=None)
def _delta_table(D: int) -> dict:
    """Coefficients c_{mn}, m+n <= D, of -log(((1+x)^{1/2}+(1+y)^{1/2})/2)."""
    s = {}
    for i in range(D + 1):
        b = gen_binomial(HALF, i)
        if i == 0:
            s[(0, 0)] = F(1)
        else:
            s[(i, 0)] = b / 2
            s[(0, i)] = b / 2
    w = {k: v for k, v in s.items() if k != (0, 0)}
    log_s = {}
    power = dict(w)
    k = 1
    while power:
        for key, val in power.items():
            log_s[key] = log_s.get(key, F(0)) + F((-1) ** (k + 1), k) * val
        nxt = {}
        for (i1, j1), v1 in power.items():
            for (i2, j2), v2 in w.items():
                if i1 + i2 + j1 + j2 <= D:
                    key = (i1 + i2, j1 + j2)
                    nxt[key] = nxt.get(key, F(0)) + v1 * v2
        power = {k2: v for k2, v in nxt.items() if v}
        k += 1
    return {k2: -v for k2, v in log_s.items() if v}


def delta_coeff(m: int, n: int) -> Fraction:
    return _delta_table(m + n).get((m, n), F(0))


def _delta_apply(shifted: dict) -> dict:
    """One application of the quadratic correction to z-shifted V-states."""
    out = {}
    for s, vec in shifted.items():
        degs = {int(mon_deg(m)) for m in vec}
        if not degs:
            continue
        dmax = max(degs)
        for m in range(1, dmax + 1):
            first = annihilate(F(m), vec)
            if not first:
                continue
            for n in range(1, dmax - m + 1):
                c = delta_coeff(m, n)
                if not c:
                    continue
                second = annihilate(F(n), first)
                if second:
                    tgt = out.setdefault(s + m + n, {})
                    for mon, x in second.items():
                        v = tgt.get(mon, 0) + c * x
                        if v:
                            tgt[mon] = v
                        else:
                            del tgt[mon]
    return {s: vec for s, vec in out.items() if vec}


def exp_delta(a: dict) -> dict:
    """e^{Delta_z} a as a map z-shift -> V-state (finitely many shifts)."""
    out = {0: dict(a)}
    cur = {0: dict(a)}
    k = 1
    while cur:
        cur = _delta_apply(cur)
        cur = {s: {m: c / k for m, c in vec.items()} for s, vec in cur.items()}
        for s, vec in cur.items():
            out[s] = state_add(out.get(s, {}), vec)
        k += 1
    return {s: vec for s, vec in out.items() if vec}


def twisted_vertex_series(a: dict, v: dict, dmax) -> Series:
    """Y_M(a, z) v on the order-two twisted Fock space, exact on degrees <= dmax."""
    total: Series = {}
    for s, vec in exp_delta(a).items():
        for mon, c in vec.items():
            derivs = tuple(int(p) - 1 for p in mon)
            part = normal_ordered_series(derivs, v, True, dmax)
            _series_add_into(
                total, {e - s: {m: c * x for m, x in vec2.items()} for e, vec2 in part.items()}
            )
    return total
