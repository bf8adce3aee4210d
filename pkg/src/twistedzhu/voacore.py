"""Graded vertex-algebra and twisted-module data with exact mode tables.

A :class:`VOAData` or :class:`TwistedModuleData` is a graded basis plus a
sparse mode table a_(n)b within a weight window.  Built-in data (trivial
algebra, rank-one free boson, its order-two twisted Fock space) is backed
by the exact engines in :mod:`twistedzhu.fock`; user data comes from JSON
mode files and is revalidated at load.

Conventions: module elements are graded by degree n in (1/T)N; the weight
is h + n with h the conformal weight, stored once per module.  Mode indices
of a twisted module lie in r/T + Z where r is the twist residue of the
acting element; requesting an index off this lattice yields zero, while an
index whose output would exceed the window raises ``InsufficientTable``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm

from . import fock
from .errors import (
    AxiomViolation,
    InsufficientTable,
    NonhomogeneousWeight,
    SchemaError,
)
from .indexcalc import lam, split
from .linal import SubspaceBasisBase, cadd, nullspace, rref, vadd, vscale, vzero
from .scalars import Cyclo, F, gen_binomial, power_branch, rat, rat_str

Vec = dict  # label -> scalar


@dataclass(frozen=True)
class Window:
    """Weight cutoffs: vmax for the algebra side, mmax for the module side."""

    vmax: Fraction
    mmax: Fraction

    @staticmethod
    def of(w, m=None) -> "Window":
        if isinstance(w, Window):
            return w
        return Window(F(w), F(w if m is None else m))


@dataclass(frozen=True)
class BasisVector:
    label: str
    deg: Fraction
    j1: int | None = None
    j2: int | None = None


class GradedBasis:
    """Ordered list of labeled graded basis vectors (weight-major order)."""

    def __init__(self, vectors):
        self.vectors = sorted(vectors, key=lambda b: (b.deg, b.label))
        self.by_label = {b.label: b for b in self.vectors}
        assert len(self.by_label) == len(self.vectors), "duplicate labels"
        for b in self.vectors:
            assert b.deg >= 0, f"negative degree on {b.label}"

    def labels(self, max_deg=None):
        return [b.label for b in self.vectors if max_deg is None or b.deg <= max_deg]

    def deg(self, label) -> Fraction:
        return self.by_label[label].deg

    def max_deg(self) -> Fraction:
        return max(b.deg for b in self.vectors)

    def dims(self) -> dict:
        out = {}
        for b in self.vectors:
            out[b.deg] = out.get(b.deg, 0) + 1
        return out

    def __contains__(self, label):
        return label in self.by_label

    def __len__(self):
        return len(self.vectors)


class _ModeCarrier:
    """Shared mode-table plumbing for algebras and modules."""

    def __init__(self):
        self.modes = {}
        self._series_cache = {}

    def _lookup(self, key, out_deg, window):
        if key in self.modes:
            return self.modes[key]
        if out_deg > window:
            raise InsufficientTable([key])
        return {}

    def vec_deg_components(self, vec: Vec):
        """Split a vector into homogeneous components by degree."""
        out = {}
        for lab, c in vec.items():
            d = self.basis.deg(lab)
            out.setdefault(d, {})[lab] = c
        return out


class VOAData(_ModeCarrier):
    """A vertex operator algebra presented by a graded basis and mode table."""

    kind = "voa"

    def __init__(
        self, name, basis, vacuum, omega_vec, central_charge=F(0), T=1, auts=None, complete=False
    ):
        super().__init__()
        self.name = name
        self.basis = basis
        self.vacuum = vacuum
        self.omega_vec = dict(omega_vec)
        self.central_charge = central_charge
        self.T = T
        self.auts = auts or {"id": (1, {lab: 0 for lab in basis.labels()})}
        self._engine = None
        self.complete = complete  # True when the basis spans the whole algebra
        assert vacuum in basis

    def wt(self, label) -> Fraction:
        return self.basis.deg(label)

    def residue(self, aut: str, label: str, T: int) -> int:
        """Eigendata residue of a basis element under aut, at common order T."""
        order, table = self.auts[aut]
        assert T % order == 0, f"order of {aut} does not divide T={T}"
        return table[label] * (T // order)

    def mode(self, a: str, n, b: str) -> Vec:
        """a_(n) b; zero off the integer lattice, InsufficientTable beyond window."""
        n = F(n)
        if n.denominator != 1:
            return {}
        out_deg = self.basis.deg(b) + self.wt(a) - n - 1
        if out_deg < 0:
            return {}
        window = self.basis.max_deg()
        if out_deg > window:
            if self.complete:
                return {}
            raise InsufficientTable([(a, n, b)])
        if self._engine is not None:
            return self._engine(self, a, n, b)
        return self._lookup((a, n, b), out_deg, window)

    def mode_vec(self, a_vec: Vec, n, b_vec: Vec) -> Vec:
        out = {}
        for a, ca in a_vec.items():
            for b, cb in b_vec.items():
                out = vadd(out, vscale(ca * cb, self.mode(a, n, b)))
        return out


class TwistedModuleData(_ModeCarrier):
    """A twisted module presented by a graded basis and a sparse mode table."""

    kind = "module"

    def __init__(self, name, basis, voa, twist, T, h=None):
        super().__init__()
        self.name = name
        self.basis = basis
        self.voa = voa
        self.twist = twist  # automorphism name on the VOA side
        self.T = T
        self.h = h
        self._engine = None

    def wt(self, label) -> Fraction:
        return self.h + self.basis.deg(label)

    def twist_residue(self, a_label: str) -> int:
        return self.voa.residue(self.twist, a_label, self.T)

    def mode(self, a: str, n, v: str) -> Vec:
        """a_(n) v; zero off the r/T + Z lattice, InsufficientTable beyond window."""
        n = F(n)
        if (n * self.T).denominator != 1:
            return {}
        r = self.twist_residue(a)
        if split(n - F(r, self.T), self.T)[1] != 0:
            return {}
        out_deg = self.basis.deg(v) + self.voa.wt(a) - n - 1
        if out_deg < 0:
            return {}
        window = self.basis.max_deg()
        if out_deg > window:
            raise InsufficientTable([(a, n, v)])
        if self._engine is not None:
            return self._engine(self, a, n, v)
        return self._lookup((a, n, v), out_deg, window)

    def mode_vec(self, a_vec: Vec, n, v_vec: Vec) -> Vec:
        out = {}
        for a, ca in a_vec.items():
            for v, cv in v_vec.items():
                out = vadd(out, vscale(ca * cv, self.mode(a, n, v)))
        return out


def carrier_mode(data, a, n, v):
    """Uniform mode access for VOAData (module over itself) and modules."""
    return data.mode(a, n, v)


# --- built-in data -----------------------------------------------------------

_W_LABEL = "w"
_M11 = (F(1), F(1))


def _mon_label(mon) -> str:
    if not mon:
        return "1"
    if mon == _M11:
        return _W_LABEL
    return "".join(
        f"h[-{p.numerator}]" if p.denominator == 1 else f"h[-{p.numerator}/{p.denominator}]"
        for p in mon
    )


def _label_mon(label: str):
    if label == "1":
        return ()
    if label == _W_LABEL:
        return _M11
    parts = []
    for chunk in label.split("]")[:-1]:
        parts.append(-F(chunk.split("[")[1]))
    return tuple(sorted(parts, reverse=True))


def _to_engine(vec: Vec) -> dict:
    out = {}
    for lab, c in vec.items():
        mon = _label_mon(lab)
        scale = F(1, 2) if lab == _W_LABEL else F(1)
        cur = out.get(mon, 0) + c * scale
        if cur:
            out[mon] = cur
        else:
            out.pop(mon, None)
    return out


def _from_engine(state: dict) -> Vec:
    out = {}
    for mon, c in state.items():
        if mon == _M11:
            out[_W_LABEL] = c * 2
        else:
            out[_mon_label(mon)] = c
    return {k: v for k, v in out.items() if v}


def _heisenberg_engine(V: VOAData, a, n, b):
    # exact for output degrees up to the cached depth; extended on demand
    key = (a, b)
    out_deg = V.basis.deg(b) + V.basis.deg(a) - n - 1
    cached = V._series_cache.get(key)
    if cached is None or cached[0] < out_deg:
        dmax = max(out_deg, cached[0] if cached else F(-1))
        series = fock.untwisted_vertex_series(_to_engine({a: F(1)}), _to_engine({b: F(1)}), dmax)
        cached = (dmax, {e: _from_engine(st) for e, st in series.items()})
        V._series_cache[key] = cached
    return cached[1].get(-n - 1, {})


def _theta_engine(M: TwistedModuleData, a, n, v):
    key = (a, v)
    out_deg = M.basis.deg(v) + M.voa.basis.deg(a) - n - 1
    cached = M._series_cache.get(key)
    if cached is None or cached[0] < out_deg:
        dmax = max(out_deg, cached[0] if cached else F(-1))
        series = fock.twisted_vertex_series(_to_engine({a: F(1)}), {_label_mon(v): F(1)}, dmax)
        cached = (dmax, {e: {_mon_label(m): c for m, c in st.items()} for e, st in series.items()})
        M._series_cache[key] = cached
    return cached[1].get(-n - 1, {})


def builtin(name: str, window, voa: VOAData | None = None):
    """Built-in data: 'trivial', 'heisenberg' or 'heisenberg_theta_twisted'."""
    W = Window.of(window)
    if name == "trivial":
        basis = GradedBasis([BasisVector("1", F(0))])
        V = VOAData("trivial", basis, "1", {}, F(0), T=1, complete=True)
        V.modes[("1", F(-1), "1")] = {"1": F(1)}
        return V
    if name == "heisenberg":
        mons = fock.partitions(W.vmax, half=False)
        basis = GradedBasis([BasisVector(_mon_label(m), fock.mon_deg(m)) for m in mons])
        parity = {_mon_label(m): len(m) % 2 for m in mons}
        V = VOAData(
            "heisenberg",
            basis,
            "1",
            {_W_LABEL: F(1)},
            F(1),
            T=1,
            auts={
                "id": (1, {lab: 0 for lab in basis.labels()}),
                "theta": (2, parity),
            },
        )
        V._engine = _heisenberg_engine
        return V
    if name == "heisenberg_theta_twisted":
        if voa is None:
            voa = builtin("heisenberg", W)
        mons = fock.partitions(W.mmax, half=True)
        basis = GradedBasis([BasisVector(_mon_label(m), fock.mon_deg(m)) for m in mons])
        M = TwistedModuleData("heisenberg_theta_twisted", basis, voa, "theta", T=2)
        M._engine = _theta_engine
        # the conformal weight is read off the table, not assumed
        M.h = F(0)
        l0 = M.mode(_W_LABEL, F(1), "1")
        M.h = l0.get("1", F(0))
        M._series_cache.clear()
        return M
    raise ValueError(f"unknown builtin {name!r}")


# --- serialization -----------------------------------------------------------


def _scalar_to_json(c):
    if isinstance(c, Cyclo):
        return c.to_json()
    return rat_str(c)


def _scalar_from_json(c):
    if isinstance(c, dict):
        return Cyclo(int(c["N"]), [rat(x) for x in c["coeffs"]])
    return rat(c)


def export_modefile(data, window=None) -> dict:
    """Serialize data (with every nonzero mode inside the window) to a document."""
    W = data.basis.max_deg() if window is None else F(window)
    if data.kind == "voa":
        T_out = 1
        for order, _ in data.auts.values():
            T_out = lcm(T_out, order)
    else:
        T_out = data.T
    doc = {
        "T": T_out,
        "kind": data.kind,
        "h": rat_str(data.h) if data.kind == "module" else None,
        "basis": [],
        "modes": [],
        "vacuum": getattr(data, "vacuum", None),
        "omega": None,
    }
    if data.kind == "voa":
        om = data.omega_vec
        if len(om) == 1 and next(iter(om.values())) == 1:
            doc["omega"] = next(iter(om))
        elif om:
            doc["omega"] = [[lab, _scalar_to_json(c)] for lab, c in sorted(om.items())]
        doc["j_slots"] = sorted(data.auts)
    else:
        # the twist automorphism maps to the matching j-slot of the host export
        slots = sorted(data.voa.auts)
        doc["twist"] = f"j{slots.index(data.twist) + 1}" if data.twist in slots else data.twist
    for b in data.basis.vectors:
        if b.deg > W:
            continue
        entry = {"label": b.label, "deg": rat_str(b.deg)}
        if data.kind == "voa":
            for i, aut in enumerate(sorted(data.auts), start=1):
                entry[f"j{i}"] = data.residue(aut, b.label, T_out)
        else:
            entry["j1"] = int((b.deg * data.T) % data.T)
            entry["j2"] = 0
        doc["basis"].append(entry)
    labels = [b.label for b in data.basis.vectors if b.deg <= W]
    step = F(1, data.T)
    src = data.voa if data.kind == "module" else data
    acting = src.basis.labels(W) if data.kind == "module" else labels
    for a in acting:
        for v in labels:
            # walk the lattice of indices with output degree inside [0, W]
            n = src.wt(a) + data.basis.deg(v) - 1 - W
            hi = src.wt(a) + data.basis.deg(v) - 1
            while n <= hi:
                try:
                    out = data.mode(a, n, v)
                except InsufficientTable:
                    out = {}
                if out:
                    doc["modes"].append(
                        {
                            "a": a,
                            "n": rat_str(n),
                            "b": v,
                            "out": [[lab, _scalar_to_json(c)] for lab, c in sorted(out.items())],
                        }
                    )
                n += step
    return doc


def load_modefile(doc, voa: VOAData | None = None):
    """Parse and fully revalidate a mode-file document.

    Module documents need the host algebra passed as ``voa``; the grading
    rule is checked on every table entry and violations name the entry.
    """
    if isinstance(doc, str):
        doc = json.loads(doc)
    for key in ("T", "kind", "basis", "modes"):
        if key not in doc:
            raise SchemaError(f"missing field {key!r}")
    T = int(doc["T"])
    kind = doc["kind"]
    if kind not in ("voa", "module"):
        raise SchemaError(f"bad kind {doc['kind']!r}")
    if not doc["basis"]:
        raise SchemaError("empty basis")
    vectors = []
    for entry in doc["basis"]:
        try:
            vectors.append(
                BasisVector(
                    entry["label"],
                    rat(entry["deg"]),
                    int(entry.get("j1", 0)),
                    int(entry.get("j2", 0)),
                )
            )
        except (KeyError, ValueError) as exc:
            raise SchemaError(f"bad basis entry {entry!r}: {exc}")
    basis = GradedBasis(vectors)
    for b in basis.vectors:
        if (b.deg * T).denominator != 1:
            raise SchemaError(f"degree {b.deg} of {b.label} not in (1/{T})N")

    if kind == "voa":
        if doc.get("vacuum") not in basis:
            raise SchemaError("vacuum label missing from basis")
        om = doc.get("omega")
        if om is None:
            omega_vec = {}
        elif isinstance(om, str):
            if om not in basis:
                raise SchemaError("omega label missing from basis")
            omega_vec = {om: F(1)}
        else:
            omega_vec = {lab: _scalar_from_json(c) for lab, c in om}
        auts = {
            "j1": (T, {b.label: b.j1 % T for b in basis.vectors}),
            "j2": (T, {b.label: b.j2 % T for b in basis.vectors}),
        }
        data = VOAData(doc.get("name", "loaded"), basis, doc["vacuum"], omega_vec, T=T, auts=auts)
        src = data
    else:
        if voa is None:
            raise SchemaError("module documents need the host algebra (voa=...)")
        if doc.get("h") is None:
            raise SchemaError("module document lacks the conformal weight h")
        data = TwistedModuleData(
            doc.get("name", "loaded"), basis, voa, doc.get("twist", "j1"), T, rat(doc["h"])
        )
        src = voa

    for entry in doc["modes"]:
        try:
            a, n, b = entry["a"], rat(entry["n"]), entry["b"]
            out = {lab: _scalar_from_json(c) for lab, c in entry["out"]}
        except (KeyError, ValueError) as exc:
            raise SchemaError(f"bad mode entry {entry!r}: {exc}")
        if a not in src.basis or b not in basis:
            raise SchemaError(f"mode entry references unknown label: {entry['a']}, {entry['b']}")
        expected = basis.deg(b) + src.wt(a) - n - 1
        for lab, c in out.items():
            if lab not in basis:
                raise SchemaError(f"mode output references unknown label {lab!r}")
            if basis.deg(lab) != expected:
                raise AxiomViolation(
                    f"grading rule violated by ({a}, {n}, {b})", witness=(a, n, b, lab)
                )
        if kind == "module":
            r = data.twist_residue(a)
            if split(n - F(r, T), T)[1] != 0:
                raise AxiomViolation(
                    f"mode support violated by ({a}, {n}, {b})", witness=(a, n, b)
                )
        elif n.denominator != 1:
            raise AxiomViolation(f"nonintegral algebra mode ({a}, {n}, {b})", witness=(a, n, b))
        data.modes[(a, n, b)] = out
    # vacuum acts as the identity on the tabulated range
    vac = getattr(src, "vacuum", None)
    if vac is not None:
        for (a, n, b), out in data.modes.items():
            if a == vac and (n != -1 and out or n == -1 and out != {b: F(1)}):
                raise AxiomViolation(f"vacuum axiom violated at ({a}, {n}, {b})", witness=(a, n, b))
    return data


# --- operators ---------------------------------------------------------------


def vertex_series(data, a_vec: Vec, v_vec: Vec, window):
    """Y(a, z)v truncated to output degrees inside [0, window], as a FracSeries."""
    from .series import FracSeries

    W = F(window)
    terms = {}
    lo, hi = None, None
    for v, cv in v_vec.items():
        for a, ca in a_vec.items():
            wa, dv = _wt_of(data, a), data.basis.deg(v)
            elo, ehi = -dv - wa, W - dv - wa
            lo = elo if lo is None else max(lo, elo)
            hi = ehi if hi is None else min(hi, ehi)
            step = F(1, data.T)
            e = elo
            while e <= ehi:
                out = data.mode(a, -e - 1, v)
                if out:
                    terms[e] = cadd(terms.get(e), vscale(ca * cv, out))
                e += step
    terms = {e: c for e, c in terms.items() if (lo is None or e >= lo) and (hi is None or e <= hi)}
    return FracSeries(terms, lo, hi)


def _wt_of(data, a_label):
    src = data.voa if data.kind == "module" else data
    return src.wt(a_label)


def scale_L0(data, vec: Vec, base):
    """Apply base^{L0} degree-wise: multiplies each component by base^deg.

    base is a FracSeries with unit constant term (expanded binomially) or a
    scalar, in which case all degrees must be integers.
    """
    from .series import FracSeries

    by_deg = data.vec_deg_components(vec)
    if isinstance(base, FracSeries):
        total = None
        for d, comp in by_deg.items():
            s = _series_pow(base, d)
            piece = s.map_coeff(lambda c: vscale(c, comp))
            total = piece if total is None else total + piece
        return total if total is not None else FracSeries({}, base.lo, base.hi)
    out = {}
    for d, comp in by_deg.items():
        if d.denominator != 1:
            raise NonhomogeneousWeight(f"scalar base with fractional degree {d}")
        out = vadd(out, vscale(base ** int(d), comp))
    return out


def _series_pow(base, alpha):
    """base^alpha for a series with constant term 1, truncated to base's window."""
    from .series import FracSeries

    hi = base.hi
    assert base.coeff(0) == 1, "series power needs unit constant term"
    dev = FracSeries({e: c for e, c in base.terms.items() if e != 0}, base.lo, base.hi)
    out = FracSeries({F(0): F(1)}, 0, hi)
    power = FracSeries({F(0): F(1)}, 0, hi)
    j = 0
    while True:
        j += 1
        power = power.mul(dev)
        if power.is_zero() or j > hi:
            break
        out = out + power.scale(gen_binomial(alpha, j))
    return out


def l_mode(data, k: int, vec: Vec) -> Vec:
    """L_(k) = omega_(k+1) applied to a vector."""
    src = data.voa if data.kind == "module" else data
    out = {}
    for lab, c in vec.items():
        out = vadd(out, vscale(c, data.mode_vec(src.omega_vec, F(k + 1), {lab: F(1)})))
    return out


def exp_L1(data, vec: Vec) -> Vec:
    """e^{L_(1)} v, a finite sum since L_(1) lowers the degree."""
    out = dict(vec)
    cur = dict(vec)
    k = 1
    while cur:
        cur = l_mode(data, 1, cur)
        cur = vscale(F(1, k), cur)
        out = vadd(out, cur)
        k += 1
    return out


def phase_modulus(data) -> int:
    """Smallest even N such that e^{pi i wt} is a power of zeta_N for all weights."""
    den = data.T
    if getattr(data, "h", None):
        den = lcm(den, F(data.h).denominator)
    return 2 * den


def phi_map(data, vec: Vec, sign: str = "+") -> Vec:
    """phi_{+/-}(v) = e^{L_(1)} e^{+/- pi i L_(0)} v."""
    assert sign in ("+", "-")
    N = phase_modulus(data)
    h = getattr(data, "h", None) or F(0)
    phased = {}
    for d, comp in data.vec_deg_components(vec).items():
        wt = h + d
        ph = power_branch(wt if sign == "+" else -wt, N)
        q = ph.as_rational()
        phased = vadd(phased, vscale(q if q is not None else ph, comp))
    return exp_L1(data, phased)


def omega_space(M, n, window) -> SubspaceBasisBase:
    """Basis of Omega_n within the window: vectors killed by all modes of
    shifted weight beyond n, for acting elements inside the window."""
    W = Window.of(window)
    src = M.voa if M.kind == "module" else M
    labels = M.basis.labels(W.mmax)
    col = {v: i for i, v in enumerate(labels)}
    conditions = {}  # (a, x, out-label) -> dense row
    for a in src.basis.labels(W.vmax):
        r = M.twist_residue(a) if M.kind == "module" else 0
        bound = lam(F(n), r, M.T)
        for v in labels:
            dv = M.basis.deg(v)
            # conditions a_(wt a - 1 + x) v = 0 for x > bound, output degree >= 0
            x = bound + F(1, M.T)
            while x <= dv:
                out = M.mode(a, src.wt(a) - 1 + x, v)
                for lab, c in out.items():
                    row = conditions.setdefault((a, x, lab), [F(0)] * len(labels))
                    row[col[v]] = cadd(row[col[v]], c)
                x += F(1, M.T)
    mat = [conditions[k] for k in sorted(conditions)]
    if mat:
        kern = nullspace(mat, len(labels))
    else:
        kern = [[F(1) if i == j else F(0) for j in range(len(labels))] for i in range(len(labels))]
    red, pivots = rref(kern)
    return SubspaceBasisBase.from_dense(labels, red, pivots)


def o_component(handle, v_vec: Vec, n, m) -> dict:
    """Matrix of the weight (n-m) component of the shifted operator on Omega_m.

    Returns a map: label of Omega_m basis vector -> image vector in M3.
    """
    omega_m = handle.omega_basis(m)
    out = {}
    for i, row in enumerate(omega_m.vectors()):
        out[i] = handle.component_apply(v_vec, F(n) - F(m), row)
    return out


class ModuleMapHandle:
    """Intertwiner handle for the module map Y_M, type (M over (V, M)).

    The shifted operator coincides with Y_M itself (h1 + h2 - h3 = 0), so
    component operators are plain shifted modes.  Lower subspaces are
    computed with annihilation conditions from algebra elements of weight
    at most cond_wt and candidates of degree at most m + slack; for the
    built-in irreducibles this reproduces the direct sum of the lowest
    graded pieces, which the test suite pins.
    """

    def __init__(self, V: VOAData, M, cond_wt=4, slack=2):
        self.V = V
        self.M = M  # serves as both source and target
        self.M2 = M
        self.M3 = M
        self.cond_wt = F(cond_wt)
        self.slack = F(slack)
        self._omega_cache = {}

    def source_deg(self, label):  # degree of v in M1 = V
        return self.V.basis.deg(label)

    def omega_basis(self, m):
        key = F(m)
        if key not in self._omega_cache:
            W = Window(
                min(self.cond_wt, self.V.basis.max_deg()),
                min(key + self.slack, self.M.basis.max_deg()),
            )
            self._omega_cache[key] = omega_space(self.M, key, W)
        return self._omega_cache[key]

    def component_apply(self, v_vec: Vec, k, x_vec: Vec) -> Vec:
        """o_k(v) x = sum over homogeneous parts v_d of (v_d)_(d-1-k) x."""
        out = {}
        for d, comp in _group_by_deg(self.V, v_vec).items():
            out = vadd(out, self.M.mode_vec(comp, d - 1 - F(k), x_vec))
        return out


def _group_by_deg(data, vec: Vec):
    out = {}
    for lab, c in vec.items():
        out.setdefault(data.basis.deg(lab), {})[lab] = c
    return out


# --- axiom checks ------------------------------------------------------------


@dataclass
class AxiomReport:
    checks: list = field(default_factory=list)

    @property
    def passed(self):
        return all(ok for _, ok, _ in self.checks)

    def add(self, name, ok, witness=None):
        self.checks.append((name, ok, witness))

    def to_json(self):
        return [
            {"name": n, "passed": ok, "witness": repr(w) if w is not None else None}
            for n, ok, w in self.checks
        ]


def validate_module_axioms(V: VOAData, M, window, x_range=2, max_wt=None) -> AxiomReport:
    """Vacuum, grading, mode-support and truncated-associativity checks.

    Associativity is checked coefficientwise: for homogeneous a, b and v the
    (x, y) coefficient of either side of

        (z0+z2)^{wt a + q} Y(a, z0+z2) Y(b, z2) v
            = (z2+z0)^{wt a + q} Y(Y(a, z0)b, z2) v,

    with q the minimal pole order on v's degree, is a finite exact sum; the
    two are compared on a grid of (x, y).
    """
    rep = AxiomReport()
    W = Window.of(window)
    T = M.T if M.kind == "module" else 1
    src = V
    labels_v = [lab for lab in src.basis.labels(W.vmax) if max_wt is None or src.wt(lab) <= max_wt]
    mod_labels = M.basis.labels(W.mmax)

    # vacuum axiom
    ok = True
    witness = None
    for v in mod_labels:
        s = vertex_series(M, {src.vacuum: F(1)}, {v: F(1)}, W.mmax)
        if s.terms != {F(0): {v: F(1)}}:
            ok, witness = False, v
            break
    rep.add("vacuum", ok, witness)

    # grading + mode support on a full sweep
    ok = True
    witness = None
    for a in labels_v:
        r = M.twist_residue(a) if M.kind == "module" else 0
        for v in mod_labels:
            dv = M.basis.deg(v)
            lo = src.wt(a) + dv - 1 - W.mmax
            n = lo
            while n <= src.wt(a) + dv - 1:
                if (n * T).denominator == 1:
                    out = M.mode(a, n, v)
                    expected = dv + src.wt(a) - n - 1
                    if split(n - F(r, T), T)[1] != 0 and out:
                        ok, witness = False, ("support", a, n, v)
                    for lab in out:
                        if M.basis.deg(lab) != expected:
                            ok, witness = False, ("grading", a, n, v, lab)
                n += F(1, T)
    rep.add("grading-and-support", ok, witness)

    # associativity
    ok = True
    witness = None
    for a in labels_v:
        for b in labels_v:
            for v in mod_labels:
                bad = _assoc_witness(src, M, a, b, v, x_range)
                if bad is not None:
                    ok, witness = False, bad
                    break
            if not ok:
                break
        if not ok:
            break
    rep.add("associativity", ok, witness)
    if not rep.passed:
        raise AxiomViolation("module axioms failed", witness=rep.checks)
    return rep


def _assoc_witness(V, M, a, b, v, x_range):
    T = M.T if M.kind == "module" else 1
    ra = M.twist_residue(a) if M.kind == "module" else 0
    rb = M.twist_residue(b) if M.kind == "module" else 0
    wa, wb = V.wt(a), V.wt(b)
    dv = M.basis.deg(v)
    q = lam(dv, ra, T)
    cap = M.basis.max_deg()
    xs = [F(x) for x in range(-x_range, x_range + 1)]
    ys = []
    y = -F(rb, T) - x_range
    while y <= -F(rb, T) + x_range:
        ys.append(y)
        y += 1
    for x in xs:
        for y in ys:
            tot = wa + wb + dv - 2 - x - y
            if tot < 0 or tot > cap:
                continue
            lhs = {}
            # l runs over the a-mode lattice; j = wt a + q - l - 1 - x must be in N
            l = wa + q - 1 - x
            while True:
                k = wa + q - l - x - y - 2
                if k > wb + dv - 1:
                    break
                j = wa + q - l - 1 - x
                if j.denominator == 1:
                    inner = M.mode_vec({b: F(1)}, k, {v: F(1)})
                    if inner:
                        coeff = gen_binomial(wa + q - l - 1, int(j))
                        if coeff:
                            lhs = vadd(lhs, vscale(coeff, M.mode_vec({a: F(1)}, l, inner)))
                l -= 1
            rhs = {}
            for i in range(0, int(wa + wb + max(0, x) + abs(q) + 3)):
                s = i - x - 1
                u = wa + q - i - y - 1
                if s > wa + wb - 1:
                    break
                coeff = gen_binomial(wa + q, i)
                if not coeff or s.denominator != 1:
                    continue
                inner = V.mode(a, s, b)
                if inner:
                    rhs = vadd(rhs, vscale(coeff, M.mode_vec(inner, u, {v: F(1)})))
            if not vzero(vadd(lhs, vscale(-1, rhs))):
                return (a, b, v, x, y, lhs, rhs)
    return None


def check_conjugation_L1(data, a: str, v: str, window) -> AxiomReport:
    """Both conjugation identities, coefficientwise inside the window.

    e^{L_1} Y(a,z) e^{-L_1} = Y(e^{(1-z)L_1}(1-z)^{-2L_0} a, z/(1-z)) and
    e^{pi i L_0} Y(a,z) e^{-pi i L_0} = Y((-1)^{L_0} a, -z) under the fixed
    branch.
    """
    from .series import FracSeries, binom_expand

    rep = AxiomReport()
    W = F(window)
    src = data.voa if data.kind == "module" else data
    N = phase_modulus(data)
    h = getattr(data, "h", None) or F(0)

    # identity 1: e^{L1} conjugation
    jmax = int(W) + 2
    ev = _exp_l1_signed(data, {v: F(1)}, -1)
    raw = vertex_series(data, {a: F(1)}, ev, W)
    lhs = raw.map_coeff(lambda c: _exp_l1_signed(data, c, +1))
    rhs = FracSeries({}, raw.lo, raw.hi)
    corrected = _corrected_state(src, a, jmax)
    for e0, avec in corrected.terms.items():
        inner = vertex_series(data, avec, {v: F(1)}, W)
        for e1, cvec in inner.terms.items():
            # w^{-l-1} with w = z/(1-z): z^{-l-1} (1-z)^{l+1}
            l = -e1 - 1
            expand = _one_minus_z_pow(l + 1, jmax)
            for e2, c2 in expand.terms.items():
                e = e0 + e1 + e2
                if rhs._inside(e):
                    rhs.terms[e] = cadd(rhs.terms.get(e), vscale(c2, cvec))
    ok = lhs == rhs
    rep.add("exp-L1-conjugation", ok, None if ok else (a, v))

    # identity 2: e^{pi i L0} conjugation
    wa = src.wt(a)
    lhs2 = {}
    rhs2 = {}
    base = vertex_series(data, {a: F(1)}, {v: F(1)}, W)
    for e, cvec in base.terms.items():
        for d, comp in _group_by_deg(data, cvec).items():
            ph = power_branch((h + d) - (h + data.basis.deg(v)), N)
            lhs2[e] = cadd(lhs2.get(e), vscale(ph, comp))
        ph2 = power_branch(wa + e, N)  # (-1)^{wt a} z^e -> (-1)^{wt a}(-1)^e z^e
        rhs2[e] = cadd(rhs2.get(e), vscale(ph2, cvec))
    ok2 = FracSeries(lhs2, base.lo, base.hi) == FracSeries(rhs2, base.lo, base.hi)
    rep.add("L0-phase-conjugation", ok2, None if ok2 else (a, v))
    if not rep.passed:
        raise AxiomViolation("conjugation identities failed", witness=rep.checks)
    return rep


def _exp_l1_signed(data, vec: Vec, sgn: int) -> Vec:
    out = dict(vec)
    cur = dict(vec)
    k = 1
    while cur:
        cur = vscale(F(sgn, k), l_mode(data, 1, cur))
        out = vadd(out, cur)
        k += 1
    return out


def _corrected_state(V, a: str, jmax: int):
    """e^{(1-z)L_1}(1-z)^{-2L_0} a as a series with V-vector coefficients."""
    from .series import FracSeries

    state = FracSeries({F(0): {a: F(1)}}, 0, jmax)
    # (1-z)^{-2L0}: per homogeneous component
    out_terms = {}
    for e, vec in state.terms.items():
        for d, comp in _group_by_deg(V, vec).items():
            pw = _one_minus_z_pow(-2 * d, jmax)
            for e2, c2 in pw.terms.items():
                out_terms[e + e2] = cadd(out_terms.get(e + e2), vscale(c2, comp))
    cur = FracSeries(out_terms, 0, jmax)
    # e^{(1-z)L_1} = sum_j (1-z)^j L_1^j / j!
    total = cur
    powj = cur
    j = 1
    while True:
        lifted = powj.map_coeff(lambda c: vscale(F(1, j), l_mode(V, 1, c)))
        if all(not c for c in lifted.terms.values()):
            break
        pw = _one_minus_z_pow(1, jmax)
        powj = lifted.mul(pw)
        total = total + powj
        j += 1
    return total


def _one_minus_z_pow(alpha, jmax: int):
    from .series import FracSeries

    return FracSeries(
        {F(j): gen_binomial(F(alpha), j) * (-1) ** j for j in range(jmax + 1)}, 0, jmax
    )
