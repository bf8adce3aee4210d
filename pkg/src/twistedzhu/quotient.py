"""Exact quotient linear algebra: level-n algebras, bimodules, induction,
tensor construction and the fusion-rule upper bound.

The defining quotient space of a bimodule is an intersection of component
kernels over all intertwiners, which is not enumerable; the workbench
sandwiches it between a constructive generator span (inner approximation:
quotient dims are upper bounds) and a kernel intersection over concrete
intertwiners (outer approximation).  Every presentation carries both ranks
and a stabilization flag, never a claim of exactness.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import InsufficientTable, NonDiagonalizable, NotAModule
from .indexcalc import lam, split
from .linal import (
    SubspaceBasisBase,
    cadd,
    dense_to_vec,
    nullspace,
    rref,
    vadd,
    vec_to_dense,
    vscale,
    vzero,
)
from .scalars import F, gen_binomial, power_branch
from .voacore import ModuleMapHandle, VOAData, Vec, Window, omega_space
from .zhuprod import (
    ProductParams,
    Quadruple,
    barstar,
    circ_bimod,
    circ_g_n,
    l_element,
    star_g_n,
    understar,
)

SubspaceBasis = SubspaceBasisBase


def row_reduce(vectors: list[Vec], ambient: list[str]) -> SubspaceBasis:
    """Row-reduced span of the vectors inside the ordered ambient basis."""
    return SubspaceBasis.from_vectors(vectors, ambient)


def quotient_ambient(data, W) -> list[str]:
    """Ambient order used for quotient presentations: weight-descending, so
    that row reduction eats high-weight labels and coset representatives
    come out at the bottom of the window."""
    return sorted(data.basis.labels(F(W)), key=lambda lab: (-data.basis.deg(lab), lab))


class QuotientPresentation:
    """Coset representatives and projection for ambient / subspace.

    With the weight-descending ambient, an echelon row whose pivot label
    lies at weight <= report_window is supported entirely below that
    cutoff, so restricting the representatives to the cutoff gives the
    quotient of the sub-window by the intersected subspace.  Classes whose
    canonical representative still involves labels above the cutoff are
    window artifacts; projecting onto them raises ``InsufficientTable``.
    """

    def __init__(self, ambient: list[str], sub: SubspaceBasis, deg=None, report_window=None):
        self.ambient = list(ambient)
        self.sub = sub
        self.report_window = None if report_window is None else F(report_window)
        self._deg = deg
        free = sub.free_labels()
        if self.report_window is None or deg is None:
            self.reps = free
        else:
            self.reps = [lab for lab in free if deg(lab) <= self.report_window]

    @property
    def dim(self) -> int:
        return len(self.reps)

    def project(self, vec: Vec) -> Vec:
        """Quotient coordinates of vec (supported on the representative labels)."""
        for lab in vec:
            assert lab in self.sub.ambient or vzero({lab: vec[lab]}), (
                f"vector leaves the ambient window at {lab!r}"
            )
        out = self.sub.reduce(vec)
        if self.report_window is not None:
            stray = [lab for lab in out if lab not in set(self.reps)]
            if stray:
                raise InsufficientTable([("unresolved class", lab) for lab in stray])
        return out

    def fits(self, vec: Vec) -> bool:
        return all(lab in self.sub.ambient for lab in vec)


# --- constructive spans -------------------------------------------------------


def span_O_zhu(V: VOAData, g: str, n, window, gen_window=None) -> SubspaceBasis:
    """Span of the level-n quotient generators with support inside the window."""
    n = F(n)
    W = F(window)
    G = F(gen_window if gen_window is not None else window)
    ambient = quotient_ambient(V, W)
    gens = []
    for a in V.basis.labels(G):
        for b in V.basis.labels(G - V.wt(a)):
            try:
                vec = circ_g_n(V, {a: F(1)}, {b: F(1)}, g, n)
            except InsufficientTable:
                continue
            if all(lab in V.basis.by_label and V.basis.deg(lab) <= W for lab in vec):
                gens.append(vec)
    for a in V.basis.labels(W - 1):
        vec = l_element(V, {a: F(1)}, n, n)
        if all(V.basis.deg(lab) <= W for lab in vec):
            gens.append(vec)
    return row_reduce(gens, ambient)


def span_O_bimod(M1, Q: Quadruple, n, m, window, gen_window=None, kmax: int = 2) -> SubspaceBasis:
    """Constructive span of the bimodule quotient generators (inner approximation).

    Generators: the circle family over homogeneous pairs inside the
    generator window, its (k, s) enlargements with k <= kmax, and, when the
    module is the algebra itself, the translation-generator combinations.
    """
    n, m = F(n), F(m)
    W = F(window)
    G = F(gen_window if gen_window is not None else window)
    ambient = quotient_ambient(M1, W)
    gens = []
    pairs = [(k, s) for k in range(kmax + 1) for s in range(k + 1)]
    for a in Q.V.basis.labels(G):
        wa = Q.V.wt(a)
        for v in M1.basis.labels(G - wa):
            for k, s in pairs:
                try:
                    vec = circ_bimod({a: F(1)}, {v: F(1)}, Q, n, m, k, s)
                except InsufficientTable:
                    continue
                if all(M1.basis.deg(lab) <= W for lab in vec):
                    gens.append(vec)
    if M1.kind == "voa":
        for v in M1.basis.labels(W - 1):
            vec = l_element(M1, {v: F(1)}, n, m)
            if all(M1.basis.deg(lab) <= W for lab in vec):
                gens.append(vec)
    if M1.kind == "voa" and Q.g2 == Q.g3 and Q.V.auts[Q.g1][0] == 1:
        # Over the algebra itself with equal twists, every element of the
        # defining intertwiner family is a multiple of a module map, whose
        # component at weight n - m vanishes on eigencomponents off the
        # matching residue class; those components belong to the quotient
        # space and are added as generators.
        tn = split(n, Q.T)[1]
        tm = split(m, Q.T)[1]
        for v in ambient:
            r_v = Q.V.residue(Q.g2, v, Q.T)
            if (r_v + tn - tm) % Q.T != 0:
                gens.append({v: F(1)})
    return row_reduce(gens, ambient)


def kernel_intersection(handles, n, m, window) -> SubspaceBasis:
    """Exact intersection of component-operator kernels over the handles.

    With an empty handle list this is the whole window (the empty
    intersection convention); with a strict subset of all intertwiners it is
    an outer approximation of the defining quotient space.
    """
    n, m = F(n), F(m)
    W = Window.of(window)
    first = handles[0].V if handles else None
    M1 = getattr(handles[0], "M1", None) if handles else None
    src = M1 if M1 is not None else first
    if handles:
        ambient = src.basis.labels(W.vmax)
    else:
        raise ValueError("kernel_intersection needs the ambient via at least one handle")
    col = {v: i for i, v in enumerate(ambient)}
    rows = {}
    for hi, handle in enumerate(handles):
        omega_m = handle.omega_basis(m)
        for xi, x_vec in enumerate(omega_m.vectors()):
            for v in ambient:
                img = handle.component_apply({v: F(1)}, n - m, x_vec)
                for lab, c in img.items():
                    key = (hi, xi, lab)
                    row = rows.setdefault(key, [F(0)] * len(ambient))
                    row[col[v]] = cadd(row[col[v]], c)
    mat = [rows[k] for k in sorted(rows, key=repr)]
    kern = nullspace(mat, len(ambient)) if mat else [
        [F(1) if i == j else F(0) for j in range(len(ambient))] for i in range(len(ambient))
    ]
    red, piv = rref(kern)
    return SubspaceBasis.from_dense(ambient, red, piv)


# --- level-n algebras ----------------------------------------------------------


@dataclass
class AlgebraSC:
    """Structure constants of a level-n algebra on a quotient presentation."""

    V: VOAData
    g: str
    n: Fraction
    pres: QuotientPresentation
    sc: dict = field(default_factory=dict)  # (i, j) -> coords Vec or None
    unit: Vec = None
    omega_coords: Vec = None
    checks: list = field(default_factory=list)

    @property
    def dim(self):
        return self.pres.dim

    @property
    def reps(self):
        return self.pres.reps

    def entry(self, i, j):
        return self.sc.get((i, j))

    def product_coords(self, x: Vec, y: Vec) -> Vec | None:
        """Product of two quotient coordinate vectors, when tabulated."""
        out: Vec = {}
        for i, a in enumerate(self.reps):
            ca = x.get(a)
            if not ca:
                continue
            for j, b in enumerate(self.reps):
                cb = y.get(b)
                if not cb:
                    continue
                e = self.sc.get((i, j))
                if e is None:
                    return None
                out = vadd(out, vscale(ca * cb, e))
        return out

    def to_json(self):
        return {
            "g": self.g,
            "n": str(self.n),
            "dim": self.dim,
            "reps": self.reps,
            "unit": {k: str(v) for k, v in (self.unit or {}).items()},
            "omega": {k: str(v) for k, v in (self.omega_coords or {}).items()},
            "checks": self.checks,
        }


def zhu_algebra(V: VOAData, g: str, n, window, gen_window=None, report_window=None) -> AlgebraSC:
    """Quotient presentation of the level-n algebra with structure constants.

    Products whose support leaves the window are left untabulated (None);
    associativity, unit and center checks run over the tabulated part.
    """
    n = F(n)
    span = span_O_zhu(V, g, n, window, gen_window)
    pres = QuotientPresentation(span.ambient, span, V.basis.deg, report_window)
    alg = AlgebraSC(V, g, n, pres)
    alg.unit = pres.project({V.vacuum: F(1)})
    if all(lab in span.ambient for lab in V.omega_vec):
        try:
            alg.omega_coords = pres.project(V.omega_vec)
        except InsufficientTable:
            alg.omega_coords = None
    reps = pres.reps
    for i, a in enumerate(reps):
        for j, b in enumerate(reps):
            try:
                prod = star_g_n(V, {a: F(1)}, {b: F(1)}, g, n)
                alg.sc[(i, j)] = pres.project(prod) if pres.fits(prod) else None
            except InsufficientTable:
                alg.sc[(i, j)] = None
    _algebra_checks(alg)
    return alg


def _algebra_checks(alg: AlgebraSC):
    reps = alg.reps
    unit_idx = [i for i, r in enumerate(reps) if alg.unit.get(r)]
    ok_unit = True
    for j, b in enumerate(reps):
        left = alg.product_coords(alg.unit, {b: F(1)})
        right = alg.product_coords({b: F(1)}, alg.unit)
        if left is not None and left != {b: F(1)}:
            ok_unit = False
        if right is not None and right != {b: F(1)}:
            ok_unit = False
    alg.checks.append(("unit", ok_unit))
    ok_assoc = True
    skipped = 0
    for i in range(len(reps)):
        for j in range(len(reps)):
            for k in range(len(reps)):
                ab = alg.sc.get((i, j))
                bc = alg.sc.get((j, k))
                if ab is None or bc is None:
                    skipped += 1
                    continue
                lhs = alg.product_coords(ab, {reps[k]: F(1)})
                rhs = alg.product_coords({reps[i]: F(1)}, bc)
                if lhs is None or rhs is None:
                    skipped += 1
                    continue
                if lhs != rhs:
                    ok_assoc = False
    alg.checks.append(("associativity", ok_assoc, f"skipped {skipped} out-of-window triples"))
    if alg.omega_coords is not None:
        ok_center = True
        for j, b in enumerate(reps):
            left = alg.product_coords(alg.omega_coords, {b: F(1)})
            right = alg.product_coords({b: F(1)}, alg.omega_coords)
            if left is not None and right is not None and left != right:
                ok_center = False
        alg.checks.append(("omega-central", ok_center))


# --- bimodules -----------------------------------------------------------------


@dataclass
class BimoduleSC:
    """Quotient presentation of the level-(n, m) bimodule with both actions."""

    M1: object
    Q: Quadruple
    n: Fraction
    m: Fraction
    pres: QuotientPresentation
    left_alg: AlgebraSC
    right_alg: AlgebraSC
    left_sc: dict = field(default_factory=dict)  # (i_alg, j_rep) -> coords or None
    right_sc: dict = field(default_factory=dict)
    sandwich: tuple = (None, None)  # (span rank, kernel-intersection rank)
    stabilization: bool | None = None
    checks: list = field(default_factory=list)

    @property
    def dim(self):
        return self.pres.dim

    @property
    def reps(self):
        return self.pres.reps

    def left_apply(self, a_coords: Vec, x_coords: Vec) -> Vec | None:
        out: Vec = {}
        for i, a in enumerate(self.left_alg.reps):
            ca = a_coords.get(a)
            if not ca:
                continue
            for j, x in enumerate(self.reps):
                cx = x_coords.get(x)
                if not cx:
                    continue
                e = self.left_sc.get((i, j))
                if e is None:
                    return None
                out = vadd(out, vscale(ca * cx, e))
        return out

    def right_apply(self, x_coords: Vec, b_coords: Vec) -> Vec | None:
        out: Vec = {}
        for j, x in enumerate(self.reps):
            cx = x_coords.get(x)
            if not cx:
                continue
            for i, b in enumerate(self.right_alg.reps):
                cb = b_coords.get(b)
                if not cb:
                    continue
                e = self.right_sc.get((j, i))
                if e is None:
                    return None
                out = vadd(out, vscale(cx * cb, e))
        return out

    def to_json(self):
        return {
            "n": str(self.n),
            "m": str(self.m),
            "dim": self.dim,
            "sandwich": {
                "span_rank": self.sandwich[0],
                "kernel_rank": self.sandwich[1],
            },
            "stabilization": self.stabilization,
            "checks": self.checks,
        }


def bimodule_present(
    M1,
    Q: Quadruple,
    n,
    m,
    window,
    gen_window=None,
    handles=None,
    left_alg: AlgebraSC | None = None,
    right_alg: AlgebraSC | None = None,
    check_axioms: bool = True,
    actions: bool = True,
    stabilize: bool = True,
    report_window=None,
) -> BimoduleSC:
    """Present the level-(n, m) bimodule by its constructive span.

    Reports the sandwich ranks when kernel handles are supplied, verifies
    the unit actions and the mixed associativity congruences on the
    quotient, and records a stabilization flag by growing the generator
    window by one.
    """
    n, m = F(n), F(m)
    W = F(window)
    G = F(gen_window if gen_window is not None else window)
    span = span_O_bimod(M1, Q, n, m, W, G)
    pres = QuotientPresentation(span.ambient, span, M1.basis.deg, report_window)
    if actions and left_alg is None:
        left_alg = zhu_algebra(Q.V, Q.g3, n, W, G)
    if actions and right_alg is None:
        right_alg = zhu_algebra(Q.V, Q.g2, m, W, G)
    kern_rank = None
    if handles:
        kern = kernel_intersection(handles, n, m, Window.of(W, M1.basis.max_deg()))
        kern_rank = kern.rank
    bim = BimoduleSC(M1, Q, n, m, pres, left_alg, right_alg)
    bim.sandwich = (span.rank, kern_rank)
    if stabilize:
        span_next = span_O_bimod(M1, Q, n, m, W, G + 1)
        bim.stabilization = span_next.rank == span.rank
    if not actions:
        return bim
    for i, a in enumerate(left_alg.reps):
        for j, x in enumerate(bim.reps):
            try:
                prod = barstar({a: F(1)}, {x: F(1)}, Q, ProductParams(n, m, n))
                bim.left_sc[(i, j)] = pres.project(prod) if pres.fits(prod) else None
            except InsufficientTable:
                bim.left_sc[(i, j)] = None
    for j, x in enumerate(bim.reps):
        for i, b in enumerate(right_alg.reps):
            try:
                prod = understar({x: F(1)}, {b: F(1)}, Q, ProductParams(n, m, m))
                bim.right_sc[(j, i)] = pres.project(prod) if pres.fits(prod) else None
            except InsufficientTable:
                bim.right_sc[(j, i)] = None
    if check_axioms:
        _bimodule_checks(bim)
    return bim


def _bimodule_checks(bim: BimoduleSC):
    la, ra = bim.left_alg, bim.right_alg
    ok = True
    for j, x in enumerate(bim.reps):
        lhs = bim.left_apply(la.unit, {x: F(1)})
        rhs = bim.right_apply({x: F(1)}, ra.unit)
        if lhs is not None and lhs != {x: F(1)}:
            ok = False
        if rhs is not None and rhs != {x: F(1)}:
            ok = False
    bim.checks.append(("unit-actions", ok))

    ok_left = True
    skipped = 0
    for i in range(la.dim):
        for k in range(la.dim):
            ab = la.sc.get((i, k))
            if ab is None:
                skipped += 1
                continue
            for j, x in enumerate(bim.reps):
                inner = bim.left_apply({la.reps[k]: F(1)}, {x: F(1)})
                lhs = bim.left_apply({la.reps[i]: F(1)}, inner) if inner is not None else None
                rhs = bim.left_apply(ab, {x: F(1)})
                if lhs is None or rhs is None:
                    skipped += 1
                    continue
                if lhs != rhs:
                    ok_left = False
    bim.checks.append(("left-representation", ok_left, f"skipped {skipped}"))

    ok_right = True
    skipped = 0
    for i in range(ra.dim):
        for k in range(ra.dim):
            bc = ra.sc.get((i, k))
            if bc is None:
                skipped += 1
                continue
            for j, x in enumerate(bim.reps):
                inner = bim.right_apply({bim.reps[j]: F(1)}, {ra.reps[i]: F(1)})
                lhs = bim.right_apply(inner, {ra.reps[k]: F(1)}) if inner is not None else None
                rhs = bim.right_apply({bim.reps[j]: F(1)}, bc)
                if lhs is None or rhs is None:
                    skipped += 1
                    continue
                if lhs != rhs:
                    ok_right = False
    bim.checks.append(("right-representation", ok_right, f"skipped {skipped}"))

    ok_comm = True
    skipped = 0
    for i in range(la.dim):
        for j, x in enumerate(bim.reps):
            for k in range(ra.dim):
                ax = bim.left_apply({la.reps[i]: F(1)}, {x: F(1)})
                xb = bim.right_apply({x: F(1)}, {ra.reps[k]: F(1)})
                lhs = bim.right_apply(ax, {ra.reps[k]: F(1)}) if ax is not None else None
                rhs = bim.left_apply({la.reps[i]: F(1)}, xb) if xb is not None else None
                if lhs is None or rhs is None:
                    skipped += 1
                    continue
                if lhs != rhs:
                    ok_comm = False
    bim.checks.append(("actions-commute", ok_comm, f"skipped {skipped}"))


# --- finite modules over a presented algebra -----------------------------------


class FiniteModule:
    """A finite-dimensional left module over an AlgebraSC, with validation."""

    def __init__(self, alg: AlgebraSC, dim: int, action: dict):
        # action: algebra rep label -> matrix rows (list of lists), acting on columns
        self.alg = alg
        self.dim = dim
        self.action = {lab: [list(r) for r in mat] for lab, mat in action.items()}
        self.validate()

    def act_label(self, a_label: str):
        return self.action[a_label]

    def act_coords(self, coords: Vec):
        mat = [[F(0)] * self.dim for _ in range(self.dim)]
        for lab, c in coords.items():
            m = self.action[lab]
            for i in range(self.dim):
                for j in range(self.dim):
                    if m[i][j]:
                        mat[i][j] += c * m[i][j]
        return mat

    def validate(self):
        alg = self.alg
        unit_mat = self.act_coords(alg.unit)
        for i in range(self.dim):
            for j in range(self.dim):
                want = F(1) if i == j else F(0)
                if unit_mat[i][j] != want:
                    raise NotAModule("unit does not act as the identity")
        for i, a in enumerate(alg.reps):
            for j, b in enumerate(alg.reps):
                e = alg.sc.get((i, j))
                if e is None:
                    continue
                lhs = _matmul(self.act_label(a), self.act_label(b))
                rhs = self.act_coords(e)
                if lhs != rhs:
                    raise NotAModule(f"relation fails on ({a}, {b})")

    def act_raw(self, b_label: str):
        """Action of an arbitrary algebra element through its class."""
        return self.act_coords(self.alg.pres.project({b_label: F(1)}))

    @staticmethod
    def one_dimensional(alg: AlgebraSC, values: dict) -> "FiniteModule":
        return FiniteModule(alg, 1, {lab: [[F(values.get(lab, 0))]] for lab in alg.reps})


class BottomModule(FiniteModule):
    """The degree-m piece of a twisted module, acting by true zero modes."""

    def __init__(self, alg: AlgebraSC, M, m):
        self.M = M
        self.m = F(m)
        self.labels = [b.label for b in M.basis.vectors if b.deg == self.m]
        self._idx = {lab: i for i, lab in enumerate(self.labels)}
        action = {a: self._raw(a) for a in alg.reps}
        super().__init__(alg, len(self.labels), action)

    def _raw(self, b_label: str):
        wa = self.M.voa.wt(b_label) if self.M.kind == "module" else self.M.wt(b_label)
        mat = [[F(0)] * self.dim0() for _ in range(self.dim0())]
        for j, lab in enumerate(self.labels):
            img = self.M.mode(b_label, wa - 1, lab)
            for out_lab, c in img.items():
                if self.M.basis.deg(out_lab) == self.m:
                    mat[self._idx[out_lab]][j] += c
        return mat

    def dim0(self):
        return len(self.labels)

    def act_raw(self, b_label: str):
        return self._raw(b_label)

    def check_consistency(self, wt_max=4):
        """The raw zero-mode action factors through the presented algebra."""
        src = self.M.voa if self.M.kind == "module" else self.M
        for b in src.basis.labels(F(wt_max)):
            try:
                via_class = super().act_raw(b)
            except InsufficientTable:
                continue
            if via_class != self._raw(b):
                raise NotAModule(f"bottom action of {b!r} does not factor through the algebra")


def _matmul(A, B):
    n, k, m = len(A), len(B), len(B[0])
    out = [[F(0)] * m for _ in range(n)]
    for i in range(n):
        for t in range(k):
            a = A[i][t]
            if a:
                for j in range(m):
                    if B[t][j]:
                        out[i][j] += a * B[t][j]
    return out


# --- induced module ------------------------------------------------------------


class InducedPiece:
    """One graded piece: bimodule quotient tensored with U over the right algebra."""

    def __init__(self, bim: BimoduleSC, U: FiniteModule, rel_window, M1, Q):
        self.bim = bim
        self.U = U
        deg = bim.M1.basis.deg
        reps = sorted(bim.reps, key=lambda x: (-deg(x), x))
        self.pairs = [(x, k) for x in reps for k in range(U.dim)]
        rel_vectors = []
        pres = bim.pres
        for x in bim.reps:
            for b in Q.V.basis.labels(F(rel_window)):
                try:
                    xb = understar({x: F(1)}, {b: F(1)}, Q, ProductParams(bim.n, bim.m, bim.m))
                    if not pres.fits(xb):
                        continue
                    xb_coords = pres.project(xb)
                    bu = U.act_raw(b)
                except InsufficientTable:
                    continue
                for k in range(U.dim):
                    rel = {}
                    for lab, c in xb_coords.items():
                        rel[(lab, k)] = rel.get((lab, k), F(0)) + c
                    for i in range(U.dim):
                        if bu[i][k]:
                            rel[(x, i)] = rel.get((x, i), F(0)) - bu[i][k]
                    rel = {kk: v for kk, v in rel.items() if v}
                    if rel:
                        rel_vectors.append(rel)
        self.sub = SubspaceBasis.from_vectors(rel_vectors, self.pairs)
        self.free = self.sub.free_labels()

    @property
    def dim(self):
        return len(self.free)

    def project_pair_vec(self, vec: dict) -> dict:
        return self.sub.reduce(vec)


class InducedModule:
    """The graded module induced from U, with the exact twisted action."""

    def __init__(self, M1, Q: Quadruple, m, U: FiniteModule, maxN, window, gen_window=None,
                 rel_window=None, report_window=None):
        self.M1 = M1
        self.Q = Q
        self.m = F(m)
        self.U = U
        self.maxN = F(maxN)
        self.window = F(window)
        self.gen_window = F(gen_window if gen_window is not None else window)
        self.rel_window = F(rel_window if rel_window is not None else self.gen_window)
        self.report_window = report_window
        self.pieces: dict = {}
        self.bims: dict = {}
        self._act_cache: dict = {}
        step = F(1, Q.T)
        n = F(0)
        while n <= self.maxN:
            bim = bimodule_present(
                M1, Q, n, self.m, self.window, self.gen_window,
                check_axioms=False, actions=False, stabilize=False,
                report_window=report_window,
            )
            self.bims[n] = bim
            self.pieces[n] = InducedPiece(bim, U, self.rel_window, M1, Q)
            n += step

    def dims(self) -> dict:
        return {n: piece.dim for n, piece in sorted(self.pieces.items())}

    def act(self, a: str, p, src_n) -> dict | None:
        """Matrix of a_(p) from piece src_n to piece src_n + wt a - p - 1.

        Returns {"columns": {source_pair: image vec}}, with "zero" set when
        the target degree is negative (so the action is zero), or None when
        the target lies beyond the built range.
        """
        p, src_n = F(p), F(src_n)
        key = (a, p, src_n)
        if key in self._act_cache:
            return self._act_cache[key]
        wa = self.Q.V.wt(a)
        tgt = src_n + wa - p - 1
        if tgt < 0:
            res = {"zero": True, "target": None, "columns": {}}
            self._act_cache[key] = res
            return res
        if tgt > self.maxN:
            return None
        src_piece = self.pieces[src_n]
        tgt_piece = self.pieces[tgt]
        columns = {}
        for x, k in src_piece.free:
            prod = barstar({a: F(1)}, {x: F(1)}, self.Q, ProductParams(tgt, self.m, src_n))
            if not tgt_piece.bim.pres.fits(prod):
                raise InsufficientTable([(a, p, x)])
            coords = tgt_piece.bim.pres.project(prod)
            img = tgt_piece.project_pair_vec({(lab, k): c for lab, c in coords.items()})
            columns[(x, k)] = img
        res = {"zero": False, "target": tgt, "columns": columns}
        self._act_cache[key] = res
        return res


def induce(M1, Q: Quadruple, m, U: FiniteModule, maxN, window, gen_window=None,
           rel_window=None, report_window=None) -> InducedModule:
    """Build the induced twisted module from the algebra-level data."""
    return InducedModule(M1, Q, m, U, maxN, window, gen_window, rel_window, report_window)


def vacuum_action_identity(mod: InducedModule) -> bool:
    """The vacuum acts as the identity series on each piece."""
    vac = mod.Q.V.vacuum
    for n, piece in mod.pieces.items():
        step = F(1, mod.Q.T)
        p = F(-3)
        while p <= 2:
            act = mod.act(vac, p, n)
            if act is None:
                p += step
                continue
            cols = act["columns"]
            if p == -1:
                for pair in piece.free:
                    want = {pair: F(1)}
                    if cols.get(pair, {}) != want:
                        return False
            else:
                if not act["zero"] and any(cols[pair] for pair in cols):
                    return False
            p += step
    return True


# --- the intertwining map out of the presented module ---------------------------


class FCircModes:
    """Modes of the canonical map from M1 x (presented M2) into the induced module.

    M2 is presented as induced from its own bottom over the quadruple
    (V, 1, g2, g2); the mode of degree-shift deg v - idx - 1 sends the class
    b (x) u to (v understar b) (x) u.
    """

    def __init__(self, target: InducedModule, source: InducedModule):
        self.T = target
        self.S = source
        assert target.U is source.U, "source and target must share the bottom module"

    def apply(self, v: str, idx, src_p) -> dict | None:
        """Matrix of v_(idx): source piece p -> target piece p + deg v - idx - 1."""
        idx, src_p = F(idx), F(src_p)
        Q = self.T.Q
        dv = self.T.M1.basis.deg(v)
        tgt = src_p + dv - idx - 1
        if tgt < 0:
            return {"zero": True, "target": None, "columns": {}}
        if tgt > self.T.maxN:
            return None
        src_piece = self.S.pieces[src_p]
        tgt_piece = self.T.pieces[tgt]
        columns = {}
        for b, k in src_piece.free:
            prod = understar({v: F(1)}, {b: F(1)}, Q, ProductParams(tgt, self.T.m, src_p))
            if not tgt_piece.bim.pres.fits(prod):
                raise InsufficientTable([(v, idx, b)])
            coords = tgt_piece.bim.pres.project(prod)
            img = tgt_piece.project_pair_vec({(lab, k): c for lab, c in coords.items()})
            columns[(b, k)] = img
        return {"zero": False, "target": tgt, "columns": columns}


def fcirc_modes(M1, M2_presented: InducedModule, m, v: str, n, target: InducedModule):
    """Spec-level accessor: the matrix family of the canonical mode maps."""
    fc = FCircModes(target, M2_presented)
    out = {}
    for p in sorted(M2_presented.pieces):
        res = fc.apply(v, n, p)
        if res is not None:
            out[p] = res
    return out


# --- coefficientwise identities for the canonical mode maps ---------------------


def _columns_compose(outer: dict, inner: dict) -> dict:
    """Compose column maps: (outer o inner)[src] = outer applied to inner[src]."""
    out = {}
    for src, mid_vec in inner.items():
        acc = {}
        for mid, c in mid_vec.items():
            for tgt, cc in outer.get(mid, {}).items():
                s = acc.get(tgt, F(0)) + c * cc
                if s:
                    acc[tgt] = s
                else:
                    acc.pop(tgt, None)
        out[src] = acc
    return out


def _columns_addinto(acc: dict, cols: dict, scale=F(1)):
    for src, vec in cols.items():
        tgt = acc.setdefault(src, {})
        for pair, c in vec.items():
            s = tgt.get(pair, F(0)) + scale * c
            if s:
                tgt[pair] = s
            else:
                tgt.pop(pair, None)


def _columns_equal(a: dict, b: dict, keys) -> bool:
    for k in keys:
        va, vb = a.get(k, {}), b.get(k, {})
        if {p: c for p, c in va.items() if c} != {p: c for p, c in vb.items() if c}:
            return False
    return True


def fcirc_associativity_check(fc: FCircModes, a: str, v: str, p, x_range=2, rep=None):
    """Coefficientwise comparison of the two composition orders of the
    algebra action against the canonical mode map, on the source piece p."""
    rep = rep if rep is not None else []
    Q = fc.T.Q
    p = F(p)
    wa = Q.V.wt(a)
    dv = fc.T.M1.basis.deg(v)
    j2 = Q.j2(a)
    q = lam(p, j2, Q.T)
    src_piece = fc.S.pieces[p]
    step = F(1, Q.T)
    xs = _lattice_range(-F(Q.j1(a), Q.T), x_range)
    ys = _lattice_range(F(0), x_range, step)
    for x in xs:
        for y in ys:
            n_tot = p + x + y
            if n_tot < 0 or n_tot > fc.T.maxN or p + q + y > fc.T.maxN:
                continue
            lhs: dict = {}
            i = 0
            while True:
                pv = p + q + y - i
                if pv < 0:
                    break
                p1 = wa + q - 1 - x - i
                n1 = dv - q + i - y - 1
                inner = fc.apply(v, n1, p)
                if (
                    inner is not None
                    and not inner["zero"]
                    and inner["target"] == pv
                    and any(inner["columns"].values())
                ):
                    outer = fc.T.act(a, p1, pv)
                    if outer is None:
                        raise InsufficientTable([(a, p1, pv)])
                    coeff = gen_binomial(x + i, i)
                    if coeff and not outer["zero"]:
                        _columns_addinto(
                            lhs, _columns_compose(outer["columns"], inner["columns"]), coeff
                        )
                i += 1
            rhs: dict = {}
            j = 0
            while j <= wa + dv + x:
                p2 = j - x - 1
                n2 = wa + dv - j - y - 1
                coeff = gen_binomial(wa + q, j)
                if coeff:
                    try:
                        av = fc.T.M1.mode(a, p2, v) if p2.denominator == 1 else {}
                    except InsufficientTable:
                        av = None
                    if av:
                        for w, cw in av.items():
                            res = fc.apply(w, n2, p)
                            if res is None:
                                raise InsufficientTable([(w, n2, p)])
                            if not res["zero"]:
                                assert res["target"] == n_tot
                                _columns_addinto(rhs, res["columns"], coeff * cw)
                j += 1
            if not _columns_equal(lhs, rhs, src_piece.free):
                rep.append(("assoc", a, v, p, x, y, lhs, rhs))
    return rep


def fcirc_commutativity_check(fc: FCircModes, a: str, v: str, p, x_range=2, rep=None):
    """Coefficientwise comparison of the two operator orders on the source piece p."""
    rep = rep if rep is not None else []
    Q = fc.T.Q
    p = F(p)
    wa = Q.V.wt(a)
    dv = fc.T.M1.basis.deg(v)
    j1 = Q.j1(a)
    q1 = lam(dv, j1, Q.T)
    src_piece = fc.S.pieces[p]
    step = F(1, Q.T)
    xs = _lattice_range(-F(Q.j2(a), Q.T), x_range)
    ys = _lattice_range(F(0), x_range, step)
    for x in xs:
        for y in ys:
            n_tot = p + x + y
            if n_tot < 0 or n_tot > fc.T.maxN:
                continue
            if p + q1 + y > fc.T.maxN or p + wa + x > fc.T.maxN:
                continue
            lhs: dict = {}
            i = 0
            while True:
                pv = p + q1 + y - i
                if pv < 0:
                    break
                p1 = wa + q1 - i - x - 1
                n1 = i + dv - q1 - y - 1
                inner = fc.apply(v, n1, p)
                if (
                    inner is not None
                    and not inner["zero"]
                    and inner["target"] == pv
                    and any(inner["columns"].values())
                ):
                    outer = fc.T.act(a, p1, pv)
                    if outer is None:
                        raise InsufficientTable([(a, p1, pv)])
                    coeff = gen_binomial(wa + q1, i) * (-1) ** i
                    if coeff and not outer["zero"]:
                        _columns_addinto(
                            lhs, _columns_compose(outer["columns"], inner["columns"]), coeff
                        )
                i += 1
            rhs: dict = {}
            j = 0
            while j <= p + wa + x:
                p2 = j - x - 1
                n2 = wa + dv - j - y - 1
                binj = gen_binomial(wa + q1, j)
                if binj:
                    sgn = power_branch(wa + q1 - j, 2 * Q.T)
                    qr = sgn.as_rational()
                    sgn = qr if qr is not None else sgn
                    amove = fc.S.act(a, p2, p)
                    if amove is None:
                        raise InsufficientTable([(a, p2, p)])
                    if not amove["zero"] and any(amove["columns"].values()):
                        ps = amove["target"]
                        vres = fc.apply(v, n2, ps)
                        if vres is None:
                            raise InsufficientTable([(v, n2, ps)])
                        if not vres["zero"]:
                            assert vres["target"] == n_tot
                            _columns_addinto(
                                rhs, _columns_compose(vres["columns"], amove["columns"]), binj * sgn
                            )
                j += 1
            if not _columns_equal(lhs, rhs, src_piece.free):
                rep.append(("comm", a, v, p, x, y, lhs, rhs))
    return rep


def fcirc_l0_commutator_check(fc: FCircModes, v: str, p, idx_range=2, rep=None):
    """[L_0, v_(idx)] = (h3 - h2 + deg v - idx - 1) v_(idx) on the source piece p.

    The weight offsets h2, h3 are read off the scalar action of the
    conformal class on the source and target pieces.
    """
    rep = rep if rep is not None else []
    p = F(p)
    dv = fc.T.M1.basis.deg(v)
    src_l0 = l0_matrix(fc.S, p)
    src_piece = fc.S.pieces[p]
    if not _is_scalar(src_l0):
        raise NonDiagonalizable(f"source piece {p} has nonscalar weight action")
    h2p = src_l0[0][0] if src_l0 else None
    step = F(1, fc.T.Q.T)
    idx = dv - 1 + p - F(idx_range)
    while idx <= dv - 1 + p + idx_range:
        res = fc.apply(v, idx, p)
        idx0 = idx
        idx += step
        if res is None or res["zero"]:
            continue
        tgt = res["target"]
        tgt_l0 = l0_matrix(fc.T, tgt)
        if not _is_scalar(tgt_l0):
            raise NonDiagonalizable(f"target piece {tgt} has nonscalar weight action")
        h3t = tgt_l0[0][0] if tgt_l0 else None
        if h3t is None or h2p is None:
            continue
        # conformal weights of the blocks: full eigenvalue minus the degree
        h3 = h3t - tgt
        h2 = h2p - p
        shift = h3 - h2 + dv - idx0 - 1
        # [L0, v_(idx)] columns: L0 o v - v o L0
        tgt_piece = fc.T.pieces[tgt]
        lhs = {}
        for src_j, pair in enumerate(src_piece.free):
            img = res["columns"].get(pair, {})
            acc = {}
            for tpair, c in img.items():
                ti = tgt_piece.free.index(tpair)
                for oi, opair in enumerate(tgt_piece.free):
                    if tgt_l0[oi][ti]:
                        acc[opair] = acc.get(opair, F(0)) + c * tgt_l0[oi][ti]
            si = src_piece.free.index(pair)
            for mi, mpair in enumerate(src_piece.free):
                if src_l0[mi][si]:
                    for tpair, c in res["columns"].get(mpair, {}).items():
                        acc[tpair] = acc.get(tpair, F(0)) - src_l0[mi][si] * c
            lhs[pair] = {k2: c for k2, c in acc.items() if c}
        want = {
            pair: {k2: shift * c for k2, c in res["columns"].get(pair, {}).items() if shift * c}
            for pair in src_piece.free
        }
        if not _columns_equal(lhs, want, src_piece.free):
            rep.append(("l0-commutator", v, p, idx0, lhs, want))
    return rep


def _is_scalar(mat) -> bool:
    n = len(mat)
    if n == 0:
        return True
    d = mat[0][0]
    return all(mat[i][j] == (d if i == j else 0) for i in range(n) for j in range(n))


def _lattice_range(offset, radius, step=F(1)):
    out = []
    x = offset - radius
    while x <= offset + radius:
        out.append(x)
        x += step
    return out


# --- eigen decomposition ---------------------------------------------------------


def l0_matrix(mod: InducedModule, n) -> list[list]:
    """Matrix of the conformal-vector weight operator on a piece."""
    n = F(n)
    piece = mod.pieces[n]
    dim = piece.dim
    omega = mod.Q.V.omega_vec
    mat = [[F(0)] * dim for _ in range(dim)]
    for j, pair in enumerate(piece.free):
        total = {}
        for wlab, wc in omega.items():
            act = mod.act(wlab, F(mod.Q.V.wt(wlab)) - 1, n)
            if act is None:
                raise InsufficientTable([(wlab, 1, pair)])
            img = act["columns"].get(pair, {})
            for tpair, c in img.items():
                total[tpair] = total.get(tpair, F(0)) + wc * c
        for i, tpair in enumerate(piece.free):
            mat[i][j] = total.get(tpair, F(0))
    return mat


def l0_decompose(mat: list[list]) -> dict:
    """Exact rational eigen decomposition; fails loudly otherwise.

    Returns eigenvalue -> list of eigenvectors (dense coordinates).
    """
    dim = len(mat)
    if dim == 0:
        return {}
    poly = _char_poly(mat)
    roots = _rational_roots(poly)
    blocks = {}
    total = 0
    for lam_ in roots:
        shifted = [[mat[i][j] - (lam_ if i == j else 0) for j in range(dim)] for i in range(dim)]
        kern = nullspace(shifted, dim)
        if kern:
            blocks[lam_] = kern
            total += len(kern)
    if total != dim:
        raise NonDiagonalizable(f"eigenspaces span {total} of {dim} dimensions")
    return blocks


def _char_poly(mat):
    # Faddeev-LeVerrier: exact characteristic polynomial coefficients
    n = len(mat)
    coeffs = [F(1)]
    Mk = [[F(0)] * n for _ in range(n)]
    I = [[F(1) if i == j else F(0) for j in range(n)] for i in range(n)]
    for k in range(1, n + 1):
        Mk = _matmul(mat, _mat_add(Mk, _mat_scale(coeffs[-1], I))) if k > 1 else [row[:] for row in mat]
        c = -F(sum(Mk[i][i] for i in range(n)), k)
        coeffs.append(c)
    return coeffs  # x^n + c1 x^{n-1} + ... + cn


def _mat_add(A, B):
    return [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def _mat_scale(c, A):
    return [[c * a for a in row] for row in A]


def _rational_roots(coeffs):
    """All rational roots of the monic integer-denominator polynomial."""
    n = len(coeffs) - 1
    from math import gcd

    den = 1
    for c in coeffs:
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(c * den) for c in coeffs]
    lead, tail = ints[0], ints[-1]
    if tail == 0:
        roots = {F(0)}
        while ints[-1] == 0 and len(ints) > 1:
            ints = ints[:-1]
        lead, tail = ints[0], ints[-1]
    else:
        roots = set()
    if len(ints) > 1 and tail != 0:
        for p in _divisors(abs(tail)):
            for q in _divisors(abs(lead)):
                for cand in (F(p, q), F(-p, q)):
                    if _poly_eval(coeffs, cand) == 0:
                        roots.add(cand)
    return sorted(roots)


def _divisors(x):
    out = []
    d = 1
    while d * d <= x:
        if x % d == 0:
            out.append(d)
            if d != x // d:
                out.append(x // d)
        d += 1
    return sorted(out)


def _poly_eval(coeffs, x):
    acc = F(0)
    for c in coeffs:
        acc = acc * x + c
    return acc


# --- generated submodule and radical ---------------------------------------------


def generated_submodule(mod: InducedModule, seed_degree, maxN=None, act_window=4) -> dict:
    """Per-degree bases of the submodule generated by the seed piece.

    The closure is taken under modes of elements of weight at most
    act_window, which generate the action at desk scale.
    """
    maxN = mod.maxN if maxN is None else F(maxN)
    seed_degree = F(seed_degree)
    step = F(1, mod.Q.T)
    degrees = sorted(n for n in mod.pieces if n <= maxN)
    spans = {n: [] for n in degrees}
    piece = mod.pieces[seed_degree]
    spans[seed_degree] = [
        {pair: F(1)} for pair in piece.free
    ]
    changed = True
    while changed:
        changed = False
        for n in degrees:
            if not spans[n]:
                continue
            for a in mod.Q.V.basis.labels(min(mod.window - 1, F(act_window))):
                wa = mod.Q.V.wt(a)
                for tgt in degrees:
                    p = n + wa - tgt - 1
                    act = mod.act(a, p, n)
                    if act is None or act["zero"]:
                        continue
                    for vec in list(spans[n]):
                        img = {}
                        for pair, c in vec.items():
                            for tpair, cc in act["columns"].get(pair, {}).items():
                                img[tpair] = img.get(tpair, F(0)) + c * cc
                        img = {k: v for k, v in img.items() if v}
                        if img and not _in_span(spans[act["target"]], img, mod.pieces[act["target"]].free):
                            spans[act["target"]].append(img)
                            changed = True
    out = {}
    for n in degrees:
        basis = SubspaceBasis.from_vectors(spans[n], mod.pieces[n].free)
        out[n] = basis
    return out


def _in_span(vectors, vec, ambient):
    if not vectors:
        return False
    basis = SubspaceBasis.from_vectors(vectors, ambient)
    return basis.contains(vec)


# --- fusion-rule upper bound -------------------------------------------------------


@dataclass
class FusionReport:
    value: int
    stabilized: bool
    details: dict = field(default_factory=dict)

    def to_json(self):
        return {"value": self.value, "stabilized": self.stabilized, **self.details}


def module_bottom_as_finite_module(alg: AlgebraSC, M, m) -> BottomModule:
    """The degree-m piece of a twisted module as a module over the level algebra."""
    return BottomModule(alg, M, m)


def fusion_upper_bound(M1, Q: Quadruple, M2, M3, m, window, gen_window=None,
                       report_window=None, act_window=4) -> FusionReport:
    """Dimension of the equivariant hom space from the tensor piece to M3(m).

    The constructive span under-approximates the defining quotient space,
    so the reported dimension is an upper bound for the fusion rule; the
    stabilization flag records window insensitivity.  Equivariance is
    imposed for every algebra element of weight at most act_window, acting
    on the target bottom by its true zero modes, so a target with the wrong
    weight data admits no nonzero map.
    """
    m = F(m)
    W = F(window)
    G = F(gen_window if gen_window is not None else window)

    def compute(gw):
        right_alg = zhu_algebra(Q.V, Q.g2, m, W, gw, report_window=report_window)
        U = BottomModule(right_alg, M2, m)
        U.check_consistency(min(act_window, 4))
        bim = bimodule_present(
            M1, Q, m, m, W, gw, check_axioms=False, actions=False, stabilize=False,
            report_window=report_window,
        )
        piece = InducedPiece(bim, U, gw, M1, Q)
        labels3 = [b.label for b in M3.basis.vectors if b.deg == m]
        idx3 = {lab: i for i, lab in enumerate(labels3)}
        nf = piece.dim
        n3 = len(labels3)
        if nf == 0 or n3 == 0:
            return 0, piece
        cols = nf * n3
        rows = []
        for b in Q.V.basis.labels(F(act_window)):
            wb = Q.V.wt(b)
            bmat3 = [[F(0)] * n3 for _ in range(n3)]
            for j, lab in enumerate(labels3):
                img = M3.mode(b, wb - 1, lab)
                for out_lab, c in img.items():
                    if M3.basis.deg(out_lab) == m:
                        bmat3[idx3[out_lab]][j] += c
            act = _piece_left_action(piece, b, Q)
            if act is None:
                continue
            for j, pair in enumerate(piece.free):
                for i in range(n3):
                    row = [F(0)] * cols
                    # f(b.x_j)_i = sum_k (b.x_j)[pair_k] f(x_k)_i
                    for k, kp in enumerate(piece.free):
                        c = act[j].get(kp, F(0))
                        if c:
                            row[k * n3 + i] += c
                    # (b.f(x_j))_i = sum_t bmat3[i][t] f(x_j)_t
                    for t in range(n3):
                        if bmat3[i][t]:
                            row[j * n3 + t] -= bmat3[i][t]
                    if any(row):
                        rows.append(row)
        dim = len(nullspace(rows, cols)) if rows else cols
        return dim, piece

    value, piece = compute(G)
    value_next, _ = compute(G + 1)
    return FusionReport(
        value=value,
        stabilized=value == value_next,
        details={
            "m": str(m),
            "window": str(W),
            "gen_window": str(G),
            "tensor_piece_dim": piece.dim,
            "next_value": value_next,
        },
    )


def _piece_left_action(piece: InducedPiece, a: str, Q: Quadruple):
    """Left action of the class of a on the tensor piece, as column maps."""
    bim = piece.bim
    out = {}
    for j, pair in enumerate(piece.free):
        x, k = pair
        try:
            prod = barstar({a: F(1)}, {x: F(1)}, Q, ProductParams(bim.n, bim.m, bim.n))
        except InsufficientTable:
            return None
        if not bim.pres.fits(prod):
            return None
        coords = bim.pres.project(prod)
        img = piece.project_pair_vec({(lab, k): c for lab, c in coords.items()})
        out[j] = img
    return out


# --- transport of structure along the involution -----------------------------------


def phi_bimodule_check(M1, Q: Quadruple, n, m, window, max_wt=2) -> list:
    """The two intertwining identities of the grading-reversing map, and the
    containment of generator spans across the two orientations."""
    from .voacore import phi_map

    n, m = F(n), F(m)
    results = []
    V = Q.V
    g2inv = _inverse_aut(V, Q.g2)
    g3inv = _inverse_aut(V, Q.g3)
    Qop = Quadruple(M1, Q.g1, g3inv, g2inv, Q.T)

    ok = True
    witness = None
    for a in V.basis.labels(F(max_wt)):
        pa = phi_map(V, {a: F(1)})
        for v in M1.basis.labels(F(max_wt)):
            pv = phi_map(M1, {v: F(1)})
            for p in (F(0), F(1, Q.T), F(1)):
                lhs = phi_map(M1, barstar({a: F(1)}, {v: F(1)}, Qop, ProductParams(m, n, p)))
                rhs = understar(pv, pa, Q, ProductParams(n, m, p))
                if lhs != rhs:
                    ok, witness = False, ("left", a, v, p, lhs, rhs)
    results.append(("phi-left-identity", ok, witness))

    ok = True
    witness = None
    for a in V.basis.labels(F(max_wt)):
        pa = phi_map(V, {a: F(1)})
        g1a = _apply_aut(V, Q.g1, {a: F(1)}, Q.T)
        for v in M1.basis.labels(F(max_wt)):
            pv = phi_map(M1, {v: F(1)})
            for p in (F(0), F(1, Q.T), F(1)):
                lhs = phi_map(M1, understar({v: F(1)}, g1a, Qop, ProductParams(m, n, p)))
                rhs = barstar(pa, pv, Q, ProductParams(n, m, p))
                if lhs != rhs:
                    ok, witness = False, ("right", a, v, p, lhs, rhs)
    results.append(("phi-right-identity", ok, witness))

    W = F(window)
    span_op = span_O_bimod(M1, Qop, m, n, W)
    span_main = span_O_bimod(M1, Q, n, m, W)
    ok = True
    for vec in span_op.vectors():
        img = phi_map(M1, vec)
        if not all(lab in span_main.ambient for lab in img) or not span_main.contains(img):
            ok = False
            break
    results.append(("phi-span-transport", ok, None))
    return results


def _inverse_aut(V: VOAData, g: str) -> str:
    order = V.auts[g][0]
    if order <= 2:
        return g
    raise NotImplementedError("inverse automorphism descriptors beyond order 2")


def _apply_aut(V: VOAData, g: str, vec: Vec, T: int) -> Vec:
    from .scalars import root_of_unity

    out = {}
    for lab, c in vec.items():
        j = V.residue(g, lab, T)
        if j == 0:
            out[lab] = c
        else:
            z = root_of_unity(2 * j % (2 * T), 2 * T)
            q = z.as_rational()
            out[lab] = c * (q if q is not None else z)
    return out
