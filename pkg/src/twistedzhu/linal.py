"""Exact linear algebra over Q and Q(zeta_N).

Vectors are sparse dicts label -> scalar (Fraction or Cyclo).  Zero
coefficients are never stored.  Dense row reduction keeps a deterministic
pivot choice: first nonzero column in the fixed ambient order.
"""

from __future__ import annotations

from fractions import Fraction

from .scalars import Cyclo, F, scalar_is_zero


def cis_zero(c) -> bool:
    if c is None:
        return True
    if isinstance(c, dict):
        return all(scalar_is_zero(x) for x in c.values())
    return scalar_is_zero(c)


def cadd(a, b):
    """Add coefficients that are scalars or dict-vectors (None acts as zero)."""
    if a is None:
        return b
    if b is None:
        return a
    if isinstance(a, dict) or isinstance(b, dict):
        a = a if isinstance(a, dict) else {}
        b = b if isinstance(b, dict) else {}
        return vadd(a, b)
    return a + b


def cscale(s, c):
    if isinstance(c, dict):
        return vscale(s, c)
    return s * c


def vadd(u: dict, v: dict) -> dict:
    out = dict(u)
    for k, c in v.items():
        s = out.get(k, 0) + c
        if scalar_is_zero(s):
            out.pop(k, None)
        else:
            out[k] = s
    return out


def vsub(u: dict, v: dict) -> dict:
    return vadd(u, vscale(-1, v))

def vscale(s, u: dict) -> dict:
    if scalar_is_zero(s):
        return {}
    return {k: s * c for k, c in u.items() if not scalar_is_zero(s * c)}


def vzero(u: dict) -> bool:
    return all(scalar_is_zero(c) for c in u.values())


def vec_to_dense(u: dict, ambient: list) -> list:
    idx = {lab: i for i, lab in enumerate(ambient)}
    row = [F(0)] * len(ambient)
    for k, c in u.items():
        if not scalar_is_zero(c):
            assert k in idx, f"label {k!r} outside ambient basis"
            row[idx[k]] = c
    return row


def dense_to_vec(row: list, ambient: list) -> dict:
    return {lab: c for lab, c in zip(ambient, row) if not scalar_is_zero(c)}


def rref(rows: list[list]) -> tuple[list[list], list[int]]:
    """Reduced row echelon form; returns (rows, pivot column indices)."""
    rows = [list(r) for r in rows if any(not scalar_is_zero(c) for c in r)]
    if not rows:
        return [], []
    ncols = len(rows[0])
    pivots = []
    r = 0
    for col in range(ncols):
        pivot_row = None
        for i in range(r, len(rows)):
            if not scalar_is_zero(rows[i][col]):
                pivot_row = i
                break
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        inv = rows[r][col]
        inv = inv.inverse() if isinstance(inv, Cyclo) else 1 / F(inv)
        rows[r] = [c * inv for c in rows[r]]
        for i in range(len(rows)):
            if i != r and not scalar_is_zero(rows[i][col]):
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
        if r == len(rows):
            break
    rows = rows[:r]
    return rows, pivots


def reduce_against(row: list, rref_rows: list[list], pivots: list[int]) -> list:
    """Subtract multiples of echelon rows to clear the pivot columns of row."""
    row = list(row)
    for rr, p in zip(rref_rows, pivots):
        f = row[p]
        if not scalar_is_zero(f):
            row = [a - f * b for a, b in zip(row, rr)]
    return row


def nullspace(rows: list[list], ncols: int) -> list[list]:
    """Basis of the right kernel of the matrix given by rows."""
    red, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fcol in free:
        vec = [F(0)] * ncols
        vec[fcol] = F(1)
        for rr, p in zip(red, pivots):
            vec[p] = -rr[fcol]
        basis.append(vec)
    return basis


def solve_membership(row: list, rref_rows: list[list], pivots: list[int]) -> bool:
    """Is row in the row span of the echelon basis?"""
    rem = reduce_against(row, rref_rows, pivots)
    return all(scalar_is_zero(c) for c in rem)


class SubspaceBasisBase:
    """Row-reduced basis of a subspace of the span of an ordered ambient basis.

    Rows are sparse dicts column-index -> scalar in reduced echelon form:
    each row's first column (in ambient order) is its pivot, normalized to 1
    and cleared from every other row.
    """

    def __init__(self, ambient: list, piv_rows: dict):
        self.ambient = list(ambient)
        self.piv_rows = piv_rows  # pivot column index -> sparse row
        self.pivots = sorted(piv_rows)

    @staticmethod
    def from_vectors(vectors: list[dict], ambient: list) -> "SubspaceBasisBase":
        index = {lab: i for i, lab in enumerate(ambient)}
        piv_rows: dict = {}
        for vec in vectors:
            row = {}
            for lab, c in vec.items():
                if not scalar_is_zero(c):
                    assert lab in index, f"label {lab!r} outside ambient basis"
                    row[index[lab]] = c
            row = _sparse_reduce(row, piv_rows)
            if row:
                p = min(row)
                inv = row[p].inverse() if isinstance(row[p], Cyclo) else 1 / F(row[p])
                piv_rows[p] = {k: v * inv for k, v in row.items()}
        for p in sorted(piv_rows):
            prow = piv_rows[p]
            for q, qrow in piv_rows.items():
                if q != p and p in qrow:
                    f = qrow[p]
                    for k, v in prow.items():
                        s = qrow.get(k, 0) - f * v
                        if scalar_is_zero(s):
                            qrow.pop(k, None)
                        else:
                            qrow[k] = s
        return SubspaceBasisBase(ambient, piv_rows)

    @staticmethod
    def from_dense(ambient: list, rows: list[list], pivots: list[int]) -> "SubspaceBasisBase":
        piv_rows = {}
        for row, p in zip(rows, pivots):
            piv_rows[p] = {i: c for i, c in enumerate(row) if not scalar_is_zero(c)}
        return SubspaceBasisBase(ambient, piv_rows)

    @property
    def rank(self) -> int:
        return len(self.piv_rows)

    def vectors(self) -> list[dict]:
        return [
            {self.ambient[i]: c for i, c in sorted(self.piv_rows[p].items())}
            for p in self.pivots
        ]

    def contains(self, vec: dict) -> bool:
        return not self.reduce(vec)

    def reduce(self, vec: dict) -> dict:
        """Canonical representative of vec modulo the subspace."""
        index = {lab: i for i, lab in enumerate(self.ambient)}
        row = {}
        for lab, c in vec.items():
            if not scalar_is_zero(c):
                row[index[lab]] = c
        row = _sparse_reduce(row, self.piv_rows)
        return {self.ambient[i]: c for i, c in sorted(row.items())}

    def free_labels(self) -> list:
        piv = set(self.piv_rows)
        return [lab for i, lab in enumerate(self.ambient) if i not in piv]


def _sparse_reduce(row: dict, piv_rows: dict) -> dict:
    """Clear all pivot columns of piv_rows from row (single increasing pass)."""
    for p in sorted(piv_rows):
        c = row.get(p)
        if c is None or scalar_is_zero(c):
            continue
        for k, v in piv_rows[p].items():
            s = row.get(k, 0) - c * v
            if scalar_is_zero(s):
                row.pop(k, None)
            else:
                row[k] = s
    return {k: v for k, v in row.items() if not scalar_is_zero(v)}
