"""Exact rational linear algebra on sparse row matrices.

Matrices are stored as a list of rows, each row a dict {column: Fraction}
holding only nonzero entries.  Everything is computed over the rationals
with no floating point; row-space bases are canonicalized to the reduced
echelon form scaled to primitive integer rows with positive leading entry,
so equal subspaces always produce identical bases.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

Row = dict


@dataclass
class Mat:
    nrows: int
    ncols: int
    rows: list  # list[dict[int, Fraction]]

    @staticmethod
    def from_dense(dense):
        rows = [{j: Fraction(v) for j, v in enumerate(r) if v} for r in dense]
        ncols = len(dense[0]) if dense else 0
        return Mat(len(dense), ncols, rows)

    def to_dense(self):
        return [
            [self.rows[i].get(j, Fraction(0)) for j in range(self.ncols)]
            for i in range(self.nrows)
        ]

    def is_zero(self) -> bool:
        return all(not r for r in self.rows)

    def first_nonzero(self):
        for i, r in enumerate(self.rows):
            if r:
                j = min(r)
                return (i, j, r[j])
        return None

    def matmul(self, other: "Mat") -> "Mat":
        assert self.ncols == other.nrows
        out = []
        for r in self.rows:
            acc: Row = {}
            for k, v in r.items():
                for j, w in other.rows[k].items():
                    nv = acc.get(j, 0) + v * w
                    if nv:
                        acc[j] = nv
                    else:
                        acc.pop(j, None)
            out.append(acc)
        return Mat(self.nrows, other.ncols, out)

    def transpose(self) -> "Mat":
        rows = [dict() for _ in range(self.ncols)]
        for i, r in enumerate(self.rows):
            for j, v in r.items():
                rows[j][i] = v
        return Mat(self.ncols, self.nrows, rows)


def row_to_primitive(row: Row) -> Row:
    """Scale a row to coprime integers with positive leading entry."""
    if not row:
        return {}
    scale = lcm(*(v.denominator for v in row.values()))
    ints = {c: v.numerator * (scale // v.denominator) for c, v in row.items()}
    g = 0
    for v in ints.values():
        g = gcd(g, v)
    if ints[min(ints)] < 0:
        g = -g
    return {c: Fraction(v // g) for c, v in ints.items()}


def _reduce(row: Row, pivots: dict) -> Row:
    """Subtract pivot rows to clear every pivot column present in row."""
    r = dict(row)
    for pc in sorted(set(r) & set(pivots)):
        f = r.pop(pc)
        for c, v in pivots[pc].items():
            if c == pc:
                continue
            nv = r.get(c, 0) - f * v
            if nv:
                r[c] = nv
            else:
                r.pop(c, None)
    return r


class Echelon:
    """Incremental reduced row echelon form of a growing row set."""

    def __init__(self, rows=()):
        self.pivots: dict = {}  # pivot column -> row with that pivot == 1
        for r in rows:
            self.add(r)

    def add(self, row: Row) -> bool:
        """Insert a row; True if it increased the rank."""
        r = _reduce(row, self.pivots)
        if not r:
            return False
        lead = min(r)
        lv = r[lead]
        r = {c: v / lv for c, v in r.items()}
        for pr in self.pivots.values():
            if lead in pr:
                f = pr.pop(lead)
                for c, v in r.items():
                    if c == lead:
                        continue
                    nv = pr.get(c, 0) - f * v
                    if nv:
                        pr[c] = nv
                    else:
                        pr.pop(c, None)
        self.pivots[lead] = r
        return True

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def contains(self, row: Row) -> bool:
        return not _reduce(row, self.pivots)

    def rows(self):
        """Canonical basis rows: pivot order, primitive integer, lead > 0."""
        return [row_to_primitive(self.pivots[c]) for c in sorted(self.pivots)]


def rref(rows) -> list:
    return Echelon(rows).rows()


def rank(mat: Mat) -> int:
    return Echelon(mat.rows).rank


def kernel(mat: Mat) -> list:
    """Canonical basis of {x : mat @ x = 0}, as rows over mat.ncols."""
    ech = Echelon(mat.rows)
    piv = ech.pivots
    basis = []
    for f in range(mat.ncols):
        if f in piv:
            continue
        vec: Row = {f: Fraction(1)}
        for p, prow in piv.items():
            v = prow.get(f)
            if v:
                vec[p] = -v
        basis.append(row_to_primitive(vec))
    return basis


def column_space(mat: Mat) -> list:
    """Canonical basis of the column space, as rows over mat.nrows."""
    return rref(mat.transpose().rows)


def span_contains(basis_rows, vec: Row) -> bool:
    return Echelon(basis_rows).contains(vec)


def span_leq(sub_rows, super_rows) -> bool:
    ech = Echelon(super_rows)
    return all(ech.contains(r) for r in sub_rows)


def span_dim(rows) -> int:
    return Echelon(rows).rank


def intersection(a_rows, b_rows, ncols: int) -> list:
    """Zassenhaus: basis of span(a) ∩ span(b), rows over ncols."""
    stacked = []
    for r in a_rows:
        row = dict(r)
        row.update({c + ncols: v for c, v in r.items()})
        stacked.append(row)
    stacked.extend(dict(r) for r in b_rows)
    out = []
    for row in rref(stacked):
        if min(row) >= ncols:
            out.append(row_to_primitive({c - ncols: v for c, v in row.items()}))
    return out


def complete_basis(inner_rows, ambient_rows) -> list:
    """Members of ambient (in order) that extend inner to a basis of ambient.

    Used to pick quotient representatives: ambient = cocycles, inner =
    coboundaries; the returned rows are independent modulo inner.
    """
    ech = Echelon(inner_rows)
    reps = []
    for r in ambient_rows:
        if ech.add(r):
            reps.append(dict(r))
    return reps


def solve_in_basis(basis_rows, vec: Row):
    """Coordinates of vec in an echelonized basis, or None if outside.

    basis_rows must be echelon rows (distinct pivot columns, as produced
    by Echelon.rows()).
    """
    r = dict(vec)
    coords = []
    for b in basis_rows:
        p = min(b)
        c = Fraction(r.get(p, 0), 1) / b[p]
        coords.append(c)
        if c:
            for col, v in b.items():
                nv = r.get(col, 0) - c * v
                if nv:
                    r[col] = nv
                else:
                    r.pop(col, None)
    if r:
        return None
    return coords
