"""Coboundary operators and their exact matrices.

Degree bookkeeping: a degree-n cochain is an (n+1)-linear map and the
coboundary takes degree n to degree n+1.  The formulas, by source degree:

  n = 0:        d(f)(x1,x2)      = f(x1*x2)
  n = 1:        d(P)(x1,x2,x3)   = P(x1*x2, x3) - P(x1*x3, x2)
  n odd >= 3:   d(P)(x1..x_{n+2}) = P(x1*x2, x3, .., x_n, x_{n+1}, x_{n+2})
                                   - P(x1*x2, x3, .., x_n, x_{n+2}, x_{n+1})
  n even >= 2:  d(P)(x1..x_{n+2}) = sum over all permutations s of the n+2
                arguments of P(x_{s1}*x_{s2}, x_{s3}, .., x_{s(n+2)})

The coboundary never touches the value coordinate of the cochain (it only
multiplies and permutes arguments), so its matrix on flattened cochains is
an "index-level" matrix, acting on argument index tuples, tensored with the
identity on output coordinates.  All heavy computations (d o d = 0 checks,
kernel and image dimensions of the full complex) run at the index level;
the flat matrix is expanded from it on demand.

The symmetric-group sum is evaluated by grouping permutations per distinct
rearrangement of the index tuple (each arises the same number of times); a
naive per-permutation evaluator is kept as an independent oracle.
"""

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .algebra import AlgebraSpec, ORDER_ATOMIC, add, sub, zero_element
from .linalg import Mat, Echelon, solve_in_basis
from .multilinear import (
    MultilinearMap, SubspaceBasis, all_tuples, canonical_basis,
    subspace_band_preserving, subspace_ideal_preserving, tuple_index,
)

DEFAULT_DEGREE_CAP = 5

TAG_FULL = "full"
TAG_IDEAL = "ideal"
TAG_BAND = "band"
TAGS = (TAG_FULL, TAG_IDEAL, TAG_BAND)


class DegreeCapExceeded(ValueError):
    def __init__(self, degree, cap):
        super().__init__(f"degree {degree} exceeds the cap {cap}")
        self.degree = degree
        self.cap = cap


def check_cap(degree: int, cap: int):
    """Reject any computation that would materialize cochains above the cap."""
    if degree > cap:
        raise DegreeCapExceeded(degree, cap)


@lru_cache(maxsize=None)
def _arrangements(sorted_tuple: tuple):
    """Distinct rearrangements of a multiset and the per-arrangement weight.

    Every distinct arrangement is hit by the same number of permutations,
    namely the product of the multiplicities' factorials.
    """
    perms = sorted(set(itertools.permutations(sorted_tuple)))
    weight = factorial(len(sorted_tuple)) // len(perms)
    return perms, weight


def _term_indices(spec: AlgebraSpec, t: tuple):
    """Expand P(b_{t0}*b_{t1}, b_{t2}, ...): pairs (input index tuple, coefficient)."""
    prod = spec.structure[t[0]][t[1]]
    rest = t[2:]
    return [((c,) + rest, v) for c, v in enumerate(prod) if v]


def _output_terms(spec: AlgebraSpec, n: int, t: tuple, naive: bool = False):
    """Signed index-level terms of d at source degree n, output tuple t.

    Yields (input index tuple, rational coefficient); the input tuples index
    the source cochain's coefficient tensor.
    """
    m = n + 1  # source arity
    if n == 0:
        for pair in _term_indices(spec, t):
            yield pair
    elif n == 1:
        for idx, v in _term_indices(spec, (t[0], t[1], t[2])):
            yield idx, v
        for idx, v in _term_indices(spec, (t[0], t[2], t[1])):
            yield idx, -v
    elif n % 2 == 1:
        swapped = t[:m - 1] + (t[m], t[m - 1])
        for idx, v in _term_indices(spec, t):
            yield idx, v
        for idx, v in _term_indices(spec, swapped):
            yield idx, -v
    else:
        if naive:
            for sigma in itertools.permutations(t):
                for idx, v in _term_indices(spec, sigma):
                    yield idx, v
        else:
            perms, weight = _arrangements(tuple(sorted(t)))
            for sigma in perms:
                for idx, v in _term_indices(spec, sigma):
                    yield idx, v * weight


def apply_d(spec: AlgebraSpec, f: MultilinearMap, cap: int = DEFAULT_DEGREE_CAP,
            naive: bool = False) -> MultilinearMap:
    """The coboundary of a degree-(arity-1) cochain; output arity + 1."""
    n = f.arity - 1
    check_cap(n + 1, cap)
    d = spec.dim
    coeffs = []
    for t in all_tuples(d, f.arity + 1):
        acc = zero_element(d)
        for idx, v in _output_terms(spec, n, t, naive=naive):
            acc = add(acc, tuple(v * c for c in f.coeffs[tuple_index(idx, d)]))
        coeffs.append(acc)
    return MultilinearMap(f.arity + 1, d, tuple(coeffs))


def index_coboundary_matrix(spec: AlgebraSpec, n: int, cap: int = DEFAULT_DEGREE_CAP) -> Mat:
    """Index-level matrix of d_n: d^{n+2} rows by d^{n+1} columns."""
    check_cap(n + 1, cap)
    d = spec.dim
    m = n + 1
    rows = []
    if n >= 2 and n % 2 == 0:
        # rows depend on the output tuple only through its multiset
        cache = {}
        for t in all_tuples(d, m + 1):
            key = tuple(sorted(t))
            row = cache.get(key)
            if row is None:
                row = {}
                for idx, v in _output_terms(spec, n, t):
                    col = tuple_index(idx, d)
                    nv = row.get(col, 0) + v
                    if nv:
                        row[col] = nv
                    else:
                        row.pop(col, None)
                cache[key] = row
            rows.append(dict(row))
    else:
        for t in all_tuples(d, m + 1):
            row = {}
            for idx, v in _output_terms(spec, n, t):
                col = tuple_index(idx, d)
                nv = row.get(col, 0) + v
                if nv:
                    row[col] = nv
                else:
                    row.pop(col, None)
            rows.append(row)
    return Mat(d ** (m + 1), d ** m, rows)


def expand_index_matrix(mat: Mat, d: int) -> Mat:
    """Kronecker product with the identity on the d output coordinates."""
    rows = []
    for r in mat.rows:
        for k in range(d):
            rows.append({c * d + k: v for c, v in r.items()})
    return Mat(mat.nrows * d, mat.ncols * d, rows)


def tag_subspace(spec: AlgebraSpec, arity: int, tag: str) -> SubspaceBasis:
    if tag == TAG_FULL:
        return canonical_basis(spec.dim, arity)
    if tag == TAG_IDEAL:
        return subspace_ideal_preserving(spec, arity)
    if tag == TAG_BAND:
        return subspace_band_preserving(spec, arity)
    raise ValueError(f"unknown complex tag {tag!r}")


def _tag_is_full(spec: AlgebraSpec, tag: str) -> bool:
    """Ideal-preserving cochains on a field fill the whole space."""
    return tag == TAG_FULL or (tag == TAG_IDEAL and spec.order_mode != ORDER_ATOMIC)


def coboundary_matrix(spec: AlgebraSpec, n: int, tag: str = TAG_FULL,
                      cap: int = DEFAULT_DEGREE_CAP) -> Mat:
    """Flat matrix of d_n on the tag subspace at degree n.

    Columns are the flattened images of the tag's degree-n basis members;
    rows are indexed by the degree-(n+1) ambient canonical basis, so the
    shape is d^{n+3} by (tag dimension at degree n).
    """
    if _tag_is_full(spec, tag):
        if tag == TAG_IDEAL:
            tag_subspace(spec, n + 1, tag)  # raises Unsupported where applicable
        return expand_index_matrix(index_coboundary_matrix(spec, n, cap), spec.dim)
    basis = tag_subspace(spec, n + 1, tag)
    cols = [apply_d(spec, m, cap=cap).flatten() for m in basis.members]
    nrows = spec.dim ** (n + 3)
    rows = [dict() for _ in range(nrows)]
    for j, col in enumerate(cols):
        for i, v in col.items():
            rows[i][j] = v
    return Mat(nrows, len(cols), rows)


@dataclass(frozen=True)
class ComplexLawReport:
    tag: str
    results: tuple  # tuple[(n, bool, first_nonzero_or_None)]

    @property
    def all_zero(self) -> bool:
        return all(ok for _, ok, _ in self.results)


def verify_dd_zero(spec: AlgebraSpec, max_n: int, tag: str = TAG_FULL,
                   cap: int = DEFAULT_DEGREE_CAP) -> ComplexLawReport:
    """Multiply consecutive coboundary matrices and report zero products."""
    check_cap(max_n + 2, cap)
    results = []
    if _tag_is_full(spec, tag):
        mats = [index_coboundary_matrix(spec, n, cap) for n in range(max_n + 2)]
        for n in range(max_n + 1):
            prod = mats[n + 1].matmul(mats[n])
            results.append((n, prod.is_zero(), prod.first_nonzero()))
    else:
        for n in range(max_n + 1):
            src = tag_subspace(spec, n + 1, tag)
            mid = tag_subspace(spec, n + 2, tag)
            mid_rows = [m.flatten() for m in mid.members]
            mid_ech = Echelon(mid_rows).rows()
            # coordinates of d_n images in the degree-(n+1) subspace basis
            coord_cols = []
            for member in src.members:
                img = apply_d(spec, member, cap=cap).flatten()
                coords = solve_in_basis(mid_ech, img)
                if coords is None:
                    raise ValueError(f"subcomplex {tag} is not closed at degree {n}")
                coord_cols.append(coords)
            coord_mat = Mat(len(mid_ech), len(src.members),
                            [{j: coord_cols[j][i] for j in range(len(coord_cols))
                              if coord_cols[j][i]} for i in range(len(mid_ech))])
            # change of basis: echelon rows vs subspace members span the same
            # space, so the product below is zero iff d_{n+1} o d_n is zero
            next_cols = [apply_d(spec, from_rows(spec, n + 1, r), cap=cap).flatten()
                         for r in mid_ech]
            nrows = spec.dim ** (n + 4)
            rows = [dict() for _ in range(nrows)]
            for j, col in enumerate(next_cols):
                for i, v in col.items():
                    rows[i][j] = v
            next_mat = Mat(nrows, len(next_cols), rows)
            prod = next_mat.matmul(coord_mat)
            results.append((n, prod.is_zero(), prod.first_nonzero()))
    return ComplexLawReport(tag, tuple(results))


def from_rows(spec: AlgebraSpec, degree: int, flat_row: dict) -> MultilinearMap:
    from .multilinear import from_flat
    return from_flat(spec.dim, degree + 1, flat_row)


def verify_subcomplex_closure(spec: AlgebraSpec, n: int, tag: str,
                              cap: int = DEFAULT_DEGREE_CAP):
    """True iff d maps the tag subspace at degree n into it at degree n+1.

    Returns (bool, counterexample member or None).
    """
    if tag not in (TAG_IDEAL, TAG_BAND):
        raise ValueError("closure check applies to the ideal and band tags")
    src = tag_subspace(spec, n + 1, tag)
    dst = Echelon(m.flatten() for m in tag_subspace(spec, n + 2, tag).members)
    for member in src.members:
        img = apply_d(spec, member, cap=cap).flatten()
        if not dst.contains(img):
            return (False, member)
    return (True, None)
