"""Multilinear cochains on an algebra, stored as exact coefficient tensors.

An arity-m cochain is determined by its values on basis tuples; we store
those d^m Element values in lexicographic tuple order.  Flattened vectors
are indexed (i_1, ..., i_m, output-coordinate), row-major with the output
coordinate fastest, which fixes the column convention for every matrix in
the chain complex.
"""

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .algebra import (
    AlgebraSpec, Element, ORDER_ATOMIC, ORDER_NONE, DOMAIN_ASSERTED,
    add, basis_element, multiply, scale, zero_element,
)
from .linalg import span_dim


class OrderStructureRequired(ValueError):
    """Operation needs the atomic lattice order."""


class UnsupportedAlgebra(ValueError):
    """Ideal lattice is not representable for this algebra."""


def tuple_index(idx: tuple, d: int) -> int:
    flat = 0
    for i in idx:
        flat = flat * d + i
    return flat


def all_tuples(d: int, m: int):
    return itertools.product(range(d), repeat=m)


@dataclass(frozen=True)
class MultilinearMap:
    arity: int
    dim: int
    coeffs: tuple  # tuple[Element], length dim**arity, lexicographic

    def coeff(self, idx: tuple) -> Element:
        return self.coeffs[tuple_index(idx, self.dim)]

    def eval(self, args) -> Element:
        """Multilinear expansion over all basis index tuples."""
        if len(args) != self.arity:
            raise ValueError(f"expected {self.arity} arguments, got {len(args)}")
        d = self.dim
        for a in args:
            if len(a) != d:
                raise ValueError("argument dimension mismatch")
        out = [Fraction(0)] * d
        for flat, idx in enumerate(all_tuples(d, self.arity)):
            f = Fraction(1)
            for slot, i in enumerate(idx):
                f *= args[slot][i]
                if not f:
                    break
            if not f:
                continue
            for k, c in enumerate(self.coeffs[flat]):
                if c:
                    out[k] += f * c
        return tuple(out)

    def flatten(self) -> dict:
        """Sparse flat vector of length dim**arity * dim."""
        d = self.dim
        vec = {}
        for flat, e in enumerate(self.coeffs):
            base = flat * d
            for k, c in enumerate(e):
                if c:
                    vec[base + k] = c
        return vec

    def is_zero(self) -> bool:
        return all(not any(e) for e in self.coeffs)


def zero_map(d: int, arity: int) -> MultilinearMap:
    z = zero_element(d)
    return MultilinearMap(arity, d, tuple(z for _ in range(d ** arity)))


def from_coeff_function(spec: AlgebraSpec, arity: int, fn) -> MultilinearMap:
    """Build a cochain from its values on basis tuples."""
    d = spec.dim
    return MultilinearMap(arity, d, tuple(fn(idx) for idx in all_tuples(d, arity)))


def from_flat(d: int, arity: int, vec: dict) -> MultilinearMap:
    coeffs = []
    for flat in range(d ** arity):
        base = flat * d
        coeffs.append(tuple(vec.get(base + k, Fraction(0)) for k in range(d)))
    return MultilinearMap(arity, d, tuple(coeffs))


def unit_tensor(d: int, arity: int, flat: int, coord: int) -> MultilinearMap:
    coeffs = [zero_element(d)] * (d ** arity)
    coeffs[flat] = basis_element(d, coord)
    return MultilinearMap(arity, d, tuple(coeffs))


@dataclass(frozen=True)
class SubspaceBasis:
    arity: int
    members: tuple  # tuple[MultilinearMap], linearly independent

    def __len__(self):
        return len(self.members)

    def flat_rows(self):
        return [m.flatten() for m in self.members]

    def verify_independent(self) -> bool:
        return span_dim(self.flat_rows()) == len(self.members)


def canonical_basis(d: int, arity: int) -> SubspaceBasis:
    """The d^{arity+1} unit tensors in lexicographic (tuple, coord) order."""
    members = [
        unit_tensor(d, arity, flat, k)
        for flat in range(d ** arity)
        for k in range(d)
    ]
    return SubspaceBasis(arity, tuple(members))


def diagonal_basis(spec: AlgebraSpec, arity: int) -> SubspaceBasis:
    """Cochains supported on a single atom: (b_k, ..., b_k) -> b_k."""
    d = spec.dim

    def member(k):
        coeffs = [zero_element(d)] * (d ** arity)
        coeffs[tuple_index((k,) * arity, d)] = basis_element(d, k)
        return MultilinearMap(arity, d, tuple(coeffs))

    return SubspaceBasis(arity, tuple(member(k) for k in range(d)))


def subspace_ideal_preserving(spec: AlgebraSpec, arity: int) -> SubspaceBasis:
    """Cochains mapping ideal tuples into the product of the ideals.

    A field has only trivial ideals, so the constraint is vacuous; in an
    atomic algebra the ideals are the coordinate subspaces and the
    constraint forces the diagonal support.
    """
    if spec.order_mode == ORDER_ATOMIC:
        return diagonal_basis(spec, arity)
    if spec.order_mode == ORDER_NONE and spec.domain_status == DOMAIN_ASSERTED:
        return canonical_basis(spec.dim, arity)
    raise UnsupportedAlgebra(
        "ideal-preserving subspace is only defined for asserted domains and atomic algebras"
    )


def subspace_band_preserving(spec: AlgebraSpec, arity: int) -> SubspaceBasis:
    """Separately band preserving cochains; atomic bands are coordinate subspaces."""
    if spec.order_mode != ORDER_ATOMIC:
        raise OrderStructureRequired("band structure requires atomic order")
    return diagonal_basis(spec, arity)


def product_cochain_subspace(spec: AlgebraSpec, arity: int) -> SubspaceBasis:
    """The d-dimensional space {(x_1..x_m) -> (prod x_i) * w}, one member per basis w."""
    d = spec.dim

    def product_of(idx) -> Element:
        acc = spec.unit
        for i in idx:
            acc = multiply(spec, acc, basis_element(d, i))
        return acc

    products = [product_of(idx) for idx in all_tuples(d, arity)]
    members = []
    for k in range(d):
        w = basis_element(d, k)
        coeffs = tuple(multiply(spec, p, w) for p in products)
        members.append(MultilinearMap(arity, d, coeffs))
    return SubspaceBasis(arity, tuple(members))


def is_hochschild_2cocycle(spec: AlgebraSpec, psi: MultilinearMap):
    """Check a*Psi(b,c) + Psi(a,bc) - Psi(ab,c) - c*Psi(a,b) = 0 on basis triples.

    Returns (True, None) or (False, first_failing_triple).
    """
    if psi.arity != 2:
        raise ValueError("Hochschild 2-cocycle test needs an arity-2 cochain")
    d = spec.dim
    for i, j, k in all_tuples(d, 3):
        a, b, c = (basis_element(d, t) for t in (i, j, k))
        lhs = add(
            multiply(spec, a, psi.coeff((j, k))),
            psi.eval([a, spec.structure[j][k]]),
        )
        rhs = add(
            psi.eval([spec.structure[i][j], c]),
            multiply(spec, c, psi.coeff((i, j))),
        )
        if lhs != rhs:
            return (False, (i, j, k))
    return (True, None)


def symmetry_check(m: MultilinearMap, positions: tuple) -> str:
    """Classify behavior under swapping two slots: symmetric/antisymmetric/neither.

    positions are 1-based slot indices.
    """
    p, q = positions
    if not (1 <= p <= m.arity and 1 <= q <= m.arity and p != q):
        raise ValueError(f"invalid slot pair {positions} for arity {m.arity}")
    sym = True
    antisym = True
    for idx in all_tuples(m.dim, m.arity):
        swapped = list(idx)
        swapped[p - 1], swapped[q - 1] = swapped[q - 1], swapped[p - 1]
        a = m.coeff(idx)
        b = m.coeff(tuple(swapped))
        if a != b:
            sym = False
        if a != scale(-1, b):
            antisym = False
        if not sym and not antisym:
            return "neither"
    return "symmetric" if sym else "antisymmetric"
