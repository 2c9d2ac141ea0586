"""Kernel/image bases, cohomology reports, distinguished quotients, chain maps.

Conventions: under "shifted" the degree-n group is ker d_{n+1} / im d_n
(cocycles are (n+2)-linear), under "standard" it is ker d_n / im d_{n-1}.
Shifted is the default because the chain maps J and K produce 4- and
3-linear cochains, which land exactly in the shifted degree-2 and degree-1
cocycle spaces.
"""

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .algebra import (
    AlgebraSpec, ORDER_ATOMIC, add, basis_element, multiply, sub,
)
from .linalg import (
    Mat, Echelon, column_space, complete_basis, kernel, rref, span_dim,
)
from .multilinear import (
    MultilinearMap, SubspaceBasis, all_tuples, from_flat, tuple_index,
)
from .complex import (
    DEFAULT_DEGREE_CAP, TAG_BAND, TAG_FULL, TAG_IDEAL, _tag_is_full,
    apply_d, check_cap, index_coboundary_matrix, tag_subspace,
)

CONVENTION_SHIFTED = "shifted"
CONVENTION_STANDARD = "standard"
CONVENTIONS = (CONVENTION_SHIFTED, CONVENTION_STANDARD)


def kernel_basis(mat: Mat) -> list:
    """Canonical nullspace basis (sparse rows over mat.ncols)."""
    return kernel(mat)


def image_basis(mat: Mat) -> list:
    """Canonical column-space basis (sparse rows over mat.nrows)."""
    return column_space(mat)


def _expand_index_rows(idx_rows, d: int) -> list:
    """Tensor index-space vectors with each output coordinate direction."""
    out = []
    for r in idx_rows:
        for k in range(d):
            out.append({c * d + k: v for c, v in r.items()})
    return out


def _restricted_kernel_rows(spec, degree, tag, cap):
    """Flat basis of ker(d) within the tag subspace at the given degree."""
    basis = tag_subspace(spec, degree + 1, tag)
    img_cols = [apply_d(spec, m, cap=cap).flatten() for m in basis.members]
    nrows = spec.dim ** (degree + 3)
    rows = [dict() for _ in range(nrows)]
    for j, col in enumerate(img_cols):
        for i, v in col.items():
            rows[i][j] = v
    coeff_kernel = kernel(Mat(nrows, len(img_cols), rows))
    flats = basis.flat_rows()
    out = []
    for comb in coeff_kernel:
        acc = {}
        for j, c in comb.items():
            for col, v in flats[j].items():
                nv = acc.get(col, 0) + c * v
                if nv:
                    acc[col] = nv
                else:
                    acc.pop(col, None)
        out.append(acc)
    return rref(out)


def _restricted_image_rows(spec, src_degree, tag, cap):
    """Flat basis of d(tag subspace at src_degree)."""
    basis = tag_subspace(spec, src_degree + 1, tag)
    return rref([apply_d(spec, m, cap=cap).flatten() for m in basis.members])


def cocycle_space(spec: AlgebraSpec, degree: int, tag: str,
                  cap: int = DEFAULT_DEGREE_CAP) -> list:
    """Flat basis rows of the degree-`degree` cocycles of the tag complex."""
    check_cap(degree + 1, cap)
    if _tag_is_full(spec, tag):
        if tag == TAG_IDEAL:
            tag_subspace(spec, degree + 1, tag)
        idx = kernel(index_coboundary_matrix(spec, degree, cap))
        return _expand_index_rows(idx, spec.dim)
    return _restricted_kernel_rows(spec, degree, tag, cap)


def coboundary_space(spec: AlgebraSpec, degree: int, tag: str,
                     cap: int = DEFAULT_DEGREE_CAP) -> list:
    """Flat basis rows of d(degree-1 cochains) inside degree `degree`."""
    if degree == 0:
        return []
    check_cap(degree, cap)
    if _tag_is_full(spec, tag):
        if tag == TAG_IDEAL:
            tag_subspace(spec, degree, tag)
        idx = column_space(index_coboundary_matrix(spec, degree - 1, cap))
        return _expand_index_rows(idx, spec.dim)
    return _restricted_image_rows(spec, degree - 1, tag, cap)


@dataclass(frozen=True)
class CohomologyReport:
    algebra: str
    degree: int
    tag: str
    convention: str
    dim_cocycles: int
    dim_coboundaries: int
    dim_H: int
    representatives: SubspaceBasis


def cohomology(spec: AlgebraSpec, n: int, tag: str = TAG_FULL,
               convention: str = CONVENTION_SHIFTED,
               cap: int = DEFAULT_DEGREE_CAP) -> CohomologyReport:
    """Exact quotient dimensions and coset representatives at degree n."""
    if convention not in CONVENTIONS:
        raise ValueError(f"unknown convention {convention!r}")
    if convention == CONVENTION_SHIFTED:
        z_degree = n + 1
    else:
        z_degree = n
    check_cap(z_degree + 1, cap)
    if _tag_is_full(spec, tag) and z_degree >= 1:
        # stay at the index level; both spaces factor through it
        if tag == TAG_IDEAL:
            tag_subspace(spec, z_degree + 1, tag)
        d = spec.dim
        z_idx = kernel(index_coboundary_matrix(spec, z_degree, cap))
        b_idx = column_space(index_coboundary_matrix(spec, z_degree - 1, cap))
        reps_idx = complete_basis(b_idx, z_idx)
        dim_z = d * len(z_idx)
        dim_b = d * len(b_idx)
        rep_rows = _expand_index_rows(reps_idx, d)
    else:
        z_rows = cocycle_space(spec, z_degree, tag, cap)
        b_rows = coboundary_space(spec, z_degree, tag, cap)
        rep_rows = complete_basis(b_rows, z_rows)
        dim_z = len(z_rows)
        dim_b = len(b_rows)
    reps = SubspaceBasis(
        z_degree + 1,
        tuple(from_flat(spec.dim, z_degree + 1, r) for r in rep_rows),
    )
    return CohomologyReport(
        algebra=spec.name, degree=n, tag=tag, convention=convention,
        dim_cocycles=dim_z, dim_coboundaries=dim_b,
        dim_H=dim_z - dim_b, representatives=reps,
    )


def multiplier_space(spec: AlgebraSpec) -> SubspaceBasis:
    """Multiplication operators x -> x*w, one per basis w, as arity-1 cochains."""
    d = spec.dim
    members = []
    for k in range(d):
        coeffs = tuple(spec.structure[k][i] for i in range(d))
        members.append(MultilinearMap(1, d, coeffs))
    return SubspaceBasis(1, tuple(members))


def orthomorphism_space(spec: AlgebraSpec) -> SubspaceBasis:
    """Diagonal operators in the atom basis, as arity-1 cochains."""
    if spec.order_mode != ORDER_ATOMIC:
        from .multilinear import OrderStructureRequired
        raise OrderStructureRequired("orthomorphisms need the atomic order")
    d = spec.dim
    members = []
    for k in range(d):
        coeffs = tuple(
            basis_element(d, k) if i == k else tuple(Fraction(0) for _ in range(d))
            for i in range(d)
        )
        members.append(MultilinearMap(1, d, coeffs))
    return SubspaceBasis(1, tuple(members))


@dataclass(frozen=True)
class DistinguishedQuotient:
    kind: str  # "mc" | "oo"
    dim_kernel: int
    dim_image: int
    dim_H: int


def distinguished_quotient(spec: AlgebraSpec, kind: str,
                           cap: int = DEFAULT_DEGREE_CAP) -> DistinguishedQuotient:
    """ker d_1 (within the band subspace for kind=oo) over the restricted d_0 image."""
    if kind == "mc":
        dim_kernel = len(cocycle_space(spec, 1, TAG_FULL, cap))
        restricted = multiplier_space(spec)
    elif kind == "oo":
        dim_kernel = len(_restricted_kernel_rows(spec, 1, TAG_BAND, cap))
        restricted = orthomorphism_space(spec)
    else:
        raise ValueError(f"unknown quotient kind {kind!r}")
    images = [apply_d(spec, m, cap=cap).flatten() for m in restricted.members]
    dim_image = span_dim(images)
    return DistinguishedQuotient(kind, dim_kernel, dim_image, dim_kernel - dim_image)


# ---------------------------------------------------------------------------
# chain maps


def build_K(spec: AlgebraSpec, psi: MultilinearMap,
            cap: int = DEFAULT_DEGREE_CAP) -> MultilinearMap:
    """(x1,x2,x3) -> x1*Psi(x2,x3) - x2*Psi(x1,x3)."""
    if psi.arity != 2:
        raise ValueError("chain maps take arity-2 cochains")
    check_cap(2, cap)
    d = spec.dim
    coeffs = []
    for i, j, k in all_tuples(d, 3):
        coeffs.append(sub(
            multiply(spec, basis_element(d, i), psi.coeff((j, k))),
            multiply(spec, basis_element(d, j), psi.coeff((i, k))),
        ))
    return MultilinearMap(3, d, tuple(coeffs))


def build_J(spec: AlgebraSpec, psi: MultilinearMap,
            cap: int = DEFAULT_DEGREE_CAP) -> MultilinearMap:
    """(x1..x4) -> sum over permutations p of slots {2,3,4} of x1*x_{p2}*Psi(x_{p3},x_{p4})."""
    if psi.arity != 2:
        raise ValueError("chain maps take arity-2 cochains")
    check_cap(3, cap)
    d = spec.dim
    coeffs = []
    for t in all_tuples(d, 4):
        acc = tuple(Fraction(0) for _ in range(d))
        for p in itertools.permutations(t[1:]):
            term = multiply(spec, basis_element(d, t[0]), basis_element(d, p[0]))
            term = multiply(spec, term, psi.coeff((p[1], p[2])))
            acc = add(acc, term)
        coeffs.append(acc)
    return MultilinearMap(4, d, tuple(coeffs))


def build_J_even(spec: AlgebraSpec, n: int, psi: MultilinearMap,
                 cap: int = DEFAULT_DEGREE_CAP) -> MultilinearMap:
    """Arity 2n+2: sum over permutations p of slots {2..2n+2} of
    x1 * x_{p(2)} ... x_{p(2n)} * Psi(x_{p(2n+1)}, x_{p(2n+2)}).

    Specializes to build_J at n = 1.
    """
    if psi.arity != 2:
        raise ValueError("chain maps take arity-2 cochains")
    if n < 1:
        raise ValueError("n must be >= 1")
    arity = 2 * n + 2
    check_cap(arity - 1, cap)
    d = spec.dim
    coeffs = []
    for t in all_tuples(d, arity):
        tail = tuple(sorted(t[1:]))
        perms = sorted(set(itertools.permutations(tail)))
        weight = Fraction(factorial(len(tail)) // len(perms))
        acc = tuple(Fraction(0) for _ in range(d))
        for p in perms:
            term = basis_element(d, t[0])
            for q in p[: 2 * n - 1]:
                term = multiply(spec, term, basis_element(d, q))
            term = multiply(spec, term, psi.coeff((p[2 * n - 1], p[2 * n])))
            acc = add(acc, tuple(weight * c for c in term))
        coeffs.append(acc)
    return MultilinearMap(arity, d, tuple(coeffs))


def build_J_odd(spec: AlgebraSpec, n: int, psi: MultilinearMap,
                cap: int = DEFAULT_DEGREE_CAP) -> MultilinearMap:
    """Arity 2n+1: (prod_{i<=2n-2} x_i) * (x_{2n-1}Psi(x_{2n},x_{2n+1})
    - x_{2n}Psi(x_{2n-1},x_{2n+1})).

    The empty product is the unit, so n = 1 recovers build_K.
    """
    if psi.arity != 2:
        raise ValueError("chain maps take arity-2 cochains")
    if n < 1:
        raise ValueError("n must be >= 1")
    arity = 2 * n + 1
    check_cap(arity - 1, cap)
    d = spec.dim
    coeffs = []
    for t in all_tuples(d, arity):
        prefix = spec.unit
        for q in t[: 2 * n - 2]:
            prefix = multiply(spec, prefix, basis_element(d, q))
        a, b, c = t[2 * n - 2], t[2 * n - 1], t[2 * n]
        bracket = sub(
            multiply(spec, basis_element(d, a), psi.coeff((b, c))),
            multiply(spec, basis_element(d, b), psi.coeff((a, c))),
        )
        coeffs.append(multiply(spec, prefix, bracket))
    return MultilinearMap(arity, d, tuple(coeffs))


CHAIN_MAPS = ("J", "K", "Jeven", "Jodd")


def _chain_map_fn(name: str, n: int):
    if name == "J":
        return lambda spec, psi, cap: build_J(spec, psi, cap), 3
    if name == "K":
        return lambda spec, psi, cap: build_K(spec, psi, cap), 2
    if name == "Jeven":
        return lambda spec, psi, cap: build_J_even(spec, n, psi, cap), 2 * n + 1
    if name == "Jodd":
        return lambda spec, psi, cap: build_J_odd(spec, n, psi, cap), 2 * n
    raise ValueError(f"unknown chain map {name!r}")


@dataclass(frozen=True)
class CheckResult:
    ok: bool
    witness: object = None  # reproducible by direct evaluation


@dataclass(frozen=True)
class AuditReport:
    algebra: str
    map_name: str
    n: int
    convention: str
    target_degree: int
    cocycle_preservation: CheckResult
    coboundary_preservation: CheckResult
    injectivity: CheckResult
    evaluator_agreement: bool


def audit_chain_map(spec: AlgebraSpec, map_name: str, n: int = 1,
                    convention: str = CONVENTION_SHIFTED,
                    cap: int = DEFAULT_DEGREE_CAP) -> AuditReport:
    """Measure cocycle/coboundary preservation and injectivity of a chain map.

    The audited spaces are fixed by the image arity (the unique type-correct
    choice); the convention only relabels the target degree.  Verdicts are
    measured, never assumed.
    """
    if convention not in CONVENTIONS:
        raise ValueError(f"unknown convention {convention!r}")
    fn, g = _chain_map_fn(map_name, n)  # image lives in degree g
    check_cap(g + 1, cap)
    d = spec.dim

    ker_d1 = cocycle_space(spec, 1, TAG_FULL, cap)
    mult_images = rref([apply_d(spec, m, cap=cap).flatten()
                        for m in multiplier_space(spec).members])

    def image_of(flat_row):
        psi = from_flat(d, 2, flat_row)
        return fn(spec, psi, cap)

    # cocycle preservation: images of ker d_1 must be killed by d_g
    cocycle = CheckResult(True)
    agreement = True
    naive_cost = (d ** (g + 2)) * factorial(g + 2)
    for row in ker_d1:
        img = image_of(row)
        dd = apply_d(spec, img, cap=cap)
        if agreement and g % 2 == 0 and naive_cost <= 2_000_000:
            dd_naive = apply_d(spec, img, cap=cap, naive=True)
            agreement = agreement and dd == dd_naive
        if not dd.is_zero():
            for flat, e in enumerate(dd.coeffs):
                for k, v in enumerate(e):
                    if v:
                        cocycle = CheckResult(False, {
                            "input": row, "tuple_flat": flat, "coord": k, "value": v,
                        })
                        break
                if not cocycle.ok:
                    break
        if not cocycle.ok:
            break

    # coboundary preservation: images of d_0(multipliers) must lie in im d_{g-1}
    b_target = Echelon(coboundary_space(spec, g, TAG_FULL, cap))
    coboundary = CheckResult(True)
    for row in mult_images:
        img_flat = image_of(row).flatten()
        if not b_target.contains(img_flat):
            coboundary = CheckResult(False, {"input": row, "image": img_flat})
            break

    # injectivity: {v in ker d_1 : image(v) in im d_{g-1}} must lie in d_0(multipliers)
    img_rows = [image_of(row).flatten() for row in ker_d1]
    b_rows = b_target.rows()
    r = len(ker_d1)
    ncols_flat = d ** (g + 2)
    stacked_rows = [dict() for _ in range(ncols_flat)]
    for j, col in enumerate(img_rows):
        for i, v in col.items():
            stacked_rows[i][j] = v
    for j, col in enumerate(b_rows):
        for i, v in col.items():
            stacked_rows[i][r + j] = v
    stacked = Mat(ncols_flat, r + len(b_rows), stacked_rows)
    injective = CheckResult(True)
    mult_ech = Echelon(mult_images)
    for kvec in kernel(stacked):
        comb = {j: v for j, v in kvec.items() if j < r}
        if not comb:
            continue
        acc = {}
        for j, c in comb.items():
            for col, v in ker_d1[j].items():
                nv = acc.get(col, 0) + c * v
                if nv:
                    acc[col] = nv
                else:
                    acc.pop(col, None)
        if not mult_ech.contains(acc):
            injective = CheckResult(False, {"cocycle": acc})
            break

    target_degree = g - 1 if convention == CONVENTION_SHIFTED else g
    return AuditReport(
        algebra=spec.name, map_name=map_name, n=n, convention=convention,
        target_degree=target_degree, cocycle_preservation=cocycle,
        coboundary_preservation=coboundary, injectivity=injective,
        evaluator_agreement=agreement,
    )
