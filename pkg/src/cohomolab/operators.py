"""Operator predicates (multiplier, local multiplier, band preserving,
orthomorphism, n-multiplier) and algebra-level classification verdicts.

Local properties quantify over all elements, so a sampled search can only
refute; the verdict "yes" is returned only when a finite proof exists
(field or atomic structure shortcut, or an exhaustive basis check), and
"unknown_sampled" otherwise.
"""

from dataclasses import dataclass
from fractions import Fraction

from .algebra import (
    AlgebraSpec, DOMAIN_ASSERTED, ORDER_ATOMIC, ORDER_NONE,
    add, basis_element, invert, is_zero, multiply, principal_ideal_contains,
)
from .multilinear import MultilinearMap, OrderStructureRequired, all_tuples
from .rng import Lcg64
from .complex import DEFAULT_DEGREE_CAP
from .cohomology import distinguished_quotient

YES = "yes"
NO = "no"
UNKNOWN = "unknown_sampled"


@dataclass(frozen=True)
class OperatorVerdict:
    prop: str
    verdict: str  # yes | no | unknown_sampled
    witness: object = None
    certificate: object = None


def apply_operator(matrix, x):
    d = len(matrix)
    return tuple(
        sum((matrix[i][j] * x[j] for j in range(d)), Fraction(0))
        for i in range(d)
    )


def sample_elements(spec: AlgebraSpec, trials: int, seed: int):
    """Deterministic sample: basis, pairwise basis sums, seeded random."""
    d = spec.dim
    out = [basis_element(d, i) for i in range(d)]
    for i in range(d):
        for j in range(i + 1, d):
            out.append(add(basis_element(d, i), basis_element(d, j)))
    rng = Lcg64(seed)
    for _ in range(trials):
        out.append(tuple(Fraction(rng.randint(-8, 8)) for _ in range(d)))
    return out


def is_multiplier(spec: AlgebraSpec, matrix) -> OperatorVerdict:
    """T(a) = a * T(e); checking the basis suffices by linearity."""
    d = spec.dim
    if len(matrix) != d or any(len(r) != d for r in matrix):
        raise ValueError("operator matrix dimension mismatch")
    w = apply_operator(matrix, spec.unit)
    for i in range(d):
        b = basis_element(d, i)
        if apply_operator(matrix, b) != multiply(spec, b, w):
            return OperatorVerdict("multiplier", NO, witness=b)
    return OperatorVerdict("multiplier", YES, certificate=w)


def _is_diagonal(matrix) -> bool:
    return all(not v for i, row in enumerate(matrix) for j, v in enumerate(row) if i != j)


def is_local_multiplier(spec: AlgebraSpec, matrix, trials: int = 64,
                        seed: int = 0) -> OperatorVerdict:
    """T(a) in a*A for every a; decision ladder per algebra structure.

    Fields: every nonzero element is invertible, so locality is automatic
    once the sampled invertibility probe backs the domain assertion.
    Atomic: locality is equivalent to diagonality.  Otherwise: sampled
    membership tests, refutation-only.
    """
    d = spec.dim
    samples = sample_elements(spec, trials, seed)
    if spec.order_mode == ORDER_NONE and spec.domain_status == DOMAIN_ASSERTED:
        if all(is_zero(a) or invert(spec, a) is not None for a in samples):
            return OperatorVerdict("local_multiplier", YES)
    if spec.order_mode == ORDER_ATOMIC:
        if _is_diagonal(matrix):
            return OperatorVerdict("local_multiplier", YES)
        for i in range(d):
            b = basis_element(d, i)
            if not principal_ideal_contains(spec, b, apply_operator(matrix, b)):
                return OperatorVerdict("local_multiplier", NO, witness=b)
        # non-diagonal but basis-locally fine cannot happen in atomic mode
        return OperatorVerdict("local_multiplier", YES)
    for a in samples:
        if not principal_ideal_contains(spec, a, apply_operator(matrix, a)):
            return OperatorVerdict("local_multiplier", NO, witness=a)
    return OperatorVerdict("local_multiplier", UNKNOWN)


def is_band_preserving(spec: AlgebraSpec, matrix) -> OperatorVerdict:
    """T(x) disjoint from y whenever x is disjoint from y; diagonal in the atom basis."""
    if spec.order_mode != ORDER_ATOMIC:
        raise OrderStructureRequired("band preservation needs the atomic order")
    d = spec.dim
    for j in range(d):
        col = apply_operator(matrix, basis_element(d, j))
        for i in range(d):
            if i != j and col[i]:
                return OperatorVerdict(
                    "band_preserving", NO,
                    witness=(basis_element(d, j), basis_element(d, i)),
                )
    return OperatorVerdict("band_preserving", YES)


def is_orthomorphism(spec: AlgebraSpec, matrix) -> OperatorVerdict:
    """Order bounded band preserving; in the finite atomic setting the
    entrywise absolute matrix always certifies order boundedness."""
    bp = is_band_preserving(spec, matrix)
    if bp.verdict != YES:
        return OperatorVerdict("orthomorphism", NO, witness=bp.witness)
    bound = [[abs(v) for v in row] for row in matrix]
    return OperatorVerdict("orthomorphism", YES, certificate=bound)


def is_n_multiplier(spec: AlgebraSpec, psi: MultilinearMap) -> OperatorVerdict:
    """Every slot map frozen at basis tuples must be a multiplier."""
    if psi.arity < 2:
        raise ValueError("n-multiplier needs arity >= 2")
    d = spec.dim
    for slot in range(psi.arity):
        for frozen in all_tuples(d, psi.arity - 1):
            args = [basis_element(d, i) for i in frozen]
            args.insert(slot, spec.unit)
            unit_val = psi.eval(args)
            for i in range(d):
                idx = frozen[:slot] + (i,) + frozen[slot:]
                if psi.coeff(idx) != multiply(spec, basis_element(d, i), unit_val):
                    return OperatorVerdict(
                        "n_multiplier", NO, witness={"slot": slot + 1, "tuple": frozen,
                                                     "basis": i},
                    )
    return OperatorVerdict(
        "n_multiplier", YES,
        certificate=psi.eval([spec.unit] * psi.arity),
    )


def local_n_multiplier_audit(spec: AlgebraSpec, psi: MultilinearMap,
                             trials: int = 64, seed: int = 0) -> OperatorVerdict:
    """Necessary-condition audit: Psi(a_1..a_m) in (prod a_i)*A on sampled tuples."""
    if psi.arity < 2:
        raise ValueError("local n-multiplier needs arity >= 2")
    d = spec.dim
    m = psi.arity

    def check(args):
        prod = spec.unit
        for a in args:
            prod = multiply(spec, prod, a)
        return principal_ideal_contains(spec, prod, psi.eval(list(args)))

    tuples = [tuple(basis_element(d, i) for i in idx) for idx in all_tuples(d, m)]
    sums = [add(basis_element(d, i), basis_element(d, j))
            for i in range(d) for j in range(i + 1, d)]
    tuples.extend((s,) * m for s in sums)
    rng = Lcg64(seed)
    pool = sample_elements(spec, trials, seed)
    for _ in range(trials):
        tuples.append(tuple(pool[rng.randint(0, len(pool) - 1)] for _ in range(m)))
    for args in tuples:
        if not check(args):
            return OperatorVerdict("local_n_multiplier", NO, witness=args)
    if spec.order_mode == ORDER_NONE and spec.domain_status == DOMAIN_ASSERTED:
        if all(is_zero(a) or invert(spec, a) is not None
               for a in sample_elements(spec, trials, seed)):
            return OperatorVerdict("local_n_multiplier", YES)
    if spec.order_mode == ORDER_ATOMIC:
        # basis tuples were checked exhaustively, which decides atomic locality
        return OperatorVerdict("local_n_multiplier", YES)
    return OperatorVerdict("local_n_multiplier", UNKNOWN)


@dataclass(frozen=True)
class ClassificationReport:
    algebra: str
    domain_status: str
    kadison: OperatorVerdict
    wickstead: OperatorVerdict  # None when the order is trivial
    h0mc_dim: int
    h0oo_dim: int  # None when the order is trivial


def _conjugation_like(d: int):
    """Identity with the second basis direction negated."""
    m = [[Fraction(1 if i == j else 0) for j in range(d)] for i in range(d)]
    m[1][1] = Fraction(-1)
    return m


def classify(spec: AlgebraSpec, trials: int = 64, seed: int = 0,
             cap: int = DEFAULT_DEGREE_CAP) -> ClassificationReport:
    """Kadison/Wickstead verdicts with operator witnesses and quotient dims."""
    d = spec.dim
    h0mc = distinguished_quotient(spec, "mc", cap).dim_H
    h0oo = None
    wickstead = None
    if spec.order_mode == ORDER_ATOMIC:
        h0oo = distinguished_quotient(spec, "oo", cap).dim_H
        wickstead = OperatorVerdict("wickstead", YES if h0oo == 0 else NO,
                                    certificate={"h0oo_dim": h0oo})

    if spec.order_mode == ORDER_ATOMIC:
        # local multipliers are diagonal, hence multipliers
        kadison = OperatorVerdict("kadison", YES)
    elif d == 1:
        kadison = OperatorVerdict("kadison", YES)
    elif spec.domain_status == DOMAIN_ASSERTED:
        witness = _conjugation_like(d)
        local = is_local_multiplier(spec, witness, trials, seed)
        mult = is_multiplier(spec, witness)
        if local.verdict == YES and mult.verdict == NO:
            kadison = OperatorVerdict("kadison", NO, witness=witness)
        else:
            kadison = OperatorVerdict("kadison", UNKNOWN)
    else:
        kadison = OperatorVerdict("kadison", UNKNOWN)

    return ClassificationReport(
        algebra=spec.name, domain_status=spec.domain_status,
        kadison=kadison, wickstead=wickstead, h0mc_dim=h0mc, h0oo_dim=h0oo,
    )
