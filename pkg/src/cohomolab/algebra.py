"""Finite-dimensional commutative unital algebras over Q, from structure constants.

An algebra is a dimension d, a structure tensor c[i][j] giving the product
of basis elements b_i * b_j as a coordinate vector, and a unit element.
Two constructors cover the representable families: number fields Q[t]/(p)
in the power basis, and atomic pointwise algebras (idempotent atoms,
all-ones unit) carrying the lattice order.
"""

from dataclasses import dataclass, replace
from fractions import Fraction

from .linalg import Mat, kernel, column_space, span_contains
from .rng import Lcg64

Element = tuple  # tuple[Fraction, ...]

ORDER_NONE = "none"
ORDER_ATOMIC = "atomic"

DOMAIN_ASSERTED = "asserted"
DOMAIN_REFUTED = "refuted"
DOMAIN_UNCHECKED = "unchecked"


class ShapeError(ValueError):
    """Structure tensor has the wrong shape."""


def frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def element(coords) -> Element:
    return tuple(frac(x) for x in coords)


def zero_element(d: int) -> Element:
    return (Fraction(0),) * d


def basis_element(d: int, i: int) -> Element:
    return tuple(Fraction(1 if j == i else 0) for j in range(d))


def add(x: Element, y: Element) -> Element:
    return tuple(a + b for a, b in zip(x, y))


def sub(x: Element, y: Element) -> Element:
    return tuple(a - b for a, b in zip(x, y))


def scale(c, x: Element) -> Element:
    c = frac(c)
    return tuple(c * a for a in x)


def is_zero(x: Element) -> bool:
    return not any(x)


@dataclass(frozen=True)
class AlgebraSpec:
    name: str
    dim: int
    structure: tuple  # structure[i][j] = Element, the product b_i * b_j
    unit: Element
    order_mode: str = ORDER_NONE
    domain_status: str = DOMAIN_UNCHECKED


@dataclass(frozen=True)
class Violation:
    law: str  # commutativity | associativity | unit | atomic
    indices: tuple
    detail: str


def _check_shape(spec: AlgebraSpec):
    d = spec.dim
    if d < 1:
        raise ShapeError("dim must be >= 1")
    if len(spec.structure) != d:
        raise ShapeError(f"structure has {len(spec.structure)} rows, expected {d}")
    for i, row in enumerate(spec.structure):
        if len(row) != d:
            raise ShapeError(f"structure row {i} has {len(row)} entries, expected {d}")
        for j, e in enumerate(row):
            if len(e) != d:
                raise ShapeError(f"structure entry ({i},{j}) has length {len(e)}, expected {d}")
    if len(spec.unit) != d:
        raise ShapeError(f"unit has length {len(spec.unit)}, expected {d}")


def multiply(spec: AlgebraSpec, x: Element, y: Element) -> Element:
    """Bilinear expansion sum_{i,j} x_i y_j c[i][j]."""
    d = spec.dim
    if len(x) != d or len(y) != d:
        raise ValueError("element dimension mismatch")
    out = [Fraction(0)] * d
    for i, xi in enumerate(x):
        if not xi:
            continue
        row = spec.structure[i]
        for j, yj in enumerate(y):
            if not yj:
                continue
            cij = row[j]
            f = xi * yj
            for k, ck in enumerate(cij):
                if ck:
                    out[k] += f * ck
    return tuple(out)


def validate_algebra(spec: AlgebraSpec) -> list:
    """All violated algebra laws, each with a witnessing index tuple."""
    _check_shape(spec)
    d = spec.dim
    out = []
    for i in range(d):
        for j in range(i + 1, d):
            if spec.structure[i][j] != spec.structure[j][i]:
                out.append(Violation("commutativity", (i, j),
                                     f"c[{i}][{j}] != c[{j}][{i}]"))
    for i in range(d):
        for j in range(d):
            for k in range(d):
                left = multiply(spec, spec.structure[i][j], basis_element(d, k))
                right = multiply(spec, basis_element(d, i), spec.structure[j][k])
                if left != right:
                    out.append(Violation("associativity", (i, j, k),
                                         f"(b{i}b{j})b{k} != b{i}(b{j}b{k})"))
    for i in range(d):
        if multiply(spec, spec.unit, basis_element(d, i)) != basis_element(d, i):
            out.append(Violation("unit", (i,), f"e*b{i} != b{i}"))
    if spec.order_mode == ORDER_ATOMIC:
        for i in range(d):
            for j in range(d):
                want = basis_element(d, i) if i == j else zero_element(d)
                if spec.structure[i][j] != want:
                    out.append(Violation("atomic", (i, j),
                                         f"atomic law fails at c[{i}][{j}]"))
        if spec.unit != tuple(Fraction(1) for _ in range(d)):
            out.append(Violation("atomic", (), "atomic unit must be all-ones"))
    return out


def regular_representation(spec: AlgebraSpec, x: Element) -> list:
    """Matrix M (dense rows) with M @ y = x*y for all y."""
    d = spec.dim
    cols = [multiply(spec, x, basis_element(d, j)) for j in range(d)]
    return [[cols[j][i] for j in range(d)] for i in range(d)]


def invert(spec: AlgebraSpec, x: Element):
    """Multiplicative inverse of x, or None when x is not invertible."""
    d = spec.dim
    m = Mat.from_dense(regular_representation(spec, x))
    if kernel(m):
        return None
    # solve M y = unit by augmented elimination
    aug = Mat(d, d + 1, [dict(m.rows[i]) for i in range(d)])
    for i in range(d):
        if spec.unit[i]:
            aug.rows[i][d] = spec.unit[i]
    ker = kernel(aug)
    for vec in ker:
        t = vec.get(d)
        if t:
            return tuple(-vec.get(j, Fraction(0)) / t for j in range(d))
    raise AssertionError("invertible regular representation must solve")


def build_number_field(min_poly, name: str = "", trials: int = 64, seed: int = 0) -> AlgebraSpec:
    """Q[t]/(p) in the power basis 1, t, ..., t^{d-1}.

    min_poly is the coefficient list of p in ascending degree order,
    including the leading coefficient, which must be 1.
    """
    coeffs = [frac(c) for c in min_poly]
    d = len(coeffs) - 1
    if d < 1:
        raise ValueError("minimal polynomial must have degree >= 1")
    if coeffs[-1] != 1:
        raise ValueError("minimal polynomial must be monic")
    # powers[k] = coordinates of t^k, k up to 2d-2, via the companion recurrence
    powers = [basis_element(d, k) for k in range(d)]
    for _ in range(d, 2 * d - 1):
        prev = powers[-1]
        shifted = [Fraction(0)] + list(prev[: d - 1])
        top = prev[d - 1]
        nxt = [shifted[k] - top * coeffs[k] for k in range(d)]
        powers.append(tuple(nxt))
    structure = tuple(
        tuple(powers[i + j] for j in range(d)) for i in range(d)
    )
    spec = AlgebraSpec(
        name=name or f"numberfield_deg{d}",
        dim=d,
        structure=structure,
        unit=basis_element(d, 0),
        order_mode=ORDER_NONE,
    )
    witness = zero_divisor_falsifier(spec, trials=trials, seed=seed)
    status = DOMAIN_REFUTED if witness is not None else DOMAIN_ASSERTED
    return replace(spec, domain_status=status)


def build_atomic(d: int, name: str = "") -> AlgebraSpec:
    """Pointwise algebra on d atoms: b_i b_j = delta_ij b_i, unit all-ones."""
    if d < 1:
        raise ValueError("atomic algebra needs at least one atom")
    structure = tuple(
        tuple(basis_element(d, i) if i == j else zero_element(d) for j in range(d))
        for i in range(d)
    )
    status = DOMAIN_ASSERTED if d == 1 else DOMAIN_REFUTED
    return AlgebraSpec(
        name=name or f"atomic_{d}",
        dim=d,
        structure=structure,
        unit=tuple(Fraction(1) for _ in range(d)),
        order_mode=ORDER_ATOMIC,
        domain_status=status,
    )


def zero_divisor_falsifier(spec: AlgebraSpec, trials: int = 64, seed: int = 0):
    """Search for nonzero x, y with x*y = 0.

    Checks all basis pairs, then `trials` pseudorandom pairs with
    coordinates in [-8, 8].  Returns the witness pair or None; None is
    refutation-only evidence, not a proof of domain-hood.
    """
    d = spec.dim
    for i in range(d):
        for j in range(d):
            if is_zero(spec.structure[i][j]):
                return (basis_element(d, i), basis_element(d, j))
    rng = Lcg64(seed)
    for _ in range(trials):
        x = tuple(Fraction(rng.randint(-8, 8)) for _ in range(d))
        y = tuple(Fraction(rng.randint(-8, 8)) for _ in range(d))
        if is_zero(x) or is_zero(y):
            continue
        if is_zero(multiply(spec, x, y)):
            return (x, y)
    return None


def assess_domain(spec: AlgebraSpec, trials: int = 64, seed: int = 0) -> AlgebraSpec:
    """Attach the falsifier outcome to the spec's domain flag."""
    witness = zero_divisor_falsifier(spec, trials=trials, seed=seed)
    status = DOMAIN_REFUTED if witness is not None else DOMAIN_ASSERTED
    return replace(spec, domain_status=status)


def principal_ideal_contains(spec: AlgebraSpec, a: Element, y: Element) -> bool:
    """Exact membership test y in a*A (column space of multiplication by a)."""
    cols = column_space(Mat.from_dense(regular_representation(spec, a)))
    vec = {i: v for i, v in enumerate(y) if v}
    return span_contains(cols, vec)
