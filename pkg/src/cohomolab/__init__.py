"""Exact cohomology of finite-dimensional commutative unital algebras.

Everything is computed over the rationals with exact arithmetic; all
pseudorandom sampling is seeded and bit-reproducible.
"""

from .algebra import (
    AlgebraSpec, assess_domain, build_atomic, build_number_field, invert,
    multiply, regular_representation, validate_algebra, zero_divisor_falsifier,
)
from .multilinear import (
    MultilinearMap, SubspaceBasis, canonical_basis, is_hochschild_2cocycle,
    product_cochain_subspace, subspace_band_preserving,
    subspace_ideal_preserving, symmetry_check,
)
from .complex import (
    DEFAULT_DEGREE_CAP, DegreeCapExceeded, apply_d, coboundary_matrix,
    verify_dd_zero, verify_subcomplex_closure,
)
from .cohomology import (
    audit_chain_map, build_J, build_J_even, build_J_odd, build_K, cohomology,
    distinguished_quotient, image_basis, kernel_basis,
)
from .operators import (
    classify, is_band_preserving, is_local_multiplier, is_multiplier,
    is_n_multiplier, is_orthomorphism, local_n_multiplier_audit,
)
from .fileformat import parse_algebra_file, parse_algebra_text, serialize_algebra
