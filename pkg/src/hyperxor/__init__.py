"""Hypercomplex algebras on binary indices.

Basis elements are indexed by bit masks of principal units; products follow
``e_p e_q = s(p, q) e_{p ^ q}``. Commutative algebras with invertible unit
squares diagonalize through a Walsh-Hadamard transform, which gives an
O(n 2^n) multiplication engine, real powers and conjugate expressions.
"""

from . import kernels
from .algebra import (
    QUATERNION_TABLES,
    AlgebraSignature,
    MulTables,
    basis_product_oracle,
    count_squares,
    index,
    multiplier,
    preset,
    resolve,
    tables,
)
from .bitops import bin_k, bit_inner, popcount, swap_count, val_k
from .conjugate import (
    ConjugateExpr,
    apply_conj,
    compose,
    diagonal_conjugates,
    eval_expr,
    polar_decompose,
    power,
    product,
)
from .diagonal import (
    DiagonalCoords,
    DiagonalReport,
    build_T,
    check_diagonal_conditions,
    fwht_in_place,
    hadamard_entry,
    hadamard_matrix,
    idempotents,
    from_diagonal,
    invert,
    mul_diagonal,
    random_element,
    to_diagonal,
)
from .element import MultiVector, add, conj_standard, equals_within, left_matrix, max_deviation, mul_naive, scale
from .errors import (
    CapacityError,
    DomainError,
    HyperxorError,
    NonInvertibleError,
    PowerDomainError,
    UnknownPresetError,
    UnsupportedSignatureError,
)

__version__ = "0.1.0"
