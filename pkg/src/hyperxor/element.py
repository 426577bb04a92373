"""Dense multivectors over a signature and the naive bilinear product."""

from __future__ import annotations

import re
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .algebra import MAX_TABLE_UNITS, AlgebraSignature, tables
from .bitops import check_index
from .errors import CapacityError, DomainError

DEFAULT_TOL = 1e-9
MAX_MATRIX_UNITS = 10


class MultiVector:
    """Immutable coefficient vector; ``coeffs[p]`` multiplies ``e_p``.

    Real-field algebras store float64, complex-field algebras complex128.
    """

    __slots__ = ("sig", "coeffs")

    def __init__(self, sig: AlgebraSignature, coeffs):
        arr = np.asarray(coeffs)
        if arr.shape != (sig.dim,):
            raise DomainError(f"expected {sig.dim} coefficients, got shape {arr.shape}")
        if not sig.is_complex:
            if np.iscomplexobj(arr):
                if np.any(arr.imag != 0):
                    raise DomainError("real-field algebra cannot hold complex coefficients")
                arr = arr.real
        arr = np.array(arr, dtype=sig.dtype)
        arr.setflags(write=False)
        self.sig = sig
        self.coeffs = arr

    # constructors -----------------------------------------------------------
    @classmethod
    def zero(cls, sig):
        return cls(sig, np.zeros(sig.dim))

    @classmethod
    def one(cls, sig):
        return cls.basis(sig, 0)

    @classmethod
    def basis(cls, sig, p: int, coeff=1.0):
        check_index(p, sig.n)
        c = np.zeros(sig.dim, dtype=sig.dtype)
        c[p] = coeff
        return cls(sig, c)

    @classmethod
    def random(cls, sig, rng: np.random.Generator, low=-1.0, high=1.0):
        c = rng.uniform(low, high, sig.dim)
        if sig.is_complex:
            c = c + 1j * rng.uniform(low, high, sig.dim)
        return cls(sig, c)

    # arithmetic -------------------------------------------------------------
    def __add__(self, other):
        return add(self, other)

    def __sub__(self, other):
        return add(self, scale(other, -1))

    def __neg__(self):
        return scale(self, -1)

    def __mul__(self, other):
        if isinstance(other, MultiVector):
            return mul_naive(self, other)
        return scale(self, other)

    def __rmul__(self, other):
        return scale(self, other)

    def __eq__(self, other):
        if not isinstance(other, MultiVector):
            return NotImplemented
        return self.sig == other.sig and np.array_equal(self.coeffs, other.coeffs)

    __hash__ = None

    def __repr__(self):
        return f"MultiVector({self.sig.label}, [{format_coeffs(self.coeffs)}])"


def _same_sig(x: MultiVector, y: MultiVector) -> None:
    if x.sig != y.sig:
        raise DomainError(f"signature mismatch: {x.sig.label} vs {y.sig.label}")


def add(x: MultiVector, y: MultiVector) -> MultiVector:
    _same_sig(x, y)
    return MultiVector(x.sig, x.coeffs + y.coeffs)


def scale(x: MultiVector, c) -> MultiVector:
    if not x.sig.is_complex and np.iscomplexobj(c) and np.imag(c) != 0:
        raise DomainError("complex scalar on a real-field algebra")
    return MultiVector(x.sig, x.coeffs * (np.real(c) if not x.sig.is_complex else c))


def mul_naive(x: MultiVector, y: MultiVector) -> MultiVector:
    """Bilinear product summed over all ``4**n`` basis pairs."""
    _same_sig(x, y)
    sig = x.sig
    if sig.n <= MAX_TABLE_UNITS:
        out = kernels.mul_table(x.coeffs, y.coeffs, tables(sig).s)
    else:
        out = kernels.mul_direct(x.coeffs, y.coeffs, sig.n, sig.neg_mask, sig.zero_mask, sig.anticommuting)
    return MultiVector(sig, out)


def left_matrix(x: MultiVector) -> np.ndarray:
    """Matrix ``L`` with ``L @ y.coeffs == (x * y).coeffs`` (regular representation)."""
    sig = x.sig
    if sig.n > MAX_MATRIX_UNITS:
        raise CapacityError(f"left_matrix limited to n <= {MAX_MATRIX_UNITS}, got n={sig.n}")
    idx = np.arange(sig.dim)
    a = idx[:, None] ^ idx[None, :]
    return x.coeffs[a] * tables(sig).s[a, idx[None, :]]


def unit_flip_signs(n: int, mask: int) -> np.ndarray:
    """``(-1)**<mask, q>`` for every basis index ``q``."""
    idx = np.arange(1 << n, dtype=np.int64)
    return 1 - 2 * (np.bitwise_count(idx & mask) & 1).astype(np.int8)


def conj_standard(x: MultiVector, mask: int) -> MultiVector:
    """Negate every principal unit whose bit is set in ``mask``."""
    check_index(mask, x.sig.n)
    return MultiVector(x.sig, x.coeffs * unit_flip_signs(x.sig.n, mask))


def equals_within(x: MultiVector, y: MultiVector, tol: float = DEFAULT_TOL) -> bool:
    _same_sig(x, y)
    if tol < 0:
        raise DomainError("tolerance must be non-negative")
    return max_deviation(x, y) <= tol


def max_deviation(x: MultiVector, y: MultiVector) -> float:
    _same_sig(x, y)
    if x.sig.dim == 0:
        return 0.0
    return float(np.max(np.abs(x.coeffs - y.coeffs)))


# ---------------------------------------------------------------------------
# text format: comma-separated scalars, complex as a+bi
# ---------------------------------------------------------------------------

# display-only: magnitudes below this print as 0
DISPLAY_ZERO = 5e-13


def parse_scalar(token: str) -> complex:
    t = token.strip().replace(" ", "")
    if not t:
        raise DomainError("empty coefficient")
    if t.endswith("i"):
        # bare imaginary units ("i", "-i", "3+i") need an explicit 1
        t = re.sub(r"(^|[+-])i$", r"\g<1>1i", t)
        t = t[:-1] + "j"
    try:
        return complex(t)
    except ValueError:
        raise DomainError(f"cannot parse coefficient {token!r}") from None


def parse_coeffs(text: str, sig: AlgebraSignature) -> MultiVector:
    values = [parse_scalar(tok) for tok in text.split(",")]
    if len(values) != sig.dim:
        raise DomainError(f"{sig.label} needs {sig.dim} coefficients, got {len(values)}")
    arr = np.array(values, dtype=np.complex128)
    if not sig.is_complex and np.any(arr.imag != 0):
        raise DomainError("imaginary coefficient given for a real-field algebra")
    return MultiVector(sig, arr)


def _fmt_real(v: float) -> str:
    v = float(v)
    if abs(v) < DISPLAY_ZERO:
        v = 0.0
    s = f"{v + 0.0:.12g}"
    return "0" if s == "-0" else s


def format_scalar(v, is_complex: bool | None = None) -> str:
    if is_complex is None:
        is_complex = np.iscomplexobj(v)
    if not is_complex:
        return _fmt_real(np.real(v))
    re_, im = _fmt_real(np.real(v)), _fmt_real(np.imag(v))
    return f"{re_}{im if im.startswith('-') else '+' + im}i"


def format_coeffs(coeffs: Iterable, is_complex: bool | None = None) -> str:
    coeffs = np.asarray(coeffs)
    if is_complex is None:
        is_complex = np.iscomplexobj(coeffs)
    return ",".join(format_scalar(v, is_complex) for v in coeffs)


def format_mv(x: MultiVector) -> str:
    return format_coeffs(x.coeffs, x.sig.is_complex)


def from_values(sig: AlgebraSignature, values: Sequence) -> MultiVector:
    return MultiVector(sig, np.asarray(values))
