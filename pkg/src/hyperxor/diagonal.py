"""Diagonal (idempotent) bases for commutative algebras.

When the units commute and every unit square has a root in the scalar
field, the change of coordinates ``T[a][q] = nu[q] * (-1)**<a, q>`` maps the
standard basis onto mutually annihilating idempotents. ``nu`` is built
multiplicatively from one root per unit, so ``nu[p ^ q] * s(p, q) =
nu[p] * nu[q]``. Multiplying in diagonal coordinates is componentwise,
which turns the O(4^n) product into three O(n 2^n) Walsh-Hadamard passes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import kernels
from .algebra import AlgebraSignature, multiplier
from .element import MultiVector, _same_sig, format_coeffs
from .errors import CapacityError, DomainError, NonInvertibleError, UnsupportedSignatureError

MAX_CHECK_UNITS = 20
MAX_DENSE_T_UNITS = 10
MAX_IDEMPOTENT_UNITS = 12
# exhaustive symmetry scan up to this size, structural argument above it
_SYMMETRY_SCAN_UNITS = 10
ZERO_TOL = 1e-12

CONDITIONS = {
    "commutative": "units commute (lambda = +1 or n <= 1)",
    "t0_is_one": "T[a][0] = s(0,0) = 1",
    "t_squares": "T[a][p]^2 = s(p,p) for the constructed nu",
    "symmetric": "s(p,q) = s(q,p)",
    "nonzero_squares": "s(p,p) != 0",
    "neutral": "s(p,0) = s(0,q) = 1",
    "square_root": "s(p,p) has a square root in the scalar field",
}
# order in which a failure witness is reported
_WITNESS_ORDER = ("commutative", "symmetric", "nonzero_squares", "neutral", "square_root",
                  "t0_is_one", "t_squares")


@dataclass(frozen=True)
class DiagonalReport:
    sig: AlgebraSignature
    verdict: bool
    conditions: dict[str, bool]
    nu: np.ndarray | None = None
    failed: str | None = None
    witness: tuple | None = None
    witness_text: str | None = None

    def to_json(self):
        doc = {
            "algebra": self.sig.label,
            "verdict": self.verdict,
            "conditions": dict(self.conditions),
        }
        if self.verdict:
            doc["nu"] = format_coeffs(self.nu).split(",")
        else:
            doc["failed"] = self.failed
            doc["witness"] = list(self.witness) if self.witness else None
            doc["witness_text"] = self.witness_text
        return doc


@dataclass(frozen=True)
class DiagonalCoords:
    """Coefficients of an element along the idempotent basis."""

    sig: AlgebraSignature
    coords: np.ndarray = field(repr=False)

    def is_invertible(self, tol: float = ZERO_TOL) -> bool:
        return bool(np.all(np.abs(self.coords) > tol))


def _diag_signs(sig: AlgebraSignature) -> np.ndarray:
    idx = np.arange(sig.dim, dtype=np.int64)
    return kernels.sign_block_numpy(idx, idx, sig.n, sig.neg_mask, sig.zero_mask, sig.anticommuting)


def _asymmetric_pair(sig: AlgebraSignature) -> tuple[int, int] | None:
    if sig.n <= _SYMMETRY_SCAN_UNITS:
        idx = np.arange(sig.dim, dtype=np.int64)
        s = kernels.sign_block_numpy(idx[:, None], idx[None, :], sig.n, sig.neg_mask,
                                     sig.zero_mask, sig.anticommuting)
        bad = np.argwhere(s != s.T)
        return (int(bad[0, 0]), int(bad[0, 1])) if len(bad) else None
    # shared-unit factors are symmetric, so only swap parity can differ;
    # with anticommuting units e_1 e_2 = -e_2 e_1 is the first witness
    if sig.anticommuting and sig.n >= 2:
        return (1, 2)
    return None


def _unit_roots(sig: AlgebraSignature) -> list[complex] | None:
    roots = []
    for sq in sig.squares:
        if sq == 1:
            roots.append(1.0)
        elif sq == -1 and sig.is_complex:
            roots.append(1j)
        else:
            return None
    return roots


def nu_from_roots(n: int, roots) -> np.ndarray:
    nu = np.ones(1 << n, dtype=np.complex128)
    idx = np.arange(1 << n)
    for k, root in enumerate(roots):
        nu[(idx >> k) & 1 == 1] *= root
    if np.all(nu.imag == 0):
        return nu.real.copy()
    return nu


def check_diagonal_conditions(sig: AlgebraSignature) -> DiagonalReport:
    """Evaluate the necessary conditions for a diagonal basis.

    Failures are reported (with a witness), never raised. On success the
    report carries the column scalings ``nu`` of the change of coordinates.
    """
    if sig.n > MAX_CHECK_UNITS:
        raise CapacityError(f"diagonal check limited to n <= {MAX_CHECK_UNITS}, got n={sig.n}")
    n, dim = sig.n, sig.dim
    idx = np.arange(dim, dtype=np.int64)
    diag = _diag_signs(sig)
    args = (n, sig.neg_mask, sig.zero_mask, sig.anticommuting)
    row0 = kernels.sign_block_numpy(0, idx, *args)
    col0 = kernels.sign_block_numpy(idx, 0, *args)

    witnesses: dict[str, tuple[tuple, str]] = {}
    asym = _asymmetric_pair(sig)
    if asym is not None:
        p, q = asym
        text = f"s({p},{q})={multiplier(sig, p, q):+d} != s({q},{p})={multiplier(sig, q, p):+d}"
        witnesses["symmetric"] = (asym, text)
        if not (sig.lam == 1 or n <= 1):
            witnesses["commutative"] = (asym, text)

    zeros = np.flatnonzero(diag == 0)
    if len(zeros):
        p = int(zeros[0])
        witnesses["nonzero_squares"] = ((p,), f"s({p},{p})=0")

    bad_row = np.flatnonzero(row0 != 1)
    bad_col = np.flatnonzero(col0 != 1)
    if len(bad_row) or len(bad_col):  # pragma: no cover - e_0 is always neutral here
        p = int(bad_col[0]) if len(bad_col) else int(bad_row[0])
        witnesses["neutral"] = ((p,), f"s({p},0) or s(0,{p}) differs from 1")

    rootless = np.flatnonzero(diag == 0) if sig.is_complex else np.flatnonzero(diag != 1)
    if len(rootless):
        p = int(rootless[0])
        sq = int(diag[p])
        where = "complex" if sig.is_complex else "real"
        witnesses["square_root"] = ((p,), f"s({p},{p})={sq} has no {where} square root")

    if diag[0] != 1:  # pragma: no cover
        witnesses["t0_is_one"] = ((0,), f"s(0,0)={int(diag[0])}")

    nu = None
    roots = _unit_roots(sig)
    if roots is None:
        witnesses["t_squares"] = ((), "no unit root available to build nu")
    else:
        nu = nu_from_roots(n, roots)
        mismatch = np.flatnonzero(np.abs(nu * nu - diag) > 0)
        if len(mismatch):
            p = int(mismatch[0])
            witnesses["t_squares"] = ((p,), f"nu_{p}^2={np.real(nu[p] ** 2):+g} != s({p},{p})={int(diag[p]):+d}")

    conditions = {name: name not in witnesses for name in CONDITIONS}
    verdict = all(conditions.values())
    if verdict:
        return DiagonalReport(sig, True, conditions, nu=nu)
    failed = next(name for name in _WITNESS_ORDER if name in witnesses)
    witness, text = witnesses[failed]
    return DiagonalReport(sig, False, conditions, failed=failed, witness=witness, witness_text=text)


_cached_report = lru_cache(maxsize=64)(check_diagonal_conditions)


def require_diagonal(sig: AlgebraSignature) -> DiagonalReport:
    # memoized on the instance: hashing the signature costs more than a transform
    report = sig.__dict__.get("_diag_report")
    if report is None:
        report = _cached_report(sig)
        object.__setattr__(sig, "_diag_report", report)
    if not report.verdict:
        raise UnsupportedSignatureError(f"{sig.label} has no diagonal basis: {report.witness_text}")
    return report


# ---------------------------------------------------------------------------
# Sylvester-Hadamard machinery
# ---------------------------------------------------------------------------

def hadamard_entry(p: int, q: int) -> int:
    return -1 if (p & q).bit_count() & 1 else 1


def hadamard_matrix(n: int) -> np.ndarray:
    idx = np.arange(1 << n, dtype=np.int64)
    odd = (np.bitwise_count(idx[:, None] & idx[None, :]) & 1).astype(np.int64)
    return 1 - 2 * odd


def build_T(sig: AlgebraSignature) -> np.ndarray:
    """Dense change-of-coordinates matrix (testing and display only)."""
    report = require_diagonal(sig)
    if sig.n > MAX_DENSE_T_UNITS:
        raise CapacityError(f"dense T limited to n <= {MAX_DENSE_T_UNITS}, got n={sig.n}")
    return hadamard_matrix(sig.n) * report.nu[None, :]


def fwht_in_place(v: np.ndarray) -> np.ndarray:
    """Overwrite ``v`` with ``H_n v``; applying it twice multiplies by ``len(v)``."""
    if not isinstance(v, np.ndarray) or v.ndim != 1:
        raise DomainError("fwht expects a one-dimensional numpy array")
    size = v.shape[0]
    if size == 0 or size & (size - 1):
        raise DomainError(f"fwht length must be a power of two, got {size}")
    if not (v.flags.c_contiguous and v.flags.writeable):
        raise DomainError("fwht needs a writeable contiguous array")
    return kernels.fwht(v)


def _coord_dtype(sig, nu):
    return np.complex128 if sig.is_complex or np.iscomplexobj(nu) else np.float64


def to_diagonal(x: MultiVector) -> DiagonalCoords:
    """Coordinates ``T x`` along the idempotent basis."""
    nu = require_diagonal(x.sig).nu
    v = np.array(x.coeffs * nu, dtype=_coord_dtype(x.sig, nu))
    fwht_in_place(v)
    return DiagonalCoords(x.sig, v)


def from_diagonal(d: DiagonalCoords) -> MultiVector:
    sig = d.sig
    nu = require_diagonal(sig).nu
    coords = np.asarray(d.coords)
    if coords.shape != (sig.dim,):
        raise DomainError(f"expected {sig.dim} diagonal coordinates, got shape {coords.shape}")
    v = np.array(coords, dtype=np.result_type(coords, _coord_dtype(sig, nu)))
    fwht_in_place(v)
    v *= np.conj(nu) / sig.dim
    if not sig.is_complex and np.iscomplexobj(v):
        if np.max(np.abs(v.imag), initial=0.0) > 1e-9 * max(1.0, np.max(np.abs(v.real), initial=0.0)):
            raise DomainError("diagonal coordinates do not describe a real element")
        v = v.real
    return MultiVector(sig, v)


def idempotents(sig: AlgebraSignature) -> list[MultiVector]:
    """The idempotent basis, ``eps[p] = from_diagonal(delta_p)``."""
    nu = require_diagonal(sig).nu
    if sig.n > MAX_IDEMPOTENT_UNITS:
        raise CapacityError(f"idempotent listing limited to n <= {MAX_IDEMPOTENT_UNITS}")
    rows = hadamard_matrix(sig.n) * np.conj(nu)[None, :] / sig.dim
    return [MultiVector(sig, row) for row in rows]


def mul_diagonal(x: MultiVector, y: MultiVector) -> MultiVector:
    """Product via three Walsh-Hadamard passes and a componentwise multiply."""
    _same_sig(x, y)
    sig = x.sig
    nu = require_diagonal(sig).nu
    a = kernels.diag_product(x.coeffs, y.coeffs, nu)
    if not sig.is_complex and np.iscomplexobj(a):
        a = a.real
    return MultiVector(sig, a)


def invert(x: MultiVector, tol: float = ZERO_TOL) -> MultiVector:
    coords = to_diagonal(x).coords
    small = np.flatnonzero(np.abs(coords) <= tol)
    if len(small):
        k = int(small[0])
        raise NonInvertibleError(k, coords[k].item())
    return from_diagonal(DiagonalCoords(x.sig, 1.0 / coords))


def random_element(sig: AlgebraSignature, rng: np.random.Generator, positive: bool = False) -> MultiVector:
    """Uniform [-1, 1] coefficients, or diagonal coordinates drawn from [0.5, 1.5]."""
    if not positive:
        return MultiVector.random(sig, rng)
    return from_diagonal(DiagonalCoords(sig, rng.uniform(0.5, 1.5, sig.dim)))
