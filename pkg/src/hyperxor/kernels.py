"""Hot numeric kernels with a numba path and a pure-numpy fallback.

The kernels that dominate runtime are the in-place Walsh-Hadamard butterfly,
the fused transform-multiply-transform product, the O(4^n) bilinear product
and dense multiplier-table generation. Each has a numba ``@njit``
implementation and a vectorized numpy implementation with identical results. The active backend is chosen at import time:

* ``HYPERXOR_DISABLE_NUMBA=1`` in the environment forces numpy;
* otherwise numba is used when importable.

``set_backend`` switches at runtime (the benchmark and tests use it to run
both paths in one process).
"""

from __future__ import annotations

import os
from contextlib import contextmanager

import numpy as np

ENV_FLAG = "HYPERXOR_DISABLE_NUMBA"

try:
    import numba
    from numba import njit

    NUMBA_AVAILABLE = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None
    NUMBA_AVAILABLE = False


def _env_disabled() -> bool:
    return os.environ.get(ENV_FLAG, "").strip().lower() in {"1", "true", "yes", "on"}


# ---------------------------------------------------------------------------
# numpy backend
# ---------------------------------------------------------------------------

def fwht_numpy(v: np.ndarray) -> np.ndarray:
    """Butterfly Walsh-Hadamard transform, one vectorized pass per stage."""
    size = v.shape[0]
    h = 1
    while h < size:
        w = v.reshape(-1, 2, h)
        a = w[:, 0, :].copy()
        b = w[:, 1, :]
        w[:, 0, :] += b
        np.subtract(a, b, out=b)
        h *= 2
    return v


def diag_product_numpy(x: np.ndarray, y: np.ndarray, nu: np.ndarray) -> np.ndarray:
    """``conj(nu) * H((H(nu x)) * (H(nu y))) / dim``: the product in idempotent coordinates."""
    a = fwht_numpy(x * nu)
    a *= fwht_numpy(y * nu)
    fwht_numpy(a)
    a *= np.conj(nu) / x.shape[0]
    return a


def _swap_parity_numpy(p: np.ndarray, q: np.ndarray, n: int) -> np.ndarray:
    parity = np.zeros(np.broadcast_shapes(p.shape, q.shape), dtype=np.uint8)
    for k in range(1, n):
        parity ^= (np.bitwise_count((p >> k) & q) & 1).astype(np.uint8)
    return parity


def sign_block_numpy(p, q, n: int, neg: int, zero: int, anti: bool) -> np.ndarray:
    """Multiplier values for broadcast index arrays ``p`` and ``q``."""
    p = np.asarray(p, dtype=np.int64)
    q = np.asarray(q, dtype=np.int64)
    shared = p & q
    odd = (np.bitwise_count(shared & neg) & 1).astype(np.uint8)
    if anti:
        odd ^= _swap_parity_numpy(p, q, n)
    s = (1 - 2 * odd.astype(np.int8)).astype(np.int8)
    if zero:
        s[(shared & zero) != 0] = 0
    return s


def sign_table_numpy(n: int, neg: int, zero: int, anti: bool) -> np.ndarray:
    idx = np.arange(1 << n, dtype=np.int64)
    return sign_block_numpy(idx[:, None], idx[None, :], n, neg, zero, anti)


def mul_table_numpy(x: np.ndarray, y: np.ndarray, s: np.ndarray) -> np.ndarray:
    dim = x.shape[0]
    out = np.zeros(dim, dtype=np.result_type(x, y))
    idx = np.arange(dim)
    for p in np.flatnonzero(x):
        # p ^ idx is a permutation, so fancy-index accumulation is safe
        out[p ^ idx] += x[p] * s[p] * y
    return out


def mul_direct_numpy(x, y, n: int, neg: int, zero: int, anti: bool) -> np.ndarray:
    dim = x.shape[0]
    out = np.zeros(dim, dtype=np.result_type(x, y))
    idx = np.arange(dim, dtype=np.int64)
    for p in np.flatnonzero(x):
        row = sign_block_numpy(p, idx, n, neg, zero, anti)
        out[p ^ idx] += x[p] * row * y
    return out


# ---------------------------------------------------------------------------
# numba backend
# ---------------------------------------------------------------------------

if NUMBA_AVAILABLE:

    @njit(cache=True, inline="always")
    def _popcount(x):
        c = 0
        while x:
            x &= x - 1
            c += 1
        return c

    @njit(cache=True, inline="always")
    def _sign_nb(p, q, neg, zero, anti):
        shared = p & q
        if shared & zero:
            return 0
        odd = _popcount(shared & neg) & 1
        if anti:
            pp = p >> 1
            while pp:
                odd ^= _popcount(pp & q) & 1
                pp >>= 1
        return 1 - 2 * odd

    @njit(cache=True)
    def fwht_numba(v):
        size = v.shape[0]
        h = 1
        while h < size:
            for i in range(0, size, 2 * h):
                for j in range(i, i + h):
                    a = v[j]
                    b = v[j + h]
                    v[j] = a + b
                    v[j + h] = a - b
            h *= 2
        return v

    @njit(cache=True)
    def _diag_product_nb(x, y, nu):
        dim = x.shape[0]
        a = x * nu
        b = y * nu
        fwht_numba(a)
        fwht_numba(b)
        for i in range(dim):
            a[i] *= b[i]
        fwht_numba(a)
        for i in range(dim):
            a[i] *= np.conj(nu[i]) / dim
        return a

    def diag_product_numba(x, y, nu):
        dtype = np.result_type(x, y, nu)
        return _diag_product_nb(x.astype(dtype, copy=False), y.astype(dtype, copy=False),
                                nu.astype(dtype, copy=False))

    @njit(cache=True)
    def sign_table_numba(n, neg, zero, anti):
        dim = 1 << n
        s = np.empty((dim, dim), dtype=np.int8)
        for p in range(dim):
            for q in range(dim):
                s[p, q] = _sign_nb(p, q, neg, zero, anti)
        return s

    @njit(cache=True)
    def _mul_table_nb(x, y, s, out):
        dim = x.shape[0]
        for p in range(dim):
            xp = x[p]
            if xp == 0:
                continue
            for q in range(dim):
                out[p ^ q] += s[p, q] * xp * y[q]
        return out

    @njit(cache=True)
    def _mul_direct_nb(x, y, neg, zero, anti, out):
        dim = x.shape[0]
        for p in range(dim):
            xp = x[p]
            if xp == 0:
                continue
            for q in range(dim):
                sg = _sign_nb(p, q, neg, zero, anti)
                if sg != 0:
                    out[p ^ q] += sg * xp * y[q]
        return out

    def mul_table_numba(x, y, s):
        out = np.zeros(x.shape[0], dtype=np.result_type(x, y))
        return _mul_table_nb(x.astype(out.dtype), y.astype(out.dtype), s, out)

    def mul_direct_numba(x, y, n, neg, zero, anti):
        out = np.zeros(x.shape[0], dtype=np.result_type(x, y))
        return _mul_direct_nb(x.astype(out.dtype), y.astype(out.dtype), neg, zero, bool(anti), out)

else:  # pragma: no cover
    fwht_numba = sign_table_numba = mul_table_numba = mul_direct_numba = diag_product_numba = None


# ---------------------------------------------------------------------------
# dispatch
# ---------------------------------------------------------------------------

_IMPLS = {
    "numpy": {
        "fwht": fwht_numpy,
        "sign_table": sign_table_numpy,
        "mul_table": mul_table_numpy,
        "mul_direct": mul_direct_numpy,
        "diag_product": diag_product_numpy,
    },
}
if NUMBA_AVAILABLE:
    _IMPLS["numba"] = {
        "fwht": fwht_numba,
        "sign_table": sign_table_numba,
        "mul_table": mul_table_numba,
        "mul_direct": mul_direct_numba,
        "diag_product": diag_product_numba,
    }

BACKENDS = tuple(_IMPLS)
_active = "numba" if NUMBA_AVAILABLE and not _env_disabled() else "numpy"


def get_backend() -> str:
    return _active


def set_backend(name: str) -> None:
    global _active
    if name not in _IMPLS:
        raise ValueError(f"backend {name!r} unavailable; choose from {BACKENDS}")
    _active = name


@contextmanager
def use_backend(name: str):
    previous = _active
    set_backend(name)
    try:
        yield
    finally:
        set_backend(previous)


def fwht(v: np.ndarray) -> np.ndarray:
    return _IMPLS[_active]["fwht"](v)


def sign_table(n: int, neg: int, zero: int, anti: bool) -> np.ndarray:
    return _IMPLS[_active]["sign_table"](n, neg, zero, bool(anti))


def mul_table(x: np.ndarray, y: np.ndarray, s: np.ndarray) -> np.ndarray:
    return _IMPLS[_active]["mul_table"](x, y, s)


def mul_direct(x, y, n: int, neg: int, zero: int, anti: bool) -> np.ndarray:
    return _IMPLS[_active]["mul_direct"](x, y, n, neg, zero, bool(anti))


def diag_product(x: np.ndarray, y: np.ndarray, nu: np.ndarray) -> np.ndarray:
    return _IMPLS[_active]["diag_product"](x, y, nu)
