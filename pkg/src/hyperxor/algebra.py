"""Algebra signatures, the multiplier/index functions and multiplication tables.

A hypercomplex algebra here is fixed by ``n`` principal units, the square of
each unit (-1, 0 or +1), a commutation constant ``lam`` (+1 commuting, -1
anticommuting) and a scalar field (real or complex). Basis elements ``e_p``
are products of units in increasing order, selected by the bits of ``p``.
Products of basis elements land on a single basis element::

    e_p e_q = s(p, q) e_{p ^ q}

with ``s(p, q) = c(p, q) * lam**swap_count(p, q)`` and ``c`` the product of
the squares of the shared units.
"""

from __future__ import annotations

import dataclasses
import json
import re
from functools import lru_cache
from math import prod
from pathlib import Path
from typing import Any

import numpy as np

from . import kernels
from .bitops import check_index, swap_count
from .errors import CapacityError, DomainError, UnknownPresetError

MAX_UNITS = 24
MAX_TABLE_UNITS = 12
FIELDS = ("real", "complex")


@dataclasses.dataclass(frozen=True)
class AlgebraSignature:
    """Unit squares, commutation constant and scalar field of an algebra."""

    squares: tuple[int, ...]
    lam: int = 1
    field: str = "real"
    name: str | None = dataclasses.field(default=None, compare=False)

    def __post_init__(self):
        squares = tuple(int(v) for v in self.squares)
        object.__setattr__(self, "squares", squares)
        if len(squares) > MAX_UNITS:
            raise CapacityError(f"at most {MAX_UNITS} units supported, got {len(squares)}")
        if any(v not in (-1, 0, 1) for v in squares):
            raise DomainError(f"unit squares must lie in {{-1, 0, 1}}, got {squares}")
        if self.lam not in (-1, 1):
            raise DomainError(f"commutation constant must be +1 or -1, got {self.lam}")
        if self.field not in FIELDS:
            raise DomainError(f"field must be one of {FIELDS}, got {self.field!r}")

    @property
    def n(self) -> int:
        return len(self.squares)

    @property
    def dim(self) -> int:
        return 1 << self.n

    @property
    def is_complex(self) -> bool:
        return self.field == "complex"

    @property
    def dtype(self):
        return np.complex128 if self.is_complex else np.float64

    def _mask(self, value: int) -> int:
        return sum(1 << i for i, v in enumerate(self.squares) if v == value)

    @property
    def neg_mask(self) -> int:
        return self._mask(-1)

    @property
    def zero_mask(self) -> int:
        return self._mask(0)

    @property
    def pos_mask(self) -> int:
        return self._mask(1)

    @property
    def anticommuting(self) -> bool:
        return self.lam == -1

    @property
    def label(self) -> str:
        return self.name or f"sig(n={self.n}, lam={self.lam:+d}, squares={list(self.squares)}, {self.field})"

    def truncated(self, k: int) -> "AlgebraSignature":
        """Same family restricted to the first ``k`` units."""
        return AlgebraSignature(self.squares[:k], self.lam, self.field)

    def to_json(self) -> dict[str, Any]:
        return {"n": self.n, "lambda": self.lam, "squares": list(self.squares), "field": self.field}

    @classmethod
    def from_json(cls, doc: dict[str, Any], name: str | None = None) -> "AlgebraSignature":
        try:
            n = doc["n"]
            squares = doc["squares"]
        except KeyError as exc:
            raise DomainError(f"algebra spec missing key {exc.args[0]!r}") from None
        if not isinstance(n, int) or len(squares) != n:
            raise DomainError(f"algebra spec: squares length {len(squares)} != n={n}")
        return cls(tuple(squares), int(doc.get("lambda", 1)), doc.get("field", "real"), name)

    @classmethod
    def load(cls, path) -> "AlgebraSignature":
        path = Path(path)
        try:
            doc = json.loads(path.read_text())
        except json.JSONDecodeError as exc:
            raise DomainError(f"{path}: invalid JSON ({exc})") from None
        return cls.from_json(doc, name=path.stem)


# ---------------------------------------------------------------------------
# multiplier and index functions
# ---------------------------------------------------------------------------

def index(p: int, q: int) -> int:
    return p ^ q


def multiplier(sig: AlgebraSignature, p: int, q: int) -> int:
    """Sign ``s(p, q)`` in ``e_p e_q = s(p, q) e_{p^q}``."""
    check_index(p, sig.n)
    check_index(q, sig.n)
    shared = p & q
    if shared & sig.zero_mask:
        return 0
    odd = (shared & sig.neg_mask).bit_count()
    if sig.anticommuting:
        odd += swap_count(p, q)
    return -1 if odd & 1 else 1


@lru_cache(maxsize=1 << 17)
def _symbolic_product(p: int, q: int) -> tuple[int, tuple[int, ...], int]:
    # unit positions of e_p followed by those of e_q, as written
    word = [i for i in range(p.bit_length()) if (p >> i) & 1]
    word += [i for i in range(q.bit_length()) if (q >> i) & 1]
    swaps = 0
    for end in range(len(word) - 1, 0, -1):
        for j in range(end):
            if word[j] > word[j + 1]:
                word[j], word[j + 1] = word[j + 1], word[j]
                swaps += 1
    survivors: list[int] = []
    cancelled: list[int] = []
    for unit in word:
        if survivors and survivors[-1] == unit:
            survivors.pop()
            cancelled.append(unit)
        else:
            survivors.append(unit)
    return swaps, tuple(cancelled), sum(1 << u for u in survivors)


def basis_product_oracle(sig: AlgebraSignature, p: int, q: int) -> tuple[int, int]:
    """Multiply ``e_p e_q`` by explicit symbol manipulation.

    The unit word of ``e_p`` followed by that of ``e_q`` is bubble-sorted; every
    transposition of two distinct units contributes ``lam``, then adjacent equal
    units are replaced by their square. Shares no code with :func:`multiplier`,
    so the pair serves as a cross-check.

    Returns
    -------
    (sign, index)
    """
    check_index(p, sig.n)
    check_index(q, sig.n)
    swaps, cancelled, idx = _symbolic_product(p, q)
    sign = sig.lam**swaps * prod(sig.squares[u] for u in cancelled)
    return sign, idx


# ---------------------------------------------------------------------------
# tables
# ---------------------------------------------------------------------------

class MulTables:
    """Dense multiplier matrix ``s`` and index matrix ``r``."""

    def __init__(self, s, r):
        self.s = np.asarray(s, dtype=np.int8)
        self.r = np.asarray(r, dtype=np.int64)
        if self.s.shape != self.r.shape or self.s.ndim != 2 or self.s.shape[0] != self.s.shape[1]:
            raise DomainError("multiplier and index tables must be equal square matrices")
        self.s.setflags(write=False)
        self.r.setflags(write=False)

    @property
    def dim(self) -> int:
        return self.s.shape[0]

    def __eq__(self, other):
        if not isinstance(other, MulTables):
            return NotImplemented
        return np.array_equal(self.s, other.s) and np.array_equal(self.r, other.r)

    def __repr__(self):
        return f"MulTables(dim={self.dim})"

    def to_json(self) -> dict[str, Any]:
        return {"dim": self.dim, "s": self.s.tolist(), "r": self.r.tolist()}

    @classmethod
    def from_json(cls, doc: dict[str, Any]) -> "MulTables":
        return cls(doc["s"], doc["r"])


@lru_cache(maxsize=32)
def tables(sig: AlgebraSignature) -> MulTables:
    if sig.n > MAX_TABLE_UNITS:
        raise CapacityError(f"dense tables limited to n <= {MAX_TABLE_UNITS}, got n={sig.n}")
    s = kernels.sign_table(sig.n, sig.neg_mask, sig.zero_mask, sig.anticommuting)
    idx = np.arange(sig.dim)
    return MulTables(s, idx[:, None] ^ idx[None, :])


# Golden quaternion tables (1, i, j, k), transcribed from the classical table.
QUATERNION_TABLES = MulTables(
    s=[
        [1, 1, 1, 1],
        [1, -1, 1, -1],
        [1, -1, -1, 1],
        [1, 1, -1, -1],
    ],
    r=[
        [0, 1, 2, 3],
        [1, 0, 3, 2],
        [2, 3, 0, 1],
        [3, 2, 1, 0],
    ],
)


def count_squares(sig: AlgebraSignature) -> tuple[int, int, int]:
    """Numbers of basis elements squaring to +1, -1 and 0."""
    if sig.n > 20:
        raise CapacityError(f"count_squares limited to n <= 20, got n={sig.n}")
    idx = np.arange(sig.dim, dtype=np.int64)
    diag = kernels.sign_block_numpy(idx, idx, sig.n, sig.neg_mask, sig.zero_mask, sig.anticommuting)
    return int((diag == 1).sum()), int((diag == -1).sum()), int((diag == 0).sum())


# ---------------------------------------------------------------------------
# presets
# ---------------------------------------------------------------------------

_NAMED = {
    "real": ((), 1, "real"),
    "complex": ((-1,), 1, "real"),
    "split_complex": ((1,), 1, "real"),
    "dual": ((0,), 1, "real"),
    "bicomplex": ((-1, -1), 1, "real"),
    # i, j with i^2 = j^2 = -1 and ij = -ji: the quaternions are Cl(0,2)
    "quaternion": ((-1, -1), -1, "real"),
}
_PAIR = re.compile(r"^(cl|m)\((\d+),(\d+)\)(?:\[(real|complex)\])?$")
_SINGLE = re.compile(r"^(d|m)\((\d+)\)$")

PRESET_HELP = (
    "complex, split_complex, dual, bicomplex, quaternion, cl(a,b)[field], "
    "m(a,b)[field], d(n), m(n)"
)


def preset(name: str) -> AlgebraSignature:
    """Look up a named algebra.

    ``cl(a,b)`` lists its ``b`` units squaring to -1 before its ``a`` units
    squaring to +1 (so ``cl(1,1)`` has ``i^2 = -1, j^2 = +1``); ``m(a,b)``
    lists the +1 units first. Both default to the real field and accept a
    ``[real]``/``[complex]`` suffix. ``d(n)`` is the real multiperplex
    algebra and ``m(n)`` the complex multicomplex one.
    """
    key = re.sub(r"\s+", "", name).lower().replace("-", "_")
    if key in _NAMED:
        squares, lam, fld = _NAMED[key]
        return AlgebraSignature(squares, lam, fld, key)
    if m := _PAIR.match(key):
        kind, a, b, fld = m.group(1), int(m.group(2)), int(m.group(3)), m.group(4) or "real"
        if kind == "cl":
            return AlgebraSignature((-1,) * b + (1,) * a, -1, fld, key)
        return AlgebraSignature((1,) * a + (-1,) * b, 1, fld, key)
    if m := _SINGLE.match(key):
        k = int(m.group(2))
        return AlgebraSignature((1,) * k, 1, "real" if m.group(1) == "d" else "complex", key)
    raise UnknownPresetError(f"unknown algebra {name!r}; known: {PRESET_HELP}")


def resolve(source: str) -> AlgebraSignature:
    """Preset name, or path to a JSON algebra spec file."""
    path = Path(source)
    if source.endswith(".json") or path.is_file():
        if not path.is_file():
            raise DomainError(f"algebra spec file not found: {source}")
        return AlgebraSignature.load(path)
    return preset(source)
