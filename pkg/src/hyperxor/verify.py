"""Seeded property suite run by ``hyperxor verify``.

Every property returns a :class:`PropertyResult`; diagonal and conjugate
properties are skipped (with the failing condition as reason) on algebras
without a diagonal basis, and exhaustive checks fall back to sampling once
the algebra gets too large.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import kernels
from .algebra import AlgebraSignature, basis_product_oracle, multiplier, tables, MAX_TABLE_UNITS
from .conjugate import (
    ConjugateExpr,
    apply_conj,
    eval_expr,
    polar_decompose,
    power,
    product,
)
from .diagonal import (
    build_T,
    check_diagonal_conditions,
    fwht_in_place,
    hadamard_matrix,
    idempotents,
    mul_diagonal,
    random_element,
)
from .element import MultiVector, max_deviation, mul_naive

PASS, FAIL, SKIP = "PASS", "FAIL", "SKIP"


@dataclass
class PropertyResult:
    name: str
    status: str
    detail: str = ""

    def line(self) -> str:
        return f"{self.status} {self.name}" + (f": {self.detail}" if self.detail else "")


class _Ctx:
    def __init__(self, sig: AlgebraSignature, seed: int, cases: int, tol: float):
        self.sig = sig
        self.rng = np.random.default_rng(seed)
        self.cases = cases
        self.tol = tol
        self.report = check_diagonal_conditions(sig) if sig.n <= 20 else None

    def pairs(self, exhaustive_upto: int):
        dim = self.sig.dim
        if self.sig.n <= exhaustive_upto:
            return itertools.product(range(dim), repeat=2)
        return (tuple(int(v) for v in self.rng.integers(0, dim, 2)) for _ in range(self.cases))


def _oracle_sign(ctx: _Ctx) -> PropertyResult:
    sig = ctx.sig
    tab = tables(sig).s if sig.n <= MAX_TABLE_UNITS else None
    checked = 0
    for p, q in ctx.pairs(6):
        sign, _ = basis_product_oracle(sig, p, q)
        fast = multiplier(sig, p, q)
        if sign != fast or (tab is not None and tab[p, q] != sign):
            return PropertyResult("sign_formula", FAIL, f"s({p},{q}): oracle {sign}, formula {fast}")
        checked += 1
    return PropertyResult("sign_formula", PASS, f"{checked} pairs")


def _xor_index(ctx: _Ctx) -> PropertyResult:
    sig = ctx.sig
    checked = 0
    for p, q in ctx.pairs(6):
        _, idx = basis_product_oracle(sig, p, q)
        if idx != p ^ q:
            return PropertyResult("xor_index", FAIL, f"e_{p} e_{q} lands on e_{idx}, expected e_{p ^ q}")
        checked += 1
    if sig.n <= MAX_TABLE_UNITS:
        r = tables(sig).r
        i = np.arange(sig.dim)
        if not np.array_equal(r, i[:, None] ^ i[None, :]):
            return PropertyResult("xor_index", FAIL, "index table differs from XOR")
    return PropertyResult("xor_index", PASS, f"{checked} pairs")


def _multiplier_values(ctx: _Ctx) -> PropertyResult:
    sig = ctx.sig
    if sig.n > MAX_TABLE_UNITS:
        return PropertyResult("multiplier_values", SKIP, "table too large")
    s = tables(sig).s
    zeros = int((s == 0).sum())
    if not np.isin(s, (-1, 0, 1)).all():
        return PropertyResult("multiplier_values", FAIL, "entry outside {-1,0,1}")
    if 0 not in sig.squares and zeros:
        return PropertyResult("multiplier_values", FAIL, "zero entry without zero-square unit")
    if all(v == 1 for v in sig.squares) and sig.lam == 1 and not (s == 1).all():
        return PropertyResult("multiplier_values", FAIL, "all-hyperbolic commutative table not all +1")
    return PropertyResult("multiplier_values", PASS, f"{zeros} zero multipliers")


def _neutral(ctx: _Ctx) -> PropertyResult:
    sig = ctx.sig
    idx = np.arange(sig.dim, dtype=np.int64)
    args = (sig.n, sig.neg_mask, sig.zero_mask, sig.anticommuting)
    ok = (kernels.sign_block_numpy(idx, 0, *args) == 1).all() and (kernels.sign_block_numpy(0, idx, *args) == 1).all()
    return PropertyResult("neutral_element", PASS if ok else FAIL)


def _associativity(ctx: _Ctx) -> PropertyResult:
    sig = ctx.sig
    args = (sig.n, sig.neg_mask, sig.zero_mask, sig.anticommuting)
    if sig.n <= 6:
        i = np.arange(sig.dim, dtype=np.int64)
        p, q, t = i[:, None, None], i[None, :, None], i[None, None, :]
    else:
        p, q, t = (ctx.rng.integers(0, sig.dim, ctx.cases) for _ in range(3))
    lhs = kernels.sign_block_numpy(p, q, *args).astype(int) * kernels.sign_block_numpy(p ^ q, t, *args)
    rhs = kernels.sign_block_numpy(q, t, *args).astype(int) * kernels.sign_block_numpy(p, q ^ t, *args)
    bad = np.argwhere(lhs != rhs)
    if len(bad):
        return PropertyResult("associativity", FAIL, f"triple index {bad[0].tolist()}")
    return PropertyResult("associativity", PASS, f"{lhs.size} triples")


def _symmetry(ctx: _Ctx) -> PropertyResult:
    sig = ctx.sig
    if sig.lam != 1:
        return PropertyResult("commutative_symmetry", SKIP, "anticommuting units")
    for p, q in ctx.pairs(6):
        if multiplier(sig, p, q) != multiplier(sig, q, p):
            return PropertyResult("commutative_symmetry", FAIL, f"s({p},{q}) != s({q},{p})")
    return PropertyResult("commutative_symmetry", PASS)


def _hadamard(ctx: _Ctx) -> PropertyResult:
    n = ctx.sig.n
    if n > 12:
        return PropertyResult("hadamard_identity", SKIP, "n > 12")
    v = ctx.rng.uniform(-1, 1, 1 << n)
    w = fwht_in_place(v.copy())
    if n <= 8 and np.max(np.abs(w - hadamard_matrix(n) @ v)) > 1e-10:
        return PropertyResult("hadamard_identity", FAIL, "fast transform differs from dense H v")
    fwht_in_place(w)
    dev = float(np.max(np.abs(w - (1 << n) * v)))
    return PropertyResult("hadamard_identity", PASS if dev <= ctx.tol else FAIL, f"max dev {dev:.2e}")


def _naive_laws(ctx: _Ctx) -> PropertyResult:
    sig = ctx.sig
    if sig.n > 6:
        return PropertyResult("naive_product_laws", SKIP, "n > 6")
    one = MultiVector.one(sig)
    for _ in range(min(ctx.cases, 50)):
        x, y, z = (MultiVector.random(sig, ctx.rng) for _ in range(3))
        if max_deviation(mul_naive(x, one), x) > ctx.tol:
            return PropertyResult("naive_product_laws", FAIL, "x * 1 != x")
        if max_deviation(mul_naive(mul_naive(x, y), z), mul_naive(x, mul_naive(y, z))) > ctx.tol:
            return PropertyResult("naive_product_laws", FAIL, "associativity violated")
        if max_deviation(mul_naive(x + y, z), mul_naive(x, z) + mul_naive(y, z)) > ctx.tol:
            return PropertyResult("naive_product_laws", FAIL, "bilinearity violated")
    return PropertyResult("naive_product_laws", PASS)


# -- diagonal-only properties -------------------------------------------------

def _coords_identity(ctx: _Ctx) -> PropertyResult:
    sig = ctx.sig
    if sig.n > 6:
        return PropertyResult("change_of_coords_identity", SKIP, "n > 6")
    T = build_T(sig)
    s = tables(sig).s
    i = np.arange(sig.dim)
    lhs = s[None, :, :] * T[:, i[:, None] ^ i[None, :]]
    rhs = T[:, :, None] * T[:, None, :]
    ok = np.array_equal(lhs, rhs) and np.all(T != 0)
    return PropertyResult("change_of_coords_identity", PASS if ok else FAIL)


def _unitarity(ctx: _Ctx) -> PropertyResult:
    sig = ctx.sig
    if sig.n > 8:
        return PropertyResult("t_unitarity", SKIP, "n > 8")
    T = build_T(sig)
    dev = float(np.max(np.abs(T.conj().T @ T - sig.dim * np.eye(sig.dim))))
    return PropertyResult("t_unitarity", PASS if dev <= 1e-12 else FAIL, f"max dev {dev:.2e}")


def _partition(ctx: _Ctx) -> PropertyResult:
    sig = ctx.sig
    if sig.n > 8:
        return PropertyResult("idempotent_partition", SKIP, "n > 8")
    eps = idempotents(sig)
    total = MultiVector.zero(sig)
    for p, e in enumerate(eps):
        total = total + e
        for q in range(len(eps)) if sig.n <= 4 else (p, (p + 1) % len(eps)):
            expect = e if p == q else MultiVector.zero(sig)
            if max_deviation(mul_naive(e, eps[q]), expect) > 1e-10:
                return PropertyResult("idempotent_partition", FAIL, f"eps_{p} eps_{q}")
    if max_deviation(total, MultiVector.one(sig)) > 1e-10:
        return PropertyResult("idempotent_partition", FAIL, "idempotents do not sum to 1")
    return PropertyResult("idempotent_partition", PASS)


def _engines(ctx: _Ctx) -> PropertyResult:
    sig = ctx.sig
    if sig.n > 12:
        return PropertyResult("engine_equivalence", SKIP, "n > 12")
    worst = 0.0
    for _ in range(ctx.cases):
        x, y = MultiVector.random(sig, ctx.rng), MultiVector.random(sig, ctx.rng)
        worst = max(worst, max_deviation(mul_naive(x, y), mul_diagonal(x, y)))
    return PropertyResult("engine_equivalence", PASS if worst <= 1e-8 else FAIL, f"max dev {worst:.2e}")


def _conjugation(ctx: _Ctx) -> PropertyResult:
    sig = ctx.sig
    gmax = 1 << (sig.n + (1 if sig.is_complex else 0))
    for _ in range(min(ctx.cases, 50)):
        x, y = MultiVector.random(sig, ctx.rng), MultiVector.random(sig, ctx.rng)
        g, h = (int(v) for v in ctx.rng.integers(0, gmax, 2))
        if max_deviation(apply_conj(apply_conj(x, g), g), x) > ctx.tol:
            return PropertyResult("conjugation_laws", FAIL, f"D{g} not an involution")
        if max_deviation(apply_conj(apply_conj(x, g), h), apply_conj(apply_conj(x, h), g)) > ctx.tol:
            return PropertyResult("conjugation_laws", FAIL, f"D{g}, D{h} do not commute")
        lhs = apply_conj(mul_naive(x, y), g)
        rhs = mul_naive(apply_conj(x, g), apply_conj(y, g))
        if max_deviation(lhs, rhs) > ctx.tol:
            return PropertyResult("conjugation_laws", FAIL, f"D{g} not multiplicative")
    return PropertyResult("conjugation_laws", PASS)


def _powers(ctx: _Ctx) -> PropertyResult:
    sig = ctx.sig
    for _ in range(min(ctx.cases, 30)):
        x = random_element(sig, ctx.rng, positive=True)
        a = float(ctx.rng.uniform(-2, 2))
        g = int(ctx.rng.integers(0, sig.dim))
        if max_deviation(power(apply_conj(x, g), a), apply_conj(power(x, a), g)) > 1e-9:
            return PropertyResult("conjugate_power_laws", FAIL, f"power {a:.3f} vs D{g}")
        if max_deviation(power(x, 2), mul_naive(x, x)) > 1e-8:
            return PropertyResult("conjugate_power_laws", FAIL, "x**2 != x*x")
        b = float(ctx.rng.uniform(-2, 2))
        split = eval_expr(x, ConjugateExpr(sig.n, False, {g: a}))
        lhs = eval_expr(x, ConjugateExpr(sig.n, False, {g: a + b}))
        rhs = mul_diagonal(split, eval_expr(x, ConjugateExpr(sig.n, False, {g: b})))
        if max_deviation(lhs, rhs) > 1e-8:
            return PropertyResult("conjugate_power_laws", FAIL, "field-addition distributivity")
    return PropertyResult("conjugate_power_laws", PASS)


def _polar(ctx: _Ctx) -> PropertyResult:
    sig = ctx.sig
    if sig.n > 4:
        return PropertyResult("polar_reconstruction", SKIP, "n > 4")
    worst = 0.0
    for _ in range(min(ctx.cases, 10)):
        x = random_element(sig, ctx.rng, positive=True)
        worst = max(worst, max_deviation(product(polar_decompose(x)), x))
    return PropertyResult("polar_reconstruction", PASS if worst <= 1e-8 else FAIL, f"max dev {worst:.2e}")


GENERAL: list[Callable[[_Ctx], PropertyResult]] = [
    _oracle_sign, _xor_index, _multiplier_values, _neutral, _associativity,
    _symmetry, _hadamard, _naive_laws,
]
DIAGONAL: list[tuple[str, Callable[[_Ctx], PropertyResult]]] = [
    ("change_of_coords_identity", _coords_identity),
    ("t_unitarity", _unitarity),
    ("idempotent_partition", _partition),
    ("engine_equivalence", _engines),
    ("conjugation_laws", _conjugation),
    ("conjugate_power_laws", _powers),
    ("polar_reconstruction", _polar),
]


def run_suite(sig: AlgebraSignature, seed: int = 0, cases: int = 100, tol: float = 1e-9) -> list[PropertyResult]:
    ctx = _Ctx(sig, seed, cases, tol)
    results = [check(ctx) for check in GENERAL]
    report = ctx.report
    for name, check in DIAGONAL:
        if report is None:
            results.append(PropertyResult(name, SKIP, "n > 20"))
        elif not report.verdict:
            results.append(PropertyResult(name, SKIP, f"no diagonal basis ({report.witness_text})"))
        else:
            results.append(check(ctx))
    return results
