"""Conjugations, real powers and conjugate-exponent expressions.

The conjugation ``dagger_k`` negates unit ``u_k``; compositions are indexed
by bit masks exactly like basis elements, and compose by XOR. For
complex-field algebras one extra bit (position ``n``) selects the ordinary
complex conjugation of every coefficient.

A conjugate expression ``sum_g a_g D_g`` acts on ``x`` as the product of
``conj_g(x ** a_g)``. Powers are taken componentwise in diagonal
coordinates, so everything here needs a diagonalizable algebra.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from .diagonal import ZERO_TOL, DiagonalCoords, from_diagonal, hadamard_matrix, mul_diagonal, to_diagonal
from .element import MultiVector, unit_flip_signs
from .errors import CapacityError, DomainError, NonInvertibleError, PowerDomainError

MAX_GROUP_BITS = 12


def compose(p: int, q: int) -> int:
    return p ^ q


def _group_bits(sig) -> int:
    return sig.n + (1 if sig.is_complex else 0)


def apply_conj(x: MultiVector, g: int) -> MultiVector:
    """Apply the conjugation with group index ``g`` to ``x``."""
    n = x.sig.n
    if g < 0 or g >> (n + 1):
        raise DomainError(f"group index {g} out of range for n={n}")
    scalar = (g >> n) & 1
    if scalar and not x.sig.is_complex:
        raise DomainError("scalar conjugation requested on a real-field algebra")
    c = x.coeffs * unit_flip_signs(n, g & (x.sig.dim - 1))
    if scalar:
        c = np.conj(c)
    return MultiVector(x.sig, c)


def power(x: MultiVector, a: float) -> MultiVector:
    """Componentwise principal power ``x ** a`` in diagonal coordinates.

    ``x ** 0`` is the unit element even when a diagonal coordinate is zero.
    Real-field algebras refuse non-integer powers of negative coordinates;
    complex-field algebras use the principal logarithm.
    """
    a = float(a)
    if not math.isfinite(a):
        raise DomainError(f"exponent must be finite, got {a}")
    d = to_diagonal(x)
    if a == 0.0:
        return from_diagonal(DiagonalCoords(x.sig, np.ones_like(d.coords)))
    c = np.array(d.coords)
    zero = np.abs(c) <= ZERO_TOL
    if a < 0 and zero.any():
        k = int(np.flatnonzero(zero)[0])
        raise PowerDomainError(k, c[k].item(), a)
    c[zero] = 0
    if not a.is_integer() and not x.sig.is_complex:
        neg = np.flatnonzero(c < 0)
        if len(neg):
            k = int(neg[0])
            raise PowerDomainError(k, c[k].item(), a)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.power(c, a)
    return from_diagonal(DiagonalCoords(x.sig, out))


@dataclass
class ConjugateExpr:
    """Real linear combination of conjugations, ``{group index: coefficient}``."""

    n: int
    include_scalar_conj: bool = False
    terms: dict[int, float] = field(default_factory=dict)

    def __post_init__(self):
        limit = 1 << self.bits
        clean: dict[int, float] = {}
        for g, a in self.terms.items():
            g = int(g)
            a = float(a)
            if not 0 <= g < limit:
                raise DomainError(f"group index {g} outside [0, {limit})")
            if not math.isfinite(a):
                raise DomainError(f"coefficient of D{g} is not finite")
            clean[g] = clean.get(g, 0.0) + a
        self.terms = clean

    @property
    def bits(self) -> int:
        return self.n + (1 if self.include_scalar_conj else 0)

    @classmethod
    def identity(cls, n: int, include_scalar_conj: bool = False) -> "ConjugateExpr":
        return cls(n, include_scalar_conj, {0: 1.0})

    def _like(self, terms) -> "ConjugateExpr":
        return ConjugateExpr(self.n, self.include_scalar_conj, terms)

    def _check(self, other: "ConjugateExpr") -> None:
        if (self.n, self.include_scalar_conj) != (other.n, other.include_scalar_conj):
            raise DomainError("conjugate expressions over different groups")

    def __add__(self, other: "ConjugateExpr") -> "ConjugateExpr":
        self._check(other)
        out = dict(self.terms)
        for g, a in other.terms.items():
            out[g] = out.get(g, 0.0) + a
        return self._like(out)

    def __rmul__(self, c: float) -> "ConjugateExpr":
        return self._like({g: c * a for g, a in self.terms.items()})

    def __neg__(self):
        return -1.0 * self

    def __sub__(self, other):
        return self + (-other)

    def compose(self, other: "ConjugateExpr") -> "ConjugateExpr":
        """Group-algebra product: bilinear extension of ``D_p o D_q = D_{p^q}``."""
        self._check(other)
        out: dict[int, float] = {}
        for g, a in self.terms.items():
            for h, b in other.terms.items():
                out[g ^ h] = out.get(g ^ h, 0.0) + a * b
        return self._like(out)

    def dense(self) -> np.ndarray:
        v = np.zeros(1 << self.bits)
        for g, a in self.terms.items():
            v[g] = a
        return v

    def allclose(self, other: "ConjugateExpr", tol: float = 1e-12) -> bool:
        self._check(other)
        return bool(np.max(np.abs(self.dense() - other.dense()), initial=0.0) <= tol)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for g in sorted(self.terms):
            mask, scalar = g & ((1 << self.n) - 1), (g >> self.n) & 1
            parts.append(f"{self.terms[g]:.12g}*d{mask}{'s' if scalar else ''}")
        return " + ".join(parts).replace("+ -", "- ")

    @classmethod
    def parse(cls, text: str, n: int, include_scalar_conj: bool | None = None) -> "ConjugateExpr":
        """Parse ``a*d<g>[s] + ...``; ``s`` marks the scalar-conjugation bit."""
        terms = parse_terms(text)
        uses_scalar = any(s for _, _, s in terms)
        if include_scalar_conj is None:
            include_scalar_conj = uses_scalar
        elif uses_scalar and not include_scalar_conj:
            raise DomainError("expression uses scalar conjugation but it is disabled")
        out: dict[int, float] = {}
        for coef, mask, scalar in terms:
            if mask >= 1 << n:
                raise DomainError(f"d{mask} needs more than n={n} units")
            g = mask | (scalar << n)
            out[g] = out.get(g, 0.0) + coef
        return cls(n, include_scalar_conj, out)


_TERM = re.compile(
    r"([+-])?((?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?(?:\*)?d(\d+)(s?)"
)


def parse_terms(text: str) -> list[tuple[float, int, int]]:
    t = re.sub(r"\s+", "", text)
    if not t:
        raise DomainError("empty conjugate expression")
    out = []
    pos = 0
    while pos < len(t):
        m = _TERM.match(t, pos)
        if not m or (pos > 0 and not m.group(1)):
            raise DomainError(f"cannot parse conjugate expression at {t[pos:]!r}")
        sign = -1.0 if m.group(1) == "-" else 1.0
        coef = float(m.group(2)) if m.group(2) else 1.0
        out.append((sign * coef, int(m.group(3)), 1 if m.group(4) else 0))
        pos = m.end()
    return out


def eval_expr(x: MultiVector, expr: ConjugateExpr) -> MultiVector:
    """Evaluate ``x`` raised to a conjugate expression."""
    if expr.n != x.sig.n:
        raise DomainError(f"expression built for n={expr.n}, element has n={x.sig.n}")
    result = power(x, 0.0)
    for g in sorted(expr.terms):
        result = mul_diagonal(result, apply_conj(power(x, expr.terms[g]), g))
    return result


def diagonal_conjugates(n: int, include_scalar_conj: bool = False) -> list[ConjugateExpr]:
    """Idempotent basis of the conjugation group algebra.

    Element ``alpha`` has coefficient ``(-1)**<alpha, g> / 2**m`` on every
    group index ``g``, where ``m`` counts the group generators.
    """
    m = n + (1 if include_scalar_conj else 0)
    if m > MAX_GROUP_BITS:
        raise CapacityError(f"conjugation group limited to {MAX_GROUP_BITS} generators, got {m}")
    h = hadamard_matrix(m) / float(1 << m)
    return [ConjugateExpr(n, include_scalar_conj, dict(enumerate(row))) for row in h]


def polar_decompose(x: MultiVector, include_scalar_conj: bool | None = None) -> list[MultiVector]:
    """Factors ``x ** D~_alpha`` whose product reconstructs ``x``."""
    if include_scalar_conj is None:
        include_scalar_conj = x.sig.is_complex
    coords = to_diagonal(x).coords
    small = np.flatnonzero(np.abs(coords) <= ZERO_TOL)
    if len(small):
        k = int(small[0])
        raise NonInvertibleError(k, coords[k].item())
    return [eval_expr(x, e) for e in diagonal_conjugates(x.sig.n, include_scalar_conj)]


def product(factors: Iterable[MultiVector]) -> MultiVector:
    factors = list(factors)
    if not factors:
        raise DomainError("empty product")
    out = factors[0]
    for f in factors[1:]:
        out = mul_diagonal(out, f)
    return out
