"""Bit-level primitives on basis indices.

Bit ``i`` of an index ``p`` (least significant first) records whether the
principal unit ``u_{i+1}`` occurs in the basis element ``e_p``.
"""

from __future__ import annotations

from typing import Sequence

from .errors import DomainError


def bin_k(value: int, k: int) -> tuple[int, ...]:
    """Fixed-width binary digits of ``value``, most significant first.

    >>> bin_k(5, 4)
    (0, 1, 0, 1)
    """
    if k < 0 or value < 0:
        raise DomainError(f"bin_k needs non-negative arguments, got value={value}, k={k}")
    if value >> k:
        raise DomainError(f"{value} does not fit in {k} bits")
    return tuple((value >> i) & 1 for i in reversed(range(k)))


def val_k(bits: Sequence[int]) -> int:
    """Inverse of :func:`bin_k`; ``bits`` is most significant first."""
    out = 0
    for b in bits:
        if b not in (0, 1):
            raise DomainError(f"bit values must be 0 or 1, got {b!r}")
        out = (out << 1) | b
    return out


def popcount(x: int) -> int:
    return int(x).bit_count()


def bit_inner(p: int, q: int) -> int:
    """Binary inner product: number of positions where both ``p`` and ``q`` have a 1."""
    return (p & q).bit_count()


def swap_count(p: int, q: int) -> int:
    """Adjacent transpositions needed to bring ``e_p e_q`` into sorted unit order.

    Each unit of ``q`` at bit ``i`` has to travel left past every unit of
    ``p`` with a higher position.
    """
    total = 0
    p >>= 1
    while p:
        total += (p & q).bit_count()
        p >>= 1
    return total


def check_index(p: int, n: int) -> int:
    if not 0 <= p < (1 << n):
        raise DomainError(f"index {p} outside [0, {1 << n})")
    return p
