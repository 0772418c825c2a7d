"""Bit-packed linear algebra over GF(2).

Vectors are Python ints (bit ``i`` is the coefficient of ``e_i``).  Matrices act
on row vectors from the right: ``v * M`` is the XOR of the rows of ``M``
selected by the bits of ``v``, so ``(A @ B)`` means "apply A, then B".
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable


def bits(v: int):
    """Indices of the set bits of ``v``, ascending."""
    i = 0
    while v:
        if v & 1:
            yield i
        v >>= 1
        i += 1


def unit(i: int) -> int:
    return 1 << i


def vec(*indices: int) -> int:
    v = 0
    for i in indices:
        v ^= 1 << i
    return v


def format_vec(v: int) -> str:
    if not v:
        return "0"
    return "+".join(f"e{i}" for i in bits(v))


def reduce_basis(vectors: Iterable[int]) -> dict[int, int]:
    """Echelon basis keyed by pivot (highest set bit)."""
    basis: dict[int, int] = {}
    for v in vectors:
        v = reduce_vector(basis, v)
        if v:
            basis[v.bit_length() - 1] = v
    return basis


def reduce_vector(basis: dict[int, int], v: int) -> int:
    while v:
        p = v.bit_length() - 1
        b = basis.get(p)
        if b is None:
            return v
        v ^= b
    return 0


def span(vectors: Iterable[int]) -> list[int]:
    """Sorted basis of the span, one vector per pivot."""
    return [b for _, b in sorted(reduce_basis(vectors).items())]


def rank(vectors: Iterable[int]) -> int:
    return len(reduce_basis(vectors))


def in_span(basis: dict[int, int], v: int) -> bool:
    return reduce_vector(basis, v) == 0


@dataclass(frozen=True)
class GF2Mat:
    dim: int
    rows: tuple

    @classmethod
    def identity(cls, k: int) -> "GF2Mat":
        return cls(k, tuple(1 << i for i in range(k)))

    @classmethod
    def zero(cls, k: int) -> "GF2Mat":
        return cls(k, (0,) * k)

    @classmethod
    def from_function(cls, k: int, f) -> "GF2Mat":
        """Matrix of the linear map whose value on ``e_i`` is ``f(e_i)``."""
        return cls(k, tuple(f(1 << i) for i in range(k)))

    def apply(self, v: int) -> int:
        out = 0
        rows = self.rows
        i = 0
        while v:
            if v & 1:
                out ^= rows[i]
            v >>= 1
            i += 1
        return out

    def __add__(self, other: "GF2Mat") -> "GF2Mat":
        return GF2Mat(self.dim, tuple(a ^ b for a, b in zip(self.rows, other.rows)))

    __sub__ = __add__

    def __matmul__(self, other: "GF2Mat") -> "GF2Mat":
        return GF2Mat(self.dim, tuple(other.apply(r) for r in self.rows))

    def __pow__(self, k: int) -> "GF2Mat":
        out = GF2Mat.identity(self.dim)
        for _ in range(k):
            out = out @ self
        return out

    def is_zero(self) -> bool:
        return not any(self.rows)

    def rank(self) -> int:
        return rank(self.rows)

    def is_invertible(self) -> bool:
        return self.rank() == self.dim

    def inverse(self) -> "GF2Mat":
        k = self.dim
        left = list(self.rows)
        right = [1 << i for i in range(k)]
        for col in range(k):
            piv = next((r for r in range(col, k) if left[r] >> col & 1), None)
            if piv is None:
                raise ZeroDivisionError("singular matrix")
            left[col], left[piv] = left[piv], left[col]
            right[col], right[piv] = right[piv], right[col]
            for r in range(k):
                if r != col and left[r] >> col & 1:
                    left[r] ^= left[col]
                    right[r] ^= right[col]
        return GF2Mat(k, tuple(right))

    def kernel(self) -> list[int]:
        """Basis of ``{v : v * M = 0}``."""
        k = self.dim
        # augment each row image with the identity to track combinations
        pairs = [(self.rows[i], 1 << i) for i in range(k)]
        basis: dict[int, tuple[int, int]] = {}
        out = []
        for img, comb in pairs:
            while img:
                p = img.bit_length() - 1
                if p not in basis:
                    basis[p] = (img, comb)
                    break
                bi, bc = basis[p]
                img ^= bi
                comb ^= bc
            if not img:
                out.append(comb)
        return span(out)

    def __str__(self):
        return "\n".join(
            " ".join(str(r >> j & 1) for j in range(self.dim)) for r in self.rows)
