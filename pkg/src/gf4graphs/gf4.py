"""Arithmetic in GF(4) = {0, 1, w, w^2} with w^2 = w + 1.

A scalar ``a + w*b`` is encoded as the int ``a | (b << 1)``, so
``0, 1, w, w^2`` are ``0, 1, 2, 3``. Vectors keep the two bit planes
separately: ``GF4Vector(n, a, b)`` has coordinate ``i`` equal to
``a_i + w*b_i`` where ``a_i`` is bit ``i`` of ``a``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

ZERO, ONE, W, W2 = 0, 1, 2, 3
SYMBOLS = "01wW"
MAX_LENGTH = 64


def _mul(x: int, y: int) -> int:
    a1, b1 = x & 1, x >> 1
    a2, b2 = y & 1, y >> 1
    a = (a1 & a2) ^ (b1 & b2)
    b = (a1 & b2) ^ (a2 & b1) ^ (b1 & b2)
    return a | (b << 1)


MUL = tuple(tuple(_mul(x, y) for y in range(4)) for x in range(4))
CONJ = (0, 1, 3, 2)
TRACE = (0, 0, 1, 1)


def add(x: int, y: int) -> int:
    return x ^ y


def mul(x: int, y: int) -> int:
    return MUL[x][y]


def conj(x: int) -> int:
    """Frobenius map ``x -> x^2``."""
    return CONJ[x]


def trace(x: int) -> int:
    """``x + x^2`` as a bit."""
    return TRACE[x]


def inverse(x: int) -> int:
    if x == 0:
        raise ZeroDivisionError("0 has no inverse in GF(4)")
    return CONJ[x]  # x^3 = 1, so x^-1 = x^2


def parse_symbol(ch: str) -> int:
    try:
        return SYMBOLS.index(ch)
    except ValueError:
        raise ValueError(f"not a GF(4) symbol: {ch!r} (use one of 0 1 w W)") from None


@dataclass(frozen=True, slots=True)
class GF4Vector:
    n: int
    a: int = 0
    b: int = 0

    def __post_init__(self) -> None:
        if not 0 <= self.n <= MAX_LENGTH:
            raise ValueError(f"vector length {self.n} outside 0..{MAX_LENGTH}")
        full = (1 << self.n) - 1
        if self.a & ~full or self.b & ~full:
            raise ValueError("bit planes wider than the vector length")

    @classmethod
    def from_values(cls, values: Sequence[int]) -> "GF4Vector":
        a = b = 0
        for i, x in enumerate(values):
            if not 0 <= x <= 3:
                raise ValueError(f"bad GF(4) value {x}")
            a |= (x & 1) << i
            b |= (x >> 1) << i
        return cls(len(values), a, b)

    @classmethod
    def parse(cls, text: str) -> "GF4Vector":
        return cls.from_values([parse_symbol(ch) for ch in text.strip()])

    def __str__(self) -> str:
        return "".join(SYMBOLS[self[i]] for i in range(self.n))

    def __len__(self) -> int:
        return self.n

    def __getitem__(self, i: int) -> int:
        return ((self.a >> i) & 1) | (((self.b >> i) & 1) << 1)

    def values(self) -> list[int]:
        return [self[i] for i in range(self.n)]

    def _check(self, other: "GF4Vector") -> None:
        if self.n != other.n:
            raise ValueError(f"length mismatch: {self.n} vs {other.n}")

    def __add__(self, other: "GF4Vector") -> "GF4Vector":
        self._check(other)
        return GF4Vector(self.n, self.a ^ other.a, self.b ^ other.b)

    __sub__ = __add__

    def scale(self, x: int) -> "GF4Vector":
        """Multiply every coordinate by the scalar ``x``."""
        if x == ZERO:
            return GF4Vector(self.n)
        if x == ONE:
            return self
        if x == W:
            # w(a + wb) = b + w(a + b)
            return GF4Vector(self.n, self.b, self.a ^ self.b)
        return GF4Vector(self.n, self.a ^ self.b, self.a)

    def conj(self) -> "GF4Vector":
        # conj(a + wb) = (a + b) + wb
        return GF4Vector(self.n, self.a ^ self.b, self.b)

    def weight(self) -> int:
        return (self.a | self.b).bit_count()

    def concat(self, other: "GF4Vector") -> "GF4Vector":
        return GF4Vector(self.n + other.n, self.a | (other.a << self.n), self.b | (other.b << self.n))

    def packed(self) -> int:
        """The binary row ``(A | B)`` as one int, A in the low ``n`` bits."""
        return self.a | (self.b << self.n)

    @classmethod
    def unpack(cls, n: int, x: int) -> "GF4Vector":
        full = (1 << n) - 1
        return cls(n, x & full, x >> n)


def trace_inner_product(u: GF4Vector, v: GF4Vector) -> int:
    """Hermitian trace inner product ``sum(u_i v_i^2 + u_i^2 v_i) mod 2``.

    With ``u = A + wB`` and ``v = C + wD`` this is the parity of
    ``(A & D) ^ (B & C)``.
    """
    u._check(v)
    return (((u.a & v.b) ^ (u.b & v.a)).bit_count()) & 1


def trace_inner_product_fieldwise(u: Sequence[int], v: Sequence[int]) -> int:
    """Reference evaluation straight from the field tables."""
    if len(u) != len(v):
        raise ValueError("length mismatch")
    s = 0
    for x, y in zip(u, v):
        s ^= trace(mul(x, conj(y)))
    return s


def weight(values: Iterable[int]) -> int:
    return sum(1 for x in values if x)
