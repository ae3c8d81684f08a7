"""GF(2) linear algebra on rows stored as Python int bitsets.

Bit ``j`` of a row is the entry in column ``j``.
"""

from __future__ import annotations

from typing import Iterable, List, Sequence


def parity(x: int) -> int:
    return bin(x).count("1") & 1


def popcount(x: int) -> int:
    return bin(x).count("1")


def rref(rows: Iterable[int]) -> List[int]:
    """Reduced row echelon form.

    Pivots are the lowest set bit of each basis row; the result is sorted by
    pivot and every pivot column is clear in all other rows, so two row sets
    span the same space iff their ``rref`` lists are equal.
    """
    basis = _echelon(rows)
    pivots = sorted(basis)
    for i in range(len(pivots) - 1, -1, -1):
        p = pivots[i]
        row = basis[p]
        for q in pivots[:i]:
            if (basis[q] >> p) & 1:
                basis[q] ^= row
    return [basis[p] for p in pivots]


def rank(rows: Iterable[int]) -> int:
    return len(_echelon(rows))


def _echelon(rows: Iterable[int]) -> dict[int, int]:
    basis: dict[int, int] = {}
    for r in rows:
        while r:
            p = (r & -r).bit_length() - 1
            if p not in basis:
                basis[p] = r
                break
            r ^= basis[p]
    return basis


class IncrementalBasis:
    """Row space that grows one vector at a time, reporting independence."""

    def __init__(self) -> None:
        self._basis: dict[int, int] = {}

    def __len__(self) -> int:
        return len(self._basis)

    def reduce(self, r: int) -> int:
        while r:
            p = (r & -r).bit_length() - 1
            b = self._basis.get(p)
            if b is None:
                return r
            r ^= b
        return 0

    def add(self, r: int) -> bool:
        r = self.reduce(r)
        if not r:
            return False
        self._basis[(r & -r).bit_length() - 1] = r
        return True

    def copy(self) -> "IncrementalBasis":
        other = IncrementalBasis()
        other._basis = dict(self._basis)
        return other


def in_span(vec: int, rows: Sequence[int]) -> bool:
    basis = IncrementalBasis()
    for r in rows:
        basis.add(r)
    return basis.reduce(vec) == 0


def nullspace(rows: Sequence[int], ncols: int) -> List[int]:
    """Basis of ``{x : popcount(x & r) even for every r in rows}``."""
    red = rref(rows)
    pivots = [(r & -r).bit_length() - 1 for r in red]
    pivot_set = set(pivots)
    out = []
    for f in range(ncols):
        if f in pivot_set:
            continue
        x = 1 << f
        for p, r in zip(pivots, red):
            if (r >> f) & 1:
                x |= 1 << p
        out.append(x)
    return out


def transpose(rows: Sequence[int], ncols: int) -> List[int]:
    cols = [0] * ncols
    for i, r in enumerate(rows):
        while r:
            low = r & -r
            cols[low.bit_length() - 1] |= 1 << i
            r ^= low
    return cols
