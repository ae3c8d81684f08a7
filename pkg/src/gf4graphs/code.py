"""Additive codes over GF(4) given by generator matrices.

A code keeps its generator rows as given (dropping dependent ones) plus a
reduced GF(2) basis of the binary expansion ``(A | B)``, which is what set
equality between codes is decided on.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import cached_property
from itertools import permutations
from typing import Iterator, Sequence

import numpy as np

from . import gf2
from .gf4 import SYMBOLS, GF4Vector

DEFAULT_BUDGET = 1 << 26
_LOW_BITS = 16


class BudgetExceeded(RuntimeError):
    """Raised when an exhaustive enumeration would exceed its codeword cap."""


class SingletonClass(enum.Enum):
    EXTREMAL = "extremal"
    NEAR_EXTREMAL = "near-extremal"
    OTHER = "optimal-or-other"


@dataclass(frozen=True)
class WeightDistribution:
    counts: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.counts) - 1

    @property
    def size(self) -> int:
        return sum(self.counts)

    @property
    def min_distance(self) -> int | None:
        for i, c in enumerate(self.counts[1:], start=1):
            if c:
                return i
        return None

    def __getitem__(self, i: int) -> int:
        return self.counts[i]

    def evaluate(self, x, y):
        """``W(x, y) = sum A_i x^(n-i) y^i``."""
        n = self.n
        return sum(c * x ** (n - i) * y**i for i, c in enumerate(self.counts))

    def __str__(self) -> str:
        terms = []
        for i, c in enumerate(self.counts):
            if not c:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                terms.append(f"{c if c != 1 else ''}y^{i}")
        return " + ".join(terms)


@dataclass(frozen=True, eq=False)
class AdditiveCode:
    """An ``(n, 2^k)`` additive code; build with :func:`make_code`."""

    n: int
    generators: tuple[GF4Vector, ...]
    basis: tuple[int, ...] = field(repr=False)

    @property
    def k(self) -> int:
        return len(self.generators)

    def __eq__(self, other: object) -> bool:
        # same codeword set
        if not isinstance(other, AdditiveCode):
            return NotImplemented
        return self.n == other.n and self.basis == other.basis

    def __hash__(self) -> int:
        return hash((self.n, self.basis))

    def __repr__(self) -> str:
        return f"AdditiveCode(n={self.n}, k={self.k}, rows={[str(g) for g in self.generators]})"

    @cached_property
    def is_graph_form(self) -> bool:
        """True when the generators read ``Gamma + wI`` with zero diagonal."""
        return self.k == self.n and all(
            g.b == 1 << i and not (g.a >> i) & 1 for i, g in enumerate(self.generators)
        )

    def __contains__(self, v: GF4Vector) -> bool:
        if v.n != self.n:
            return False
        return _reduce(self.basis, v.packed()) == 0

    def plane_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        a = np.array([g.a for g in self.generators], dtype=np.uint64)
        b = np.array([g.b for g in self.generators], dtype=np.uint64)
        return a, b

    def to_text(self) -> str:
        lines = [f"n={self.n} k={self.k}"]
        lines.extend(str(g) for g in self.generators)
        return "\n".join(lines) + "\n"


def _reduce(basis: Sequence[int], x: int) -> int:
    for r in basis:
        if (x >> ((r & -r).bit_length() - 1)) & 1:
            x ^= r
    return x


def make_code(rows: Sequence[GF4Vector], allow_empty: bool = False) -> AdditiveCode:
    """Code spanned additively by ``rows``.

    Rows that do not raise the GF(2) rank of ``(A | B)`` are dropped.
    """
    rows = list(rows)
    if not rows:
        raise ValueError("a code needs at least one generator row")
    n = rows[0].n
    if any(r.n != n for r in rows):
        raise ValueError("generator rows have different lengths")
    inc = gf2.IncrementalBasis()
    kept = tuple(r for r in rows if inc.add(r.packed()))
    if not kept and not allow_empty:
        raise ValueError("generator rows span only the zero code")
    return AdditiveCode(n, kept, tuple(gf2.rref(r.packed() for r in kept)))


def code_from_values(matrix: Sequence[Sequence[int]]) -> AdditiveCode:
    return make_code([GF4Vector.from_values(row) for row in matrix])


def code_from_strings(rows: Sequence[str]) -> AdditiveCode:
    return make_code([GF4Vector.parse(r) for r in rows])


def parse_code_text(text: str) -> AdditiveCode:
    """Read the ``n=<int> k=<int>`` header plus ``k`` rows over ``0 1 w W``."""
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines:
        raise ValueError("empty generator matrix text")
    header = dict(part.split("=", 1) for part in lines[0].split())
    try:
        n, k = int(header["n"]), int(header["k"])
    except (KeyError, ValueError):
        raise ValueError(f"bad header line {lines[0]!r}; expected 'n=<int> k=<int>'") from None
    body = lines[1:]
    if len(body) != k:
        raise ValueError(f"header says k={k} but {len(body)} rows follow")
    for row in body:
        if len(row) != n or any(ch not in SYMBOLS for ch in row):
            raise ValueError(f"bad generator row {row!r} for n={n}")
    code = code_from_strings(body)
    if code.k != k:
        raise ValueError(f"rows have GF(2) rank {code.k}, header says k={k}")
    return code


def format_code_text(code: AdditiveCode) -> str:
    return code.to_text()


# -- enumeration --------------------------------------------------------------


def span_arrays(a_rows: np.ndarray, b_rows: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """All ``2^len`` XOR combinations; index bit ``i`` selects row ``i``."""
    A = np.zeros(1, dtype=np.uint64)
    B = np.zeros(1, dtype=np.uint64)
    for x, y in zip(a_rows, b_rows):
        A = np.concatenate((A, A ^ x))
        B = np.concatenate((B, B ^ y))
    return A, B


def codeword_chunks(code: AdditiveCode, budget: int = DEFAULT_BUDGET) -> Iterator[tuple[np.ndarray, np.ndarray]]:
    """Yield every codeword once, as chunks of ``(A, B)`` bit-plane arrays."""
    if 1 << code.k > budget:
        raise BudgetExceeded(f"2^{code.k} codewords exceed the enumeration budget {budget}")
    a, b = code.plane_arrays()
    low = min(code.k, _LOW_BITS)
    LA, LB = span_arrays(a[:low], b[:low])
    ha, hb = a[low:], b[low:]
    ca = cb = np.uint64(0)
    yield LA, LB
    for step in range(1, 1 << len(ha)):
        j = (step & -step).bit_length() - 1
        ca ^= ha[j]
        cb ^= hb[j]
        yield LA ^ ca, LB ^ cb


def codewords(code: AdditiveCode) -> Iterator[GF4Vector]:
    """All ``2^k`` codewords in Gray-code order over generator subsets."""
    n = code.n
    ca = cb = 0
    yield GF4Vector(n)
    gens = code.generators
    for step in range(1, 1 << len(gens)):
        g = gens[(step & -step).bit_length() - 1]
        ca ^= g.a
        cb ^= g.b
        yield GF4Vector(n, ca, cb)


def weight_distribution(code: AdditiveCode, budget: int = DEFAULT_BUDGET) -> WeightDistribution:
    counts = np.zeros(code.n + 1, dtype=np.int64)
    for A, B in codeword_chunks(code, budget):
        counts += np.bincount(np.bitwise_count(A | B), minlength=code.n + 1)
    return WeightDistribution(tuple(int(c) for c in counts))


def min_distance(code: AdditiveCode, budget: int = DEFAULT_BUDGET) -> int:
    d = weight_distribution(code, budget).min_distance
    if d is None:
        raise ValueError("the zero code has no minimum distance")
    return d


def words_up_to_weight(code: AdditiveCode, wmax: int, budget: int = DEFAULT_BUDGET) -> tuple[np.ndarray, np.ndarray]:
    """Nonzero codewords of weight at most ``wmax``, sorted by (weight, B, A)."""
    if code.is_graph_form and 1 << code.k > budget:
        # a sum of i rows of Gamma + wI has weight >= i; distinct subsets give distinct words
        A, B = bounded_row_sums(*code.plane_arrays(), wmax)
    else:
        pa, pb = [], []
        for A, B in codeword_chunks(code, budget):
            w = np.bitwise_count(A | B)
            keep = (w > 0) & (w <= wmax)
            pa.append(A[keep])
            pb.append(B[keep])
        A, B = np.concatenate(pa), np.concatenate(pb)
    w = np.bitwise_count(A | B)
    keep = (w > 0) & (w <= wmax)
    A, B, w = A[keep], B[keep], w[keep]
    order = np.lexsort((A, B, w))
    return A[order], B[order]


def bounded_row_sums(a_rows: np.ndarray, b_rows: np.ndarray, limit: int) -> tuple[np.ndarray, np.ndarray]:
    """XOR of every nonempty subset of at most ``limit`` rows."""
    out_a, out_b = [], []
    for A, B, _ in iter_row_sum_levels(a_rows, b_rows, limit):
        out_a.append(A)
        out_b.append(B)
    if not out_a:
        return np.zeros(0, dtype=np.uint64), np.zeros(0, dtype=np.uint64)
    return np.concatenate(out_a), np.concatenate(out_b)


def iter_row_sum_levels(a_rows: np.ndarray, b_rows: np.ndarray, limit: int, first: Sequence[int] | None = None):
    """Yield ``(A, B, size)`` for the sums of exactly ``size`` rows, size = 1..limit.

    ``first`` restricts level 1 (and so every subset's lowest index) to the
    given rows, which is how cyclic symmetry is exploited by callers.
    """
    k = len(a_rows)
    limit = min(limit, k)
    if limit < 1:
        return
    idx = np.arange(k) if first is None else np.asarray(sorted(first))
    A = a_rows[idx].copy()
    B = b_rows[idx].copy()
    last = idx.astype(np.int64)
    yield A, B, 1
    for size in range(2, limit + 1):
        na, nb, nl = [], [], []
        for i in range(1, k):
            sel = last < i
            if not sel.any():
                continue
            na.append(A[sel] ^ a_rows[i])
            nb.append(B[sel] ^ b_rows[i])
            nl.append(np.full(int(sel.sum()), i, dtype=np.int64))
        if not na:
            return
        A, B, last = np.concatenate(na), np.concatenate(nb), np.concatenate(nl)
        yield A, B, size


# -- duality -----------------------------------------------------------------


def dual(code: AdditiveCode) -> AdditiveCode:
    """The trace-Hermitian dual, an ``(n, 2^(2n-k))`` code."""
    n = code.n
    constraints = [g.b | (g.a << n) for g in code.generators]
    null = gf2.nullspace(constraints, 2 * n)
    if not null:
        return make_code([GF4Vector(n)], allow_empty=True)
    return make_code([GF4Vector.unpack(n, x) for x in null])


def _require_half_rate(code: AdditiveCode) -> None:
    if code.k != code.n:
        raise ValueError(f"duality classes are defined here only for k = n (got k={code.k}, n={code.n})")


def is_self_dual(code: AdditiveCode) -> bool:
    _require_half_rate(code)
    return dual(code) == code


def is_formally_self_dual(code: AdditiveCode, budget: int = DEFAULT_BUDGET) -> bool:
    _require_half_rate(code)
    return weight_distribution(code, budget) == weight_distribution(dual(code), budget)


def direct_sum(c1: AdditiveCode, c2: AdditiveCode) -> AdditiveCode:
    z1, z2 = GF4Vector(c1.n), GF4Vector(c2.n)
    rows = [g.concat(z2) for g in c1.generators] + [z1.concat(g) for g in c2.generators]
    return make_code(rows)


def singleton_class(code: AdditiveCode, budget: int = DEFAULT_BUDGET) -> SingletonClass:
    _require_half_rate(code)
    d = min_distance(code, budget)
    bound = code.n // 2 + 1
    if d > bound:
        raise AssertionError(f"d={d} exceeds the Singleton bound {bound}; the code is malformed")
    if d == bound:
        return SingletonClass.EXTREMAL
    if d == bound - 1:
        return SingletonClass.NEAR_EXTREMAL
    return SingletonClass.OTHER


_BETA = {0: (0, 0, 0), 1: (0, 1, 1), 2: (1, 0, 1), 3: (1, 1, 0)}


def beta_map(code: AdditiveCode) -> np.ndarray:
    """Binary ``k x 3n`` generator matrix via 0->000, 1->011, w->101, w^2->110."""
    out = np.zeros((code.k, 3 * code.n), dtype=np.uint8)
    for r, g in enumerate(code.generators):
        for i in range(code.n):
            out[r, 3 * i : 3 * i + 3] = _BETA[g[i]]
    return out


# -- monomial maps ------------------------------------------------------------

# The six additive bijections of GF(4) fixing 0, as images of (0, 1, w, w^2).
SYMBOL_PERMS: tuple[tuple[int, int, int, int], ...] = tuple((0,) + p for p in permutations((1, 2, 3)))


def apply_monomial(code: AdditiveCode, perm: Sequence[int], sym: Sequence[Sequence[int]]) -> AdditiveCode:
    """Image of ``code`` under a monomial map.

    New coordinate ``j`` carries old coordinate ``perm[j]`` with its symbols
    relabelled by ``sym[j]`` (one of :data:`SYMBOL_PERMS`).
    """
    rows = []
    for g in code.generators:
        vals = g.values()
        rows.append(GF4Vector.from_values([sym[j][vals[perm[j]]] for j in range(code.n)]))
    return make_code(rows)
