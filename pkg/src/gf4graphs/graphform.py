"""Directed graph codes ``Gamma + wI`` and conversion of half-rate codes to them."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from . import gf2
from .code import (
    DEFAULT_BUDGET,
    AdditiveCode,
    BudgetExceeded,
    WeightDistribution,
    iter_row_sum_levels,
    make_code,
)
from .gf4 import MAX_LENGTH, GF4Vector


class ExceptionalCodeError(ValueError):
    """The code has no equivalent directed graph code.

    ``witness`` says why: an all-zero coordinate, or simply that every choice
    of one column per coordinate pair is linearly dependent.
    """

    def __init__(self, message: str, witness: str):
        super().__init__(message)
        self.witness = witness


@dataclass(frozen=True)
class Digraph:
    """Simple digraph; ``rows[i]`` has bit ``j`` set iff there is an arc i -> j."""

    n: int
    rows: tuple[int, ...]

    def __post_init__(self) -> None:
        if not 0 < self.n <= MAX_LENGTH:
            raise ValueError(f"digraph order {self.n} outside 1..{MAX_LENGTH}")
        if len(self.rows) != self.n:
            raise ValueError("need one adjacency row per vertex")
        full = (1 << self.n) - 1
        for i, r in enumerate(self.rows):
            if r & ~full:
                raise ValueError(f"row {i} has bits beyond column {self.n - 1}")
            if (r >> i) & 1:
                raise ValueError(f"loop at vertex {i}; digraphs here are simple")

    @classmethod
    def from_matrix(cls, matrix) -> "Digraph":
        m = np.asarray(matrix, dtype=np.uint8)
        n = m.shape[0]
        rows = tuple(int(sum(1 << j for j in range(n) if m[i, j])) for i in range(n))
        return cls(n, rows)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Digraph":
        rows = [0] * n
        for i, j in edges:
            rows[i] |= 1 << j
        return cls(n, tuple(rows))

    @classmethod
    def parse(cls, text: str) -> "Digraph":
        lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
        return cls.from_matrix([[int(ch) for ch in ln] for ln in lines])

    def __str__(self) -> str:
        return "\n".join("".join("1" if (r >> j) & 1 else "0" for j in range(self.n)) for r in self.rows)

    def has_arc(self, i: int, j: int) -> bool:
        return bool((self.rows[i] >> j) & 1)

    def matrix(self) -> np.ndarray:
        return np.array([[(r >> j) & 1 for j in range(self.n)] for r in self.rows], dtype=np.uint8)

    def edges(self) -> list[tuple[int, int]]:
        return [(i, j) for i in range(self.n) for j in range(self.n) if (self.rows[i] >> j) & 1]

    def transpose(self) -> "Digraph":
        return Digraph(self.n, tuple(gf2.transpose(self.rows, self.n)))

    def out_degree(self, v: int) -> int:
        return self.rows[v].bit_count()

    def in_degree(self, v: int) -> int:
        return sum((r >> v) & 1 for r in self.rows)

    def out_neighbours(self, v: int) -> list[int]:
        return [j for j in range(self.n) if (self.rows[v] >> j) & 1]

    def in_neighbours(self, v: int) -> list[int]:
        return [i for i in range(self.n) if (self.rows[i] >> v) & 1]

    def is_symmetric(self) -> bool:
        return self.rows == self.transpose().rows

    def relabel(self, perm: Sequence[int]) -> "Digraph":
        """Graph with an arc ``perm[i] -> perm[j]`` for every arc ``i -> j``."""
        return Digraph.from_edges(self.n, [(perm[i], perm[j]) for i, j in self.edges()])


def graph_code(g: Digraph) -> AdditiveCode:
    """The directed graph code generated by ``Gamma + wI``."""
    return make_code([GF4Vector(g.n, r, 1 << i) for i, r in enumerate(g.rows)])


def graph_of_code(code: AdditiveCode) -> Digraph:
    """Inverse of :func:`graph_code` for codes whose generators are in graph form."""
    if not code.is_graph_form:
        raise ValueError("generators are not of the form Gamma + wI")
    return Digraph(code.n, tuple(g.a for g in code.generators))


def graph_dual(g: Digraph) -> Digraph:
    """Graph whose code is the dual of ``graph_code(g)``: the transpose."""
    return g.transpose()


def is_weakly_connected(g: Digraph) -> bool:
    und = [r | c for r, c in zip(g.rows, gf2.transpose(g.rows, g.n))]
    seen = 1
    frontier = 1
    while frontier:
        nxt = 0
        v = frontier
        while v:
            low = v & -v
            nxt |= und[low.bit_length() - 1]
            v ^= low
        frontier = nxt & ~seen
        seen |= nxt
    return seen == (1 << g.n) - 1


def components(g: Digraph) -> list[list[int]]:
    """Vertex sets of the weakly connected components, each sorted."""
    und = [r | c for r, c in zip(g.rows, gf2.transpose(g.rows, g.n))]
    left = (1 << g.n) - 1
    out = []
    while left:
        start = left & -left
        seen = frontier = start
        while frontier:
            nxt = 0
            v = frontier
            while v:
                low = v & -v
                nxt |= und[low.bit_length() - 1]
                v ^= low
            frontier = nxt & ~seen
            seen |= nxt
        out.append([i for i in range(g.n) if (seen >> i) & 1])
        left &= ~seen
    return out


def induced(g: Digraph, vertices: Sequence[int]) -> Digraph:
    index = {v: i for i, v in enumerate(vertices)}
    return Digraph.from_edges(
        len(vertices), [(index[i], index[j]) for i, j in g.edges() if i in index and j in index]
    )


# -- minimum distance -----------------------------------------------------------


def _graph_planes(g: Digraph) -> tuple[np.ndarray, np.ndarray]:
    a = np.array(g.rows, dtype=np.uint64)
    b = np.array([1 << i for i in range(g.n)], dtype=np.uint64)
    return a, b


def bounded_min_distance(g: Digraph, limit: int) -> int | None:
    """Minimum distance of ``graph_code(g)`` if it is at most ``limit``, else None.

    Only sums of at most ``limit`` generator rows are inspected; a sum of
    ``i`` rows has weight at least ``i`` because of the ``wI`` part.
    """
    if not 0 <= limit <= g.n:
        raise ValueError(f"limit must lie in 0..{g.n}")
    d, _ = min_distance_search(g, limit)
    return d if d is not None and d <= limit else None


def min_distance_search(
    g: Digraph, limit: int, abort_below: int = 0, cyclic: bool = False
) -> tuple[int | None, int]:
    """Iterative deepening over the number of summed rows.

    Returns ``(d, rows_used)``.  ``d`` is exact when not None.  With
    ``abort_below = t`` the search stops as soon as a word of weight < t is
    seen and returns that weight (an upper bound on d, not exact).  With
    ``cyclic`` the graph must be circulant; only subsets containing row 0
    are needed because cyclic shifts preserve weight.
    """
    a, b = _graph_planes(g)
    best = None
    for A, B, size in iter_row_sum_levels(a, b, limit, first=[0] if cyclic else None):
        w = int(np.bitwise_count(A | B).min())
        if best is None or w < best:
            best = w
        if best < abort_below:
            return best, size
        if best <= size + 1:
            # every word of weight <= size is a sum of <= size rows
            return best, size
    if best is not None and best <= limit:
        return best, limit
    return None, limit


def full_min_distance(g: Digraph, budget: int = DEFAULT_BUDGET) -> int:
    from .code import min_distance

    return min_distance(graph_code(g), budget)


# -- Z4 twin ------------------------------------------------------------------


def z4_twin_distribution(g: Digraph, budget: int = DEFAULT_BUDGET) -> WeightDistribution:
    """Hamming weights of the mod-4 sums of row subsets of ``2*Gamma + I``."""
    n = g.n
    if 1 << n > budget:
        raise BudgetExceeded(f"2^{n} words exceed the enumeration budget {budget}")
    rows = np.zeros((n, n), dtype=np.int8)
    for i, r in enumerate(g.rows):
        for j in range(n):
            rows[i, j] = 2 * ((r >> j) & 1)
        rows[i, i] = 1
    counts = np.zeros(n + 1, dtype=np.int64)
    # low part vectorised, high part looped
    low = min(n, 12)
    words = np.zeros((1, n), dtype=np.int8)
    for i in range(low):
        words = np.concatenate((words, (words + rows[i]) % 4))
    high = rows[low:]
    for mask in range(1 << len(high)):
        extra = np.zeros(n, dtype=np.int8)
        for i in range(len(high)):
            if (mask >> i) & 1:
                extra = extra + high[i]
        w = np.count_nonzero((words + extra) % 4, axis=1)
        counts += np.bincount(w, minlength=n + 1)
    return WeightDistribution(tuple(int(c) for c in counts))


Z4_OF_GF4 = (0, 2, 1, 3)  # 0, 1, w, w^2 -> 0, 2, 1, 3


# -- graph form --------------------------------------------------------------


@dataclass(frozen=True)
class GraphFormResult:
    graph: Digraph
    swaps: frozenset[int]
    conjugations: frozenset[int]


def _swap_planes(g: GF4Vector, swaps: Iterable[int]) -> GF4Vector:
    a, b = g.a, g.b
    for i in swaps:
        ai, bi = (a >> i) & 1, (b >> i) & 1
        if ai != bi:
            a ^= 1 << i
            b ^= 1 << i
    return GF4Vector(g.n, a, b)


def _column(rows: Sequence[int], i: int) -> int:
    return sum(((r >> i) & 1) << k for k, r in enumerate(rows))


SPARSEST_MAX_N = 12


def find_transversal(code: AdditiveCode) -> list[int] | None:
    """Per coordinate 0 (take b_i) or 1 (take a_i) with independent columns.

    For ``n <= SPARSEST_MAX_N`` every transversal is tried and the one whose
    graph form has the fewest arcs wins (ties: fewer swaps, then smaller
    swap mask).  Larger codes use a depth-first search, b-column first,
    cutting a branch once the chosen columns plus all columns of the
    remaining pairs cannot reach rank n.
    """
    n = code.n
    a_rows = [g.a for g in code.generators]
    b_rows = [g.b for g in code.generators]
    acol = [_column(a_rows, i) for i in range(n)]
    bcol = [_column(b_rows, i) for i in range(n)]
    if len(_basis_of(acol + bcol)) < n:
        return None
    if len(_basis_of(bcol)) == n:
        return [0] * n
    if n <= SPARSEST_MAX_N:
        return _sparsest_transversal(code, acol, bcol)
    choice: list[int] = []

    def feasible(basis: gf2.IncrementalBasis, start: int) -> bool:
        if len(basis) == n:
            return True
        trial = basis.copy()
        for j in range(start, n):
            trial.add(acol[j])
            trial.add(bcol[j])
            if len(trial) == n:
                return True
        return False

    def go(i: int, basis: gf2.IncrementalBasis) -> bool:
        if i == n:
            return True
        for pick, col in ((0, bcol[i]), (1, acol[i])):
            nxt = basis.copy()
            if not nxt.add(col) or not feasible(nxt, i + 1):
                continue
            choice.append(pick)
            if go(i + 1, nxt):
                return True
            choice.pop()
        return False

    return choice if go(0, gf2.IncrementalBasis()) else None


def _sparsest_transversal(code: AdditiveCode, acol: list[int], bcol: list[int]) -> list[int] | None:
    n = code.n
    best = None
    for mask in range(1 << n):
        cols = [acol[i] if (mask >> i) & 1 else bcol[i] for i in range(n)]
        if len(_basis_of(cols)) < n:
            continue
        swaps = [i for i in range(n) if (mask >> i) & 1]
        gamma = _normalised_gamma(code, swaps)
        arcs = sum((r & ~(1 << i)).bit_count() for i, r in enumerate(gamma))
        key = (arcs, len(swaps), mask)
        if best is None or key < best:
            best = key
    if best is None:
        return None
    return [(best[2] >> i) & 1 for i in range(n)]


def _normalised_gamma(code: AdditiveCode, swaps: Iterable[int]) -> list[int]:
    """Rows of Gamma' after swapping and the basis change to ``(Gamma' | I)``."""
    n = code.n
    rows = [_swap_planes(g, swaps) for g in code.generators]
    red = gf2.rref(r.b | (r.a << n) for r in rows)
    full = (1 << n) - 1
    gamma = [0] * n
    for r in red:
        bpart = r & full
        if bpart.bit_count() != 1:
            raise AssertionError("B' was not invertible after the transversal swap")
        gamma[bpart.bit_length() - 1] = r >> n
    return gamma


def _basis_of(cols: Iterable[int]) -> gf2.IncrementalBasis:
    basis = gf2.IncrementalBasis()
    for c in cols:
        basis.add(c)
    return basis


def to_graph_form(code: AdditiveCode) -> GraphFormResult:
    """An equivalent directed graph code, plus the coordinate operations used.

    Coordinates in ``swaps`` had their a- and b-planes exchanged (scale by
    w^2 then conjugate); after the basis change to ``(Gamma' | I)`` the
    coordinates in ``conjugations`` were conjugated to clear the diagonal.
    """
    n = code.n
    if code.k != n:
        raise ValueError(f"graph form needs a half-rate code (k={code.k}, n={n})")
    for i in range(n):
        if not any(g[i] for g in code.generators):
            raise ExceptionalCodeError(
                f"coordinate {i + 1} is zero in every codeword; no graph form exists",
                witness=f"zero column pair at coordinate {i + 1}",
            )
    choice = find_transversal(code)
    if choice is None:
        raise ExceptionalCodeError(
            "every choice of one column from each pair (a_i, b_i) is linearly dependent",
            witness="no independent column transversal",
        )
    swaps = frozenset(i for i, c in enumerate(choice) if c)
    # basis change B'^-1 (A' | B'): reduce with pivots in the B plane
    gamma = _normalised_gamma(code, swaps)
    conj = frozenset(i for i in range(n) if (gamma[i] >> i) & 1)
    gamma = [r & ~(1 << i) for i, r in enumerate(gamma)]
    return GraphFormResult(Digraph(n, tuple(gamma)), swaps, conj)


def replay_graph_form(code: AdditiveCode, result: GraphFormResult) -> AdditiveCode:
    """Apply the recorded swaps and conjugations to ``code``; equals the graph code."""
    rows = []
    for g in code.generators:
        g = _swap_planes(g, result.swaps)
        a, b = g.a, g.b
        for i in result.conjugations:
            a ^= ((b >> i) & 1) << i
        rows.append(GF4Vector(g.n, a, b))
    return make_code(rows)
