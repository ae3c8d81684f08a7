"""Code equivalence and automorphism groups through colored code graphs.

A half-rate code is turned into an undirected two-colored graph: one vertex
per codeword of a low-weight generating set, and one triangle per coordinate
whose corners stand for the symbols 1, w, w^2.  Codeword vertices are joined
to the corner matching each nonzero symbol.  Color-preserving isomorphisms
of these graphs are exactly the monomial maps between the codes, so a
canonical labeling decides equivalence and the automorphism group of the
graph is the automorphism group of the code.

The canonical labeling is a plain individualization-refinement search:
equitable refinement with a splitting trace, target cell = first smallest
non-singleton cell, pruning by automorphisms found at leaves and by
comparing traces against the first and the best path.
"""

from __future__ import annotations

import struct
from collections import deque
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import gf2
from .code import DEFAULT_BUDGET, AdditiveCode, BudgetExceeded, weight_distribution, words_up_to_weight

CODEWORD, COORDINATE = 0, 1


@dataclass(frozen=True, eq=False)
class ColoredGraph:
    """Undirected vertex-colored graph; colors are small ints."""

    colors: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]

    @property
    def order(self) -> int:
        return len(self.colors)

    def adjacency(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in self.colors]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return adj

    def relabel(self, perm: Sequence[int]) -> "ColoredGraph":
        """Vertex ``v`` becomes ``perm[v]``."""
        colors = [0] * self.order
        for v, c in enumerate(self.colors):
            colors[perm[v]] = c
        return ColoredGraph(tuple(colors), tuple((perm[u], perm[v]) for u, v in self.edges))

    def edge_set(self) -> frozenset[frozenset[int]]:
        return frozenset(frozenset(e) for e in self.edges)


@dataclass(frozen=True)
class CanonicalForm:
    certificate: bytes
    automorphism_order: int
    labeling: tuple[int, ...]  # vertex -> canonical label

    def hex(self) -> str:
        return self.certificate.hex()


# -- code graph ---------------------------------------------------------------


def generating_words(code: AdditiveCode, budget: int = DEFAULT_BUDGET) -> tuple[np.ndarray, np.ndarray, int]:
    """Codewords of weight <= w for the least w >= d at which they span the code."""
    if code.k != code.n:
        raise ValueError(f"code graphs are built for half-rate codes (k={code.k}, n={code.n})")
    n = code.n
    if 1 << code.k <= budget:
        d = weight_distribution(code, budget).min_distance
    elif code.is_graph_form:
        from .graphform import graph_of_code, min_distance_search

        d, _ = min_distance_search(graph_of_code(code), n)
    else:
        raise BudgetExceeded(f"2^{code.k} codewords exceed the enumeration budget {budget}")
    for w in range(d, n + 1):
        A, B = words_up_to_weight(code, w, budget)
        if gf2.rank(int(a) | (int(b) << n) for a, b in zip(A.tolist(), B.tolist())) == code.k:
            return A, B, w
    raise AssertionError("the full codeword set always spans the code")


def build_code_graph(code: AdditiveCode, budget: int = DEFAULT_BUDGET) -> ColoredGraph:
    """Colored code graph with coordinate triangles first, then codeword vertices.

    Vertex ``3*j + s - 1`` is symbol ``s`` (1, w, w^2 as 1, 2, 3) of
    coordinate ``j``.
    """
    A, B, _ = generating_words(code, budget)
    n = code.n
    m = len(A)
    edges: list[tuple[int, int]] = []
    for j in range(n):
        t = 3 * j
        edges += [(t, t + 1), (t + 1, t + 2), (t, t + 2)]
    base = 3 * n
    for idx, (a, b) in enumerate(zip(A.tolist(), B.tolist())):
        v = base + idx
        support = a | b
        while support:
            low = support & -support
            j = low.bit_length() - 1
            s = ((a >> j) & 1) | (((b >> j) & 1) << 1)
            edges.append((3 * j + s - 1, v))
            support ^= low
    colors = (COORDINATE,) * (3 * n) + (CODEWORD,) * m
    return ColoredGraph(colors, tuple(edges))


# -- partition refinement -------------------------------------------------------


class _Partition:
    """Ordered partition: ``perm[start:end[start]]`` is a cell."""

    __slots__ = ("perm", "pos", "cell", "end", "ncells")

    def __init__(self, perm, pos, cell, end, ncells):
        self.perm = perm
        self.pos = pos
        self.cell = cell
        self.end = end
        self.ncells = ncells

    def copy(self) -> "_Partition":
        return _Partition(self.perm[:], self.pos[:], self.cell[:], self.end[:], self.ncells)

    def discrete(self) -> bool:
        return self.ncells == len(self.perm)

    def target_cell(self) -> int:
        """Start of the first smallest non-singleton cell."""
        best, best_size = -1, 0
        p, N, end = 0, len(self.perm), self.end
        while p < N:
            e = end[p]
            size = e - p
            if size > 1 and (best < 0 or size < best_size):
                best, best_size = p, size
                if size == 2:
                    break
            p = e
        return best

    def individualize(self, v: int) -> int:
        st = self.cell[v]
        e = self.end[st]
        pv = self.pos[v]
        w = self.perm[st]
        self.perm[st], self.perm[pv] = v, w
        self.pos[v], self.pos[w] = st, pv
        self.end[st] = st + 1
        self.end[st + 1] = e
        cell = self.cell
        for u in self.perm[st + 1 : e]:
            cell[u] = st + 1
        self.ncells += 1
        return st


def _refine(part: _Partition, adj: list[list[int]], splitters) -> int:
    """Make ``part`` equitable; return an isomorphism-invariant trace hash."""
    perm, pos, cell, end = part.perm, part.pos, part.cell, part.end
    queue = deque(splitters)
    queued = set(splitters)
    trace = []
    N = len(perm)
    while queue and part.ncells < N:
        s = queue.popleft()
        queued.discard(s)
        count: dict[int, int] = {}
        get = count.get
        for u in perm[s : end[s]]:
            for v in adj[u]:
                count[v] = get(v, 0) + 1
        touched: dict[int, list[int]] = {}
        for v in count:
            st = cell[v]
            if end[st] - st > 1:
                lst = touched.get(st)
                if lst is None:
                    touched[st] = [v]
                else:
                    lst.append(v)
        for st in sorted(touched):
            vs = touched[st]
            e = end[st]
            size = e - st
            if len(vs) == size:
                c0 = count[vs[0]]
                for v in vs:
                    if count[v] != c0:
                        break
                else:
                    continue
            # move touched vertices to the back of the cell, sorted by count
            vs.sort(key=count.__getitem__)
            t = e - len(vs)
            back = set(vs)
            if len(vs) < size:
                front = [u for u in perm[st:e] if u not in back]
                perm[st:t] = front
                for i, u in enumerate(front, st):
                    pos[u] = i
            perm[t:e] = vs
            for i, u in enumerate(vs, t):
                pos[u] = i
            # cut into fragments
            starts = []
            if t > st:
                starts.append(st)
                end[st] = t
            prev = None
            frag = []
            for i in range(t, e):
                c = count[perm[i]]
                if c != prev:
                    starts.append(i)
                    frag.append(c)
                    prev = c
            bounds = starts + [e]
            for a_, b_ in zip(bounds, bounds[1:]):
                end[a_] = b_
                for u in perm[a_:b_]:
                    cell[u] = a_
            part.ncells += len(starts) - 1
            trace.append((s, st, t - st, tuple(frag), len(starts)))
            if st in queued:
                for f in starts[1:]:
                    queue.append(f)
                    queued.add(f)
            else:
                big = max(range(len(starts)), key=lambda i: bounds[i + 1] - bounds[i])
                for i, f in enumerate(starts):
                    if i != big:
                        queue.append(f)
                        queued.add(f)
    return hash((part.ncells, tuple(trace)))


# -- search -------------------------------------------------------------------


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, x: int, y: int) -> None:
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            if rx < ry:
                self.parent[ry] = rx
            else:
                self.parent[rx] = ry


class _Canonizer:
    def __init__(self, graph: ColoredGraph):
        self.graph = graph
        self.N = graph.order
        self.adj = graph.adjacency()
        e = np.array(graph.edges, dtype=np.int64).reshape(-1, 2)
        self.eu, self.ev = e[:, 0], e[:, 1]
        self.gens: list[list[int]] = []
        self.first = None  # (path, key, perm)
        self.best = None
        self.order = 1

    # leaves ------------------------------------------------------------

    def _leaf_key(self, part: _Partition) -> bytes:
        lab = np.asarray(part.pos, dtype=np.int64)
        lu, lv = lab[self.eu], lab[self.ev]
        code = np.minimum(lu, lv) * self.N + np.maximum(lu, lv)
        code.sort()
        return code.tobytes()

    def _record(self, src_perm: Sequence[int], dst_perm: Sequence[int]) -> None:
        gamma = [0] * self.N
        for p, v in enumerate(src_perm):
            gamma[v] = dst_perm[p]
        if any(i != x for i, x in enumerate(gamma)):
            self.gens.append(gamma)

    def _orbits(self, fixed: Sequence[int]) -> _UnionFind:
        uf = _UnionFind(self.N)
        for g in self.gens:
            if all(g[x] == x for x in fixed):
                for i, x in enumerate(g):
                    if i != x:
                        uf.union(i, x)
        return uf

    # tree --------------------------------------------------------------

    def run(self) -> CanonicalForm:
        colors = self.graph.colors
        order = sorted(range(self.N), key=lambda v: colors[v])
        perm = order
        pos = [0] * self.N
        for i, v in enumerate(perm):
            pos[v] = i
        cell = [0] * self.N
        end = [0] * (self.N + 1)
        starts = []
        i = 0
        while i < self.N:
            j = i
            while j < self.N and colors[perm[j]] == colors[perm[i]]:
                j += 1
            starts.append(i)
            end[i] = j
            for v in perm[i:j]:
                cell[v] = i
            i = j
        root = _Partition(perm, pos, cell, end, len(starts))
        inv = _refine(root, self.adj, starts)
        self._first_path(root, [inv], [])
        labeling = tuple(self.best[2])
        return CanonicalForm(self._certificate(labeling), self.order, labeling)

    def _first_path(self, part: _Partition, path: list[int], seq: list[int]) -> None:
        if part.discrete():
            key = self._leaf_key(part)
            self.first = self.best = (list(path), key, part.pos[:], part.perm[:])
            return
        st = part.target_cell()
        cell_vs = part.perm[st : part.end[st]]
        v0 = cell_vs[0]
        child = part.copy()
        s = child.individualize(v0)
        inv = _refine(child, self.adj, [s])
        self._first_path(child, path + [inv], seq + [v0])
        explored = [v0]
        for v in cell_vs[1:]:
            uf = self._orbits(seq)
            roots = {uf.find(x) for x in explored}
            if uf.find(v) in roots:
                continue
            child = part.copy()
            s = child.individualize(v)
            inv = _refine(child, self.adj, [s])
            self._explore(child, path + [inv], seq + [v])
            explored.append(v)
        uf = self._orbits(seq)
        r0 = uf.find(v0)
        self.order *= sum(1 for x in cell_vs if uf.find(x) == r0)

    def _explore(self, part: _Partition, path: list[int], seq: list[int]) -> bool:
        """Search a subtree; True once a leaf equivalent to the first leaf is hit."""
        L = len(path)
        fpath = self.first[0]
        on_first = path == fpath[:L]
        bpath = self.best[0]
        if not on_first and path < bpath[:L]:
            return False
        if part.discrete():
            key = self._leaf_key(part)
            if on_first and key == self.first[1] and len(path) == len(fpath):
                self._record(self.first[3], part.perm)
                return True
            cand = (path, key)
            bkey = (bpath, self.best[1])
            if cand == bkey:
                self._record(self.best[3], part.perm)
            elif cand > bkey:
                self.best = (list(path), key, part.pos[:], part.perm[:])
            return False
        st = part.target_cell()
        cell_vs = part.perm[st : part.end[st]]
        explored: list[int] = []
        for v in cell_vs:
            if explored:
                uf = self._orbits(seq)
                roots = {uf.find(x) for x in explored}
                if uf.find(v) in roots:
                    continue
            child = part.copy()
            s = child.individualize(v)
            inv = _refine(child, self.adj, [s])
            if self._explore(child, path + [inv], seq + [v]):
                return True
            explored.append(v)
        return False

    def _certificate(self, labeling: Sequence[int]) -> bytes:
        N = self.N
        colors = self.graph.colors
        sizes = []
        for c in sorted(set(colors)):
            sizes.append((c, colors.count(c)))
        header = struct.pack(">I", N) + b"".join(struct.pack(">II", c, k) for c, k in sizes)
        lab = np.asarray(labeling, dtype=np.int64)
        mat = np.zeros((N, N), dtype=bool)
        lu, lv = lab[self.eu], lab[self.ev]
        mat[lu, lv] = True
        mat[lv, lu] = True
        bits = mat[np.triu_indices(N, 1)]
        return header + np.packbits(bits).tobytes()


def canonical_form(graph: ColoredGraph) -> CanonicalForm:
    """Canonical labeling, certificate and automorphism group order."""
    return _Canonizer(graph).run()


def code_canonical_form(code: AdditiveCode, budget: int = DEFAULT_BUDGET) -> CanonicalForm:
    return canonical_form(build_code_graph(code, budget))


def certificate(code: AdditiveCode, budget: int = DEFAULT_BUDGET) -> bytes:
    return code_canonical_form(code, budget).certificate


def equivalent(c1: AdditiveCode, c2: AdditiveCode, budget: int = DEFAULT_BUDGET) -> bool:
    if c1.n != c2.n or c1.k != c2.k:
        return False
    return certificate(c1, budget) == certificate(c2, budget)


def automorphism_order(code: AdditiveCode, budget: int = DEFAULT_BUDGET) -> int:
    return code_canonical_form(code, budget).automorphism_order
