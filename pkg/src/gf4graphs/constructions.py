"""Circulant, bordered circulant and quadratic residue graph codes, and the
exhaustive search over them for the highest minimum distance.
"""

from __future__ import annotations

import json
import logging
import math
import os
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .canon import code_canonical_form
from .classify import atomic_write
from .code import AdditiveCode, WeightDistribution, weight_distribution
from .graphform import Digraph, graph_code, min_distance_search

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class CirculantSeed:
    """First adjacency row after the diagonal: ``bits[i]`` is the arc 0 -> i+1."""

    n: int
    bits: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.n < 2:
            raise ValueError("circulant codes need n >= 2")
        if len(self.bits) != self.n - 1 or any(b not in (0, 1) for b in self.bits):
            raise ValueError(f"seed for n={self.n} needs {self.n - 1} binary entries")

    @classmethod
    def from_string(cls, text: str) -> "CirculantSeed":
        text = text.strip()
        return cls(len(text) + 1, tuple(int(c) for c in text))

    @classmethod
    def from_int(cls, n: int, value: int) -> "CirculantSeed":
        """Bit ``i`` of ``value`` is ``a_{i+1}``."""
        return cls(n, tuple((value >> i) & 1 for i in range(n - 1)))

    def to_int(self) -> int:
        return sum(b << i for i, b in enumerate(self.bits))

    def __str__(self) -> str:
        return "".join(map(str, self.bits))

    def is_symmetric(self) -> bool:
        return self.bits == self.bits[::-1]


def circulant_graph(seed: CirculantSeed) -> Digraph:
    n = seed.n
    first = (seed.to_int() << 1)  # bit j = arc 0 -> j
    full = (1 << n) - 1
    rows = tuple(((first << i) | (first >> (n - i))) & full for i in range(n))
    return Digraph(n, rows)


def bordered_graph(seed: CirculantSeed) -> Digraph:
    """Length ``n + 1``: vertex 0 joined both ways to every circulant vertex."""
    inner = circulant_graph(seed)
    n = seed.n
    rows = [((1 << (n + 1)) - 1) & ~1]
    rows += [(r << 1) | 1 for r in inner.rows]
    return Digraph(n + 1, tuple(rows))


def circulant_code(seed: CirculantSeed) -> AdditiveCode:
    """Row ``i`` is ``(w, a_1, ..., a_{n-1})`` cyclically shifted ``i`` places right."""
    return graph_code(circulant_graph(seed))


def bordered_circulant_code(seed: CirculantSeed) -> AdditiveCode:
    return graph_code(bordered_graph(seed))


def _is_odd_prime(p: int) -> bool:
    return p > 2 and all(p % q for q in range(2, math.isqrt(p) + 1))


def qr_seed(p: int) -> CirculantSeed:
    if not _is_odd_prime(p):
        raise ValueError(f"{p} is not an odd prime")
    residues = {(x * x) % p for x in range(1, p)}
    return CirculantSeed(p, tuple(1 if i in residues else 0 for i in range(1, p)))


def qr_code(p: int, bordered: bool = False) -> AdditiveCode:
    seed = qr_seed(p)
    return bordered_circulant_code(seed) if bordered else circulant_code(seed)


# -- search -----------------------------------------------------------------


def multiplier_class_rep(n: int, value: int) -> int:
    """Least seed in the orbit of ``value`` under ``i -> u*i mod n``, gcd(u, n) = 1.

    Multiplying indices by a unit relabels the circulant graph's vertices, so
    the codes are equivalent by a coordinate permutation.
    """
    support = [i + 1 for i in range(n - 1) if (value >> i) & 1]
    best = value
    for u in range(2, n):
        if math.gcd(u, n) != 1:
            continue
        img = 0
        for s in support:
            img |= 1 << ((u * s) % n - 1)
        best = min(best, img)
    return best


@dataclass
class Candidate:
    construction: str  # "circulant" or "bordered"
    seed: CirculantSeed
    code: AdditiveCode = field(repr=False)
    certificate: str = ""
    automorphism_order: int = 0

    @property
    def self_dual(self) -> bool:
        return self.seed.is_symmetric()


@dataclass
class SearchReport:
    n: int
    constructions: tuple[str, ...]
    max_d: int
    codes: list[Candidate]
    complete: bool = True
    seeds_visited: int = 0  # position reached in the seed stream

    @property
    def count(self) -> int:
        return len(self.codes)

    @property
    def self_dual_count(self) -> int:
        return sum(1 for c in self.codes if c.self_dual)

    def to_csv_rows(self) -> list[list[str]]:
        rows = []
        for c in self.codes:
            rows.append(
                [
                    str(self.n),
                    str(self.max_d),
                    c.construction,
                    str(c.seed),
                    "1" if c.self_dual else "0",
                    str(c.automorphism_order),
                    c.certificate,
                ]
            )
        return rows


def _seed_stream(n: int, constructions: Sequence[str]) -> list[tuple[str, int, int]]:
    """(construction, seed length, seed int) for the length-n search, in search order."""
    out: list[tuple[str, int, int]] = []
    if "circulant" in constructions and n >= 2:
        out += [("circulant", n, v) for v in range(1 << (n - 1))]
    if "bordered" in constructions and n >= 3:
        out += [("bordered", n - 1, v) for v in range(1 << (n - 2))]
    return out


def _graph_for(kind: str, seed: CirculantSeed) -> Digraph:
    return circulant_graph(seed) if kind == "circulant" else bordered_graph(seed)


def _scan(
    items: Sequence[tuple[str, int, int]], best: int, limit: int, prefilter: bool
) -> tuple[int, list[tuple[str, int]]]:
    """Best distance in ``items`` (at least ``best``) and the seeds reaching it."""
    survivors: list[tuple[str, int]] = []
    for kind, m, v in items:
        if prefilter and multiplier_class_rep(m, v) != v:
            # the least member of the multiplier orbit stands in for it
            continue
        g = _graph_for(kind, CirculantSeed.from_int(m, v))
        d, _ = min_distance_search(g, limit, abort_below=best, cyclic=kind == "circulant")
        if d is None:
            # every word is heavier than limit; d is at least limit + 1
            d = limit + 1
        if d < best:
            continue
        if d > best:
            best, survivors = d, []
        survivors.append((kind, v))
    return best, survivors


def _scan_job(args):
    return _scan(*args)


def search_best(
    n: int,
    constructions: Sequence[str] = ("circulant", "bordered"),
    max_row_limit: int | None = None,
    budget: int | None = None,
    checkpoint: str | None = None,
    workers: int = 1,
    prefilter: bool = True,
) -> SearchReport:
    """Highest minimum distance over all circulant and bordered codes of length n.

    Each seed is screened by iterative deepening on the number of summed rows,
    aborting once a word lighter than the best so far appears.  ``prefilter``
    skips seeds that are not the least in their multiplier orbit.  Seeds at
    the best distance are deduplicated by certificate.

    ``max_row_limit`` caps the deepening; codes whose words all exceed it are
    treated as distance ``limit + 1``, so a low cap can only merge distinct
    distances and the report is then marked incomplete.  ``budget`` caps the
    number of seeds visited in this call; ``checkpoint`` names a JSON file
    that records progress so a later call resumes where this one stopped.
    """
    if n < 2:
        raise ValueError("search needs n >= 2")
    unknown = set(constructions) - {"circulant", "bordered"}
    if unknown or not constructions:
        raise ValueError(f"constructions must be drawn from circulant, bordered; got {sorted(unknown)}")
    if budget is not None and budget < 1:
        raise ValueError("budget must be positive")
    constructions = tuple(c for c in ("circulant", "bordered") if c in constructions)
    limit = n if max_row_limit is None else max(1, min(max_row_limit, n))
    stream = _seed_stream(n, constructions)
    best = 0
    survivors: list[tuple[str, int]] = []
    start = 0
    if checkpoint and os.path.exists(checkpoint):
        with open(checkpoint) as fh:
            state = json.load(fh)
        key = [n, list(constructions), limit, prefilter]
        if state.get("key") != key:
            raise ValueError(f"checkpoint {checkpoint} belongs to a different search")
        start, best = state["next"], state["best"]
        survivors = [tuple(x) for x in state["survivors"]]
    stop = len(stream) if budget is None else min(len(stream), start + budget)
    todo = stream[start:stop]
    if workers > 1 and len(todo) > 1:
        from concurrent.futures import ProcessPoolExecutor

        size = -(-len(todo) // (4 * workers))
        chunks = [todo[i : i + size] for i in range(0, len(todo), size)]
        with ProcessPoolExecutor(workers) as ex:
            parts = list(ex.map(_scan_job, [(c, best, limit, prefilter) for c in chunks]))
        parts.insert(0, (best, survivors))
        best = max(b for b, _ in parts)
        survivors = [s for b, ss in parts if b == best for s in ss]
    else:
        b, found = _scan(todo, best, limit, prefilter)
        survivors = found if b > best else survivors + found
        best = b
    if checkpoint:
        state = {
            "key": [n, list(constructions), limit, prefilter],
            "next": stop,
            "best": best,
            "survivors": [list(s) for s in survivors],
        }
        atomic_write(checkpoint, json.dumps(state) + "\n")
    classes: dict[str, Candidate] = {}
    for kind, v in survivors:
        m = n if kind == "circulant" else n - 1
        seed = CirculantSeed.from_int(m, v)
        code = graph_code(_graph_for(kind, seed))
        form = code_canonical_form(code)
        cert = form.hex()
        if cert not in classes:
            classes[cert] = Candidate(kind, seed, code, cert, form.automorphism_order)
    codes = sorted(classes.values(), key=lambda c: c.certificate)
    complete = stop == len(stream) and best <= limit
    return SearchReport(n, constructions, best, codes, complete, stop)


def enumerator_census(codes: Iterable[AdditiveCode]) -> dict[WeightDistribution, int]:
    out: dict[WeightDistribution, int] = {}
    for c in codes:
        w = weight_distribution(c)
        out[w] = out.get(w, 0) + 1
    return out
