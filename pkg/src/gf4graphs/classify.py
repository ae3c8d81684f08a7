"""Census of indecomposable half-rate codes from connected digraphs."""

from __future__ import annotations

import csv
import io
import os
import tempfile
from dataclasses import dataclass, field
from itertools import permutations
from typing import Iterable, Iterator, Sequence

import numpy as np

from .canon import code_canonical_form
from .code import parse_code_text, weight_distribution
from .graphform import (
    Digraph,
    graph_code,
    graph_dual,
    is_weakly_connected,
    min_distance_search,
)

MAX_INTERNAL_N = 5

# -- digraph6 ---------------------------------------------------------------


def parse_digraph6(line: str) -> Digraph:
    """Decode one digraph6 line (``&``, size byte, 6-bit packed adjacency rows)."""
    s = line.strip()
    if s.startswith(">>digraph6<<"):
        s = s[12:]
    if not s.startswith("&"):
        raise ValueError(f"digraph6 line must start with '&': {line!r}")
    body = s[1:]
    if not body:
        raise ValueError("digraph6 line has no size byte")
    n = ord(body[0]) - 63
    if not 0 <= n <= 62:
        raise ValueError(f"unsupported digraph6 size byte {body[0]!r} (only n <= 62)")
    data = body[1:]
    nbits = n * n
    if len(data) != (nbits + 5) // 6:
        raise ValueError(f"digraph6 line for n={n} needs {(nbits + 5) // 6} data bytes, got {len(data)}")
    bits = 0
    for ch in data:
        v = ord(ch) - 63
        if not 0 <= v < 64:
            raise ValueError(f"bad digraph6 data byte {ch!r}")
        bits = (bits << 6) | v
    pad = 6 * len(data) - nbits
    if bits & ((1 << pad) - 1):
        raise ValueError("nonzero padding bits in digraph6 line")
    bits >>= pad
    rows = [0] * n
    for i in range(n):
        for j in range(n):
            if (bits >> (nbits - 1 - (i * n + j))) & 1:
                if i == j:
                    raise ValueError(f"loop at vertex {i} in digraph6 line")
                rows[i] |= 1 << j
    if n == 0:
        raise ValueError("empty digraphs are not supported")
    return Digraph(n, tuple(rows))


def to_digraph6(g: Digraph) -> str:
    n = g.n
    if n > 62:
        raise ValueError("digraph6 emitter supports n <= 62")
    bits = []
    for i in range(n):
        for j in range(n):
            bits.append((g.rows[i] >> j) & 1)
    bits += [0] * (-len(bits) % 6)
    out = ["&", chr(n + 63)]
    for k in range(0, len(bits), 6):
        v = 0
        for b in bits[k : k + 6]:
            v = (v << 1) | b
        out.append(chr(v + 63))
    return "".join(out)


def read_digraph6(path: str) -> Iterator[Digraph]:
    with open(path) as fh:
        for line in fh:
            if line.strip():
                yield parse_digraph6(line)


# -- internal enumeration -----------------------------------------------------


def _offdiag(n: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(n) for j in range(n) if i != j]


def enumerate_digraphs(n: int, connected: bool = True) -> list[Digraph]:
    """One digraph per isomorphism class, as the least arc mask in its class.

    Every adjacency matrix is relabeled by every vertex permutation (numpy over
    all ``2^(n(n-1))`` masks at once); the class minimum is a canonical form.
    """
    if not 1 <= n <= MAX_INTERNAL_N:
        raise ValueError(f"internal enumeration covers 1 <= n <= {MAX_INTERNAL_N}; read larger n from digraph6 files")
    pairs = _offdiag(n)
    index = {p: t for t, p in enumerate(pairs)}
    m = len(pairs)
    masks = np.arange(1 << m, dtype=np.int64)
    best = masks.copy()
    for perm in permutations(range(n)):
        if list(perm) == list(range(n)):
            continue
        img = np.zeros_like(masks)
        for t, (i, j) in enumerate(pairs):
            img |= ((masks >> t) & 1) << index[(perm[i], perm[j])]
        np.minimum(best, img, out=best)
    reps = np.unique(best)
    out = []
    for mask in reps.tolist():
        rows = [0] * n
        for t, (i, j) in enumerate(pairs):
            if (mask >> t) & 1:
                rows[i] |= 1 << j
        g = Digraph(n, tuple(rows))
        if not connected or is_weakly_connected(g):
            out.append(g)
    return out


def enumerate_connected_digraphs(n: int) -> list[Digraph]:
    return enumerate_digraphs(n, connected=True)


# -- records ----------------------------------------------------------------


@dataclass(frozen=True, order=True)
class CensusRecord:
    certificate: str
    n: int = field(compare=False)
    d: int = field(compare=False)
    self_dual: bool = field(compare=False)
    isodual: bool = field(compare=False)
    formally_self_dual: bool = field(compare=False)
    generators: tuple[str, ...] = field(compare=False)

    @property
    def flags(self) -> str:
        return "".join(c if f else "-" for c, f in zip("SIF", (self.self_dual, self.isodual, self.formally_self_dual)))

    def matrix_text(self) -> str:
        return f"n={self.n} k={self.n}\n" + "\n".join(self.generators) + "\n"

    def to_tsv(self) -> str:
        return "\t".join([str(self.n), str(self.d), self.flags, self.certificate, ";".join(self.generators)])

    @classmethod
    def from_tsv(cls, line: str) -> "CensusRecord":
        parts = line.rstrip("\n").split("\t")
        if len(parts) != 5:
            raise ValueError(f"census line needs 5 tab-separated fields, got {len(parts)}")
        n, d, flags, cert, rows = parts
        if len(flags) != 3 or any(f not in (c, "-") for f, c in zip(flags, "SIF")):
            raise ValueError(f"bad flag field {flags!r}")
        gens = tuple(rows.split(";"))
        return cls(cert, int(n), int(d), flags[0] == "S", flags[1] == "I", flags[2] == "F", gens)


def classify_graph(g: Digraph, cert: str | None = None) -> CensusRecord:
    """Record for one digraph: certificate, distance and duality flags."""
    code = graph_code(g)
    if cert is None:
        cert = code_canonical_form(code).hex()
    d, _ = min_distance_search(g, g.n)
    t = graph_dual(g)
    self_dual = t.rows == g.rows
    if self_dual:
        isodual = fsd = True
    else:
        dual_code = graph_code(t)
        fsd = weight_distribution(code) == weight_distribution(dual_code)
        # isodual implies formally self-dual
        isodual = fsd and code_canonical_form(dual_code).hex() == cert
    return CensusRecord(cert, g.n, d, self_dual, isodual, fsd, tuple(str(r) for r in code.generators))


def _cert_hex(g: Digraph) -> str:
    return code_canonical_form(graph_code(g)).hex()


def classify_codes(graphs: Iterable[Digraph], workers: int = 1) -> list[CensusRecord]:
    """One record per equivalence class of graph codes, sorted by certificate.

    Duality flags are computed once per class; they are equivalence invariants.
    """
    graphs = list(graphs)
    if len({g.n for g in graphs}) > 1:
        raise ValueError("all graphs in one census must have the same order")
    if workers > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(workers) as ex:
            certs = list(ex.map(_cert_hex, graphs, chunksize=256))
    else:
        certs = map(_cert_hex, graphs)
    reps: dict[str, tuple[str, Digraph]] = {}
    for g, cert in zip(graphs, certs):
        text = ";".join(str(r) for r in graph_code(g).generators)
        if cert not in reps or text < reps[cert][0]:
            reps[cert] = (text, g)
    return sorted(classify_graph(g, cert) for cert, (_, g) in reps.items())


def merge_records(*shards: Iterable[CensusRecord]) -> list[CensusRecord]:
    """Union by certificate, keeping the least generator text per certificate."""
    best: dict[str, CensusRecord] = {}
    for shard in shards:
        for rec in shard:
            cur = best.get(rec.certificate)
            if cur is None or rec.generators < cur.generators:
                best[rec.certificate] = rec
    return sorted(best.values())


# -- euler transform ----------------------------------------------------------


def euler_transform(counts: Sequence[int]) -> list[int]:
    """Totals ``t_1..t_n`` from indecomposable counts ``i_1..i_n``."""
    i = [0] + list(counts)
    n = len(counts)
    c = [0] * (n + 1)
    for m in range(1, n + 1):
        c[m] = sum(d * i[d] for d in range(1, m + 1) if m % d == 0)
    t = [1] + [0] * n
    for m in range(1, n + 1):
        s = c[m] + sum(c[k] * t[m - k] for k in range(1, m))
        if s % m:
            raise ValueError(f"Euler transform division by {m} is not exact; inconsistent input")
        t[m] = s // m
    return t[1:]


# -- tables -----------------------------------------------------------------

FILTERS = {
    "all": lambda r: True,
    "fsd": lambda r: r.formally_self_dual,
    "isodual": lambda r: r.isodual,
    "selfdual": lambda r: r.self_dual,
}


@dataclass
class CensusTable:
    filter: str
    counts: dict[int, dict[int, int]]  # n -> d -> count

    @property
    def lengths(self) -> list[int]:
        return sorted(self.counts)

    @property
    def distances(self) -> list[int]:
        return sorted({d for row in self.counts.values() for d in row})

    def total(self, n: int) -> int:
        return sum(self.counts.get(n, {}).values())

    def get(self, n: int, d: int) -> int:
        return self.counts.get(n, {}).get(d, 0)

    def to_text(self) -> str:
        ns, ds = self.lengths, self.distances
        head = ["d\\n"] + [str(n) for n in ns]
        rows = [[str(d)] + [str(self.get(n, d)) if self.get(n, d) else "" for n in ns] for d in ds]
        rows.append(["Total"] + [str(self.total(n)) for n in ns])
        widths = [max(len(r[i]) for r in [head] + rows) for i in range(len(head))]
        fmt = lambda r: "  ".join(x.rjust(w) for x, w in zip(r, widths))
        return "\n".join([fmt(head)] + [fmt(r) for r in rows]) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["filter", "n", "d", "count"])
        for n in self.lengths:
            for d in sorted(self.counts[n]):
                w.writerow([self.filter, n, d, self.counts[n][d]])
            w.writerow([self.filter, n, "total", self.total(n)])
        return buf.getvalue()


def census_report(records: Iterable[CensusRecord], filter: str = "all") -> CensusTable:
    try:
        keep = FILTERS[filter]
    except KeyError:
        raise ValueError(f"unknown filter {filter!r}; choose from {sorted(FILTERS)}") from None
    counts: dict[int, dict[int, int]] = {}
    for r in records:
        row = counts.setdefault(r.n, {})
        if keep(r):
            row[r.d] = row.get(r.d, 0) + 1
    return CensusTable(filter, counts)


# -- database ---------------------------------------------------------------


def write_database(records: Iterable[CensusRecord], path: str) -> None:
    """Write the TSV database atomically (temp file, then rename)."""
    text = "".join(r.to_tsv() + "\n" for r in sorted(records))
    atomic_write(path, text)


def atomic_write(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=os.path.basename(path))
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def read_database(path: str) -> list[CensusRecord]:
    with open(path) as fh:
        return [CensusRecord.from_tsv(line) for line in fh if line.strip()]


def record_code(record: CensusRecord):
    return parse_code_text(record.matrix_text())
