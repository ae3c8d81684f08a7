from __future__ import annotations

import random
from itertools import combinations

import networkx as nx
import pytest

from gf4graphs import code as C
from gf4graphs import gf2
from gf4graphs.canon import (
    CODEWORD,
    COORDINATE,
    ColoredGraph,
    automorphism_order,
    build_code_graph,
    canonical_form,
    certificate,
    code_canonical_form,
    equivalent,
)
from gf4graphs.gf4 import GF4Vector
from gf4graphs.graphform import Digraph, graph_code

import oracles
from strategies import random_code, random_monomial

EXAMPLE_ROWS = ["W0010ww", "1000111", "00w0WWw", "0011WwW", "1w01WW0", "1111W11", "001w1W1"]


def words_of(code):
    return {tuple(w.values()) for w in C.codewords(code)}


def all_half_rate_codes(n: int) -> list[C.AdditiveCode]:
    seen = {}
    for rows in combinations(range(1, 1 << (2 * n)), n):
        if gf2.rank(rows) < n:
            continue
        key = tuple(gf2.rref(rows))
        if key not in seen:
            seen[key] = C.make_code([GF4Vector.unpack(n, x) for x in rows])
    return list(seen.values())


@pytest.fixture(scope="module")
def length3_codes():
    codes = all_half_rate_codes(3)
    # Gaussian binomial [6 choose 3]_2
    assert len(codes) == 1395
    return codes


def random_colored_graph(r: random.Random, n: int, p: float, ncolors: int) -> ColoredGraph:
    colors = tuple(r.randrange(ncolors) for _ in range(n))
    edges = tuple((u, v) for u, v in combinations(range(n), 2) if r.random() < p)
    return ColoredGraph(colors, edges)


def to_nx(g: ColoredGraph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from((v, {"c": c}) for v, c in enumerate(g.colors))
    h.add_edges_from(g.edges)
    return h


# -- code graph ---------------------------------------------------------------


def test_code_graph_of_single_symbol_code():
    g = build_code_graph(C.code_from_strings(["w"]))
    assert g.colors == (COORDINATE,) * 3 + (CODEWORD,)
    assert g.edge_set() == {frozenset(e) for e in [(0, 1), (1, 2), (0, 2), (1, 3)]}


def test_code_graph_all_omega_word():
    # the repetition-like code containing (w, w, ..., w)
    code = C.code_from_strings(["ww", "1W"])
    g = build_code_graph(code)
    adj = g.adjacency()
    words = [v for v in range(g.order) if g.colors[v] == CODEWORD]
    n = 2
    assert len(words) == 3
    for v in words:
        # each codeword vertex meets one corner per nonzero coordinate
        assert all(u < 3 * n for u in adj[v])
        assert len({u // 3 for u in adj[v]}) == len(adj[v])
    assert any(sorted(adj[v]) == [1, 4] for v in words)


def test_code_graph_threshold_example():
    from gf4graphs.canon import generating_words

    A, B, w = generating_words(C.code_from_strings(EXAMPLE_ROWS))
    assert w == 4 and len(A) == 35


# -- canonical form of colored graphs ---------------------------------------------


def test_relabeling_invariance_random_graph(rng):
    g = random_colored_graph(rng, 20, 0.3, 2)
    cert = canonical_form(g).certificate
    for _ in range(1000):
        perm = list(range(20))
        rng.shuffle(perm)
        assert canonical_form(g.relabel(perm)).certificate == cert


def test_certificates_match_isomorphism_oracle(rng):
    pool = []
    for _ in range(150):
        n = rng.randint(1, 8)
        g = random_colored_graph(rng, n, rng.random(), rng.randint(1, 2))
        pool.append(g)
        perm = list(range(n))
        rng.shuffle(perm)
        pool.append(g.relabel(perm))
    certs = [canonical_form(g).certificate for g in pool]
    nm = lambda a, b: a["c"] == b["c"]
    for i in range(0, len(pool), 2):
        assert certs[i] == certs[i + 1]
    for _ in range(1500):
        i, j = rng.randrange(len(pool)), rng.randrange(len(pool))
        iso = nx.is_isomorphic(to_nx(pool[i]), to_nx(pool[j]), node_match=nm)
        assert (certs[i] == certs[j]) == iso


def test_triangle_with_pendant_colorings():
    # all two-colorings of a triangle with one pendant vertex attached
    from itertools import product

    edges = ((0, 1), (1, 2), (0, 2), (2, 3))
    graphs = [ColoredGraph(c, edges) for c in product((0, 1), repeat=4)]
    nm = lambda a, b: a["c"] == b["c"]
    for g, h in combinations(graphs, 2):
        iso = nx.is_isomorphic(to_nx(g), to_nx(h), node_match=nm)
        assert (canonical_form(g).certificate == canonical_form(h).certificate) == iso


def test_graph_automorphism_orders_match_networkx(rng):
    nm = lambda a, b: a["c"] == b["c"]
    for _ in range(60):
        n = rng.randint(1, 7)
        g = random_colored_graph(rng, n, rng.random(), rng.randint(1, 2))
        h = to_nx(g)
        count = sum(1 for _ in nx.algorithms.isomorphism.GraphMatcher(h, h, node_match=nm).isomorphisms_iter())
        assert canonical_form(g).automorphism_order == count


# -- codes -------------------------------------------------------------------------


def test_length3_partition_matches_brute_force(length3_codes):
    by_cert: dict[bytes, set[int]] = {}
    by_orbit: dict[tuple, set[int]] = {}
    for i, c in enumerate(length3_codes):
        by_cert.setdefault(certificate(c), set()).add(i)
        by_orbit.setdefault(oracles.orbit_key(words_of(c)), set()).add(i)
    assert sorted(map(sorted, by_cert.values())) == sorted(map(sorted, by_orbit.values()))


def test_length3_automorphisms_match_brute_force(length3_codes):
    for c in length3_codes:
        assert automorphism_order(c) == oracles.brute_automorphisms(words_of(c))


def test_length4_random_pairs_match_brute_force(rng):
    mismatches = 0
    for t in range(200):
        c1 = random_code(rng, 4)
        if t % 2:
            perm, sym = random_monomial(rng, 4)
            c2 = C.apply_monomial(c1, perm, sym)
            if rng.random() < 0.5:
                c2 = C.make_code(list(reversed(c2.generators)))
        else:
            c2 = random_code(rng, 4)
        if equivalent(c1, c2) != oracles.brute_equivalent(words_of(c1), words_of(c2)):
            mismatches += 1
    assert mismatches == 0


def test_automorphisms_match_brute_force_n4_n5(rng):
    for n, trials in ((4, 40), (5, 6)):
        for _ in range(trials):
            c = random_code(rng, n)
            assert automorphism_order(c) == oracles.brute_automorphisms(words_of(c))
    # graph codes with symmetry
    for rows in [(0b10, 0b01), (0b110, 0b101, 0b011), (0b0010, 0b0100, 0b1000, 0b0001)]:
        c = graph_code(Digraph(len(rows), rows))
        assert automorphism_order(c) == oracles.brute_automorphisms(words_of(c))


def test_single_symbol_automorphisms():
    assert automorphism_order(C.code_from_strings(["w"])) == 2


def test_certificate_invariance_under_each_generator(rng):
    from gf4graphs.code import SYMBOL_PERMS

    ident = SYMBOL_PERMS[0]
    conj = (0, 1, 3, 2)
    times_w = (0, 2, 3, 1)
    times_w2 = (0, 3, 1, 2)
    assert conj in SYMBOL_PERMS and times_w in SYMBOL_PERMS and times_w2 in SYMBOL_PERMS
    for _ in range(25):
        n = rng.randint(1, 7)
        c = random_code(rng, n)
        cert = certificate(c)
        perm = list(range(n))
        rng.shuffle(perm)
        j = rng.randrange(n)
        for p, sym in [
            (perm, [ident] * n),
            (list(range(n)), [times_w if i == j else ident for i in range(n)]),
            (list(range(n)), [times_w2 if i == j else ident for i in range(n)]),
            (list(range(n)), [conj if i == j else ident for i in range(n)]),
            random_monomial(rng, n),
        ]:
            assert certificate(C.apply_monomial(c, p, sym)) == cert


def test_example_code_matches_its_graph():
    ex = C.code_from_strings(EXAMPLE_ROWS)
    from gf4graphs.graphform import to_graph_form

    g = graph_code(to_graph_form(ex).graph)
    assert equivalent(ex, g)
    assert code_canonical_form(ex).hex() == code_canonical_form(g).hex()


def test_distributions_separate_codes():
    a = C.code_from_strings(["w0", "0w"])
    b = C.code_from_strings(["w1", "1w"])
    assert not equivalent(a, b)
    assert not equivalent(a, C.code_from_strings(["w"]))


def test_named_length13_codes():
    from gf4graphs.constructions import CirculantSeed, circulant_code

    c1 = circulant_code(CirculantSeed.from_string("101001110000"))
    c2 = circulant_code(CirculantSeed.from_string("111011111010"))
    assert automorphism_order(c1) == 13
    assert automorphism_order(c2) == 78
    assert not equivalent(c1, c2)
    assert equivalent(c1, C.dual(c1))


def test_certificate_hex_is_lowercase():
    h = code_canonical_form(C.code_from_strings(EXAMPLE_ROWS)).hex()
    assert h == h.lower() and bytes.fromhex(h) == certificate(C.code_from_strings(EXAMPLE_ROWS))
