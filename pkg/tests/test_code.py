from __future__ import annotations

from math import comb

import numpy as np
import pytest
from hypothesis import given, settings

from gf4graphs import code as C
from gf4graphs.code import SingletonClass
from gf4graphs.gf4 import GF4Vector, trace_inner_product

import oracles
from strategies import codes, random_code, random_monomial

EXAMPLE_ROWS = ["W0010ww", "1000111", "00w0WWw", "0011WwW", "1w01WW0", "1111W11", "001w1W1"]


def words_of(code):
    return {tuple(w.values()) for w in C.codewords(code)}


def test_make_code_examples():
    c = C.code_from_strings(["w", "w"])
    assert c.k == 1
    assert C.code_from_strings(EXAMPLE_ROWS).k == 7
    assert C.code_from_strings(["10", "w0"]).k == 2
    with pytest.raises(ValueError):
        C.code_from_strings(["00", "00"])
    with pytest.raises(ValueError):
        C.make_code([GF4Vector(2), GF4Vector(3)])


def test_codewords_small_and_example():
    assert [str(w) for w in C.codewords(C.code_from_strings(["w"]))] == ["0", "w"]
    ex = C.code_from_strings(EXAMPLE_ROWS)
    words = list(C.codewords(ex))
    assert len(words) == 128 == len(set(words))
    # Gray order: consecutive words differ by exactly one generator
    gens = set(ex.generators)
    for u, v in zip(words, words[1:]):
        assert u + v in gens
    assert all(w in ex for w in words)


def test_example_distance_and_distribution():
    ex = C.code_from_strings(EXAMPLE_ROWS)
    assert C.min_distance(ex) == 4
    wd = C.weight_distribution(ex)
    assert wd.counts == oracles.distribution(oracles.span([g.values() for g in ex.generators]), 7)
    assert C.weight_distribution(C.code_from_strings(["w"])).counts == (1, 1)
    assert C.min_distance(C.code_from_strings(["w"])) == 1


def test_budget_is_enforced():
    ex = C.code_from_strings(EXAMPLE_ROWS)
    with pytest.raises(C.BudgetExceeded):
        C.weight_distribution(ex, budget=64)


@settings(max_examples=60, deadline=None)
@given(codes(max_n=6, half_rate=False))
def test_distribution_against_oracle(code):
    words = oracles.span([g.values() for g in code.generators])
    wd = C.weight_distribution(code)
    assert wd.counts == oracles.distribution(words, code.n)
    assert sum(wd.counts) == 2**code.k and wd.counts[0] == 1
    assert words_of(code) == words


@settings(max_examples=40, deadline=None)
@given(codes(max_n=4, half_rate=False))
def test_dual_against_oracle(code):
    words = words_of(code)
    d = C.dual(code)
    assert words_of(d) == oracles.dual_set(words, code.n)
    assert d.k == 2 * code.n - code.k


@settings(max_examples=50, deadline=None)
@given(codes(max_n=6, half_rate=False))
def test_dual_involution_and_orthogonality(code):
    d = C.dual(code)
    assert C.dual(d) == code
    for g in code.generators:
        for h in d.generators:
            assert trace_inner_product(g, h) == 0


def test_dual_dimension_random(rng):
    for _ in range(50):
        n = rng.randint(1, 8)
        k = rng.randint(1, 2 * n - 1)
        assert C.dual(random_code(rng, n, k)).k == 2 * n - k


def test_duality_flags():
    # [[w 1 1 ...]] style: the 2-cycle graph code is self-dual
    sd = C.code_from_strings(["w1", "1w"])
    assert C.is_self_dual(sd) and C.is_formally_self_dual(sd)
    one_arc = C.code_from_strings(["w1", "0w"])
    assert not C.is_self_dual(one_arc)
    assert C.is_formally_self_dual(one_arc)  # transpose is isomorphic
    with pytest.raises(ValueError):
        C.is_self_dual(C.code_from_strings(["w0"]))


@settings(max_examples=40, deadline=None)
@given(codes(max_n=5), codes(max_n=4))
def test_direct_sum(c1, c2):
    s = C.direct_sum(c1, c2)
    assert (s.n, s.k) == (c1.n + c2.n, c1.k + c2.k)
    assert C.min_distance(s) == min(C.min_distance(c1), C.min_distance(c2))
    p = np.polynomial.polynomial.polymul(C.weight_distribution(c1).counts, C.weight_distribution(c2).counts)
    p = [int(x) for x in p] + [0] * (s.n + 1 - len(p))
    assert C.weight_distribution(s).counts == tuple(p)
    e = C.direct_sum(C.code_from_strings(["w"]), C.code_from_strings(["w"]))
    assert C.weight_distribution(e).counts == (1, 2, 1)


def test_singleton_classes():
    from gf4graphs.constructions import bordered_circulant_code, qr_seed, CirculantSeed, circulant_code

    assert C.singleton_class(bordered_circulant_code(qr_seed(5))) is SingletonClass.EXTREMAL
    assert C.singleton_class(C.code_from_strings(EXAMPLE_ROWS)) is SingletonClass.EXTREMAL
    c13 = circulant_code(CirculantSeed.from_string("101001110000"))
    assert C.singleton_class(c13) is SingletonClass.NEAR_EXTREMAL
    assert C.singleton_class(C.code_from_strings(["w000", "0w00", "00w0", "000w"])) is SingletonClass.OTHER


def test_beta_map():
    assert C.beta_map(C.code_from_strings(["w"])).tolist() == [[1, 0, 1]]
    assert C.beta_map(C.code_from_strings(["1W"])).tolist() == [[0, 1, 1, 1, 1, 0]]
    assert C.beta_map(C.code_from_strings(["0w"])).tolist() == [[0, 0, 0, 1, 0, 1]]


def test_beta_weight_relation(rng):
    # every nonzero symbol maps to a weight-2 binary triple
    for _ in range(20):
        c = random_code(rng, rng.randint(1, 5))
        M = C.beta_map(c)
        for g, row in zip(c.generators, M):
            assert int(row.sum()) == 2 * g.weight()


@settings(max_examples=40, deadline=None)
@given(codes(max_n=6))
def test_monomial_invariance(code):
    import random

    r = random.Random(code.basis[0])
    perm, sym = random_monomial(r, code.n)
    img = C.apply_monomial(code, perm, sym)
    assert C.weight_distribution(img) == C.weight_distribution(code)


def test_apply_monomial_matches_oracle_convention():
    code = C.code_from_strings(["w1", "0W"])
    perm, sym = [1, 0], [C.SYMBOL_PERMS[1], C.SYMBOL_PERMS[0]]
    img = C.apply_monomial(code, perm, sym)
    expect = {tuple(sym[j][w[perm[j]]] for j in range(2)) for w in words_of(code)}
    assert words_of(img) == expect


def test_text_format_roundtrip():
    ex = C.code_from_strings(EXAMPLE_ROWS)
    text = C.format_code_text(ex)
    assert text.splitlines()[0] == "n=7 k=7"
    assert C.format_code_text(C.parse_code_text(text)) == text
    for bad in ["", "n=2\n10\n", "n=2 k=2\n10\n", "n=2 k=1\n1x\n", "n=2 k=2\n10\n10\n"]:
        with pytest.raises(ValueError):
            C.parse_code_text(bad)


def test_graph_form_flag_and_membership():
    g = C.code_from_strings(["w1", "0w"])
    assert g.is_graph_form
    assert not C.code_from_strings(["1w", "0w"]).is_graph_form
    assert GF4Vector.parse("wW") in g
    assert GF4Vector.parse("10") not in g
    assert GF4Vector.parse("1") not in g


def test_words_up_to_weight_sorted():
    ex = C.code_from_strings(EXAMPLE_ROWS)
    A, B = C.words_up_to_weight(ex, 5)
    w = np.bitwise_count(A | B)
    assert len(A) == 35 + 42
    assert list(w) == sorted(w)
    assert comb(7, 0) == 1
