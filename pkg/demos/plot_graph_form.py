"""
From a generator matrix to a directed graph
===========================================

Any half-rate additive code over GF(4) that is not exceptional is
equivalent to a graph code, generated by ``Gamma + wI`` for a digraph
``Gamma``.  We take a scrambled 7x7 generator, recover its digraph and
check that nothing was lost on the way.
"""

from gf4graphs import code as C
from gf4graphs import graphform as G
from gf4graphs.canon import equivalent

rows = ["W0010ww", "1000111", "00w0WWw", "0011WwW", "1w01WW0", "1111W11", "001w1W1"]
code = C.code_from_strings(rows)
print(C.format_code_text(code))

# The conversion swaps the two bit planes on a few coordinates and
# conjugates others; both are equivalence maps.
res = G.to_graph_form(code)
print("swapped coordinates:", sorted(i + 1 for i in res.swaps))
print("conjugated coordinates:", sorted(i + 1 for i in res.conjugations))
print(res.graph)

# The graph code is equivalent to the input, and its distance follows from
# sums of few rows of Gamma + wI.
gc = G.graph_code(res.graph)
print("equivalent:", equivalent(code, gc))
print("minimum distance:", G.bounded_min_distance(res.graph, res.graph.n))

# Transposing the digraph gives the dual code.
print("dual is transpose:", C.dual(gc) == G.graph_code(G.graph_dual(res.graph)))
