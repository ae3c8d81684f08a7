"""
Searching circulant digraph codes
=================================

Circulant digraphs make codes that are always equivalent to their duals.
Their seeds are few enough to search exhaustively for moderate lengths.
"""

import time

from gf4graphs import code as C
from gf4graphs import constructions as X

print("n  max_d  codes  self_dual  seconds")
for n in range(2, 14):
    t0 = time.perf_counter()
    r = X.search_best(n)
    print(f"{n:2d}  {r.max_d:5d}  {r.count:5d}  {r.self_dual_count:9d}  {time.perf_counter() - t0:7.2f}")

# The 21 best codes of length 11 fall into five weight distributions.
r = X.search_best(11)
for wd, count in sorted(X.enumerator_census(c.code for c in r.codes).items(), key=lambda x: x[0].counts):
    print(count, wd.counts)

# A length-24 circulant with distance 9.
c24 = X.circulant_code(X.CirculantSeed.from_string("01101111111111010000110"))
print("n=24 distance:", C.min_distance(c24))
