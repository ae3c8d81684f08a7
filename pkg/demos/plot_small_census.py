"""
Counting small codes through digraphs
=====================================

Indecomposable codes correspond to weakly connected digraphs, so a census
of codes up to equivalence can walk one digraph per isomorphism class and
deduplicate the resulting codes by canonical certificate.
"""

from gf4graphs import classify as K

# Up to five vertices the digraphs can be enumerated internally; larger
# orders are read from digraph6 files.
records = {n: K.classify_codes(K.enumerate_connected_digraphs(n)) for n in range(1, 5)}
for flt in ("all", "fsd", "isodual", "selfdual"):
    table = K.census_report([r for recs in records.values() for r in recs], flt)
    print(flt)
    print(table.to_text())

# Decomposable codes are direct sums of indecomposable ones, so the Euler
# transform of the indecomposable counts gives every code.
indec = [len(records[n]) for n in range(1, 5)]
print("indecomposable:", indec)
print("all codes:     ", K.euler_transform(indec))
