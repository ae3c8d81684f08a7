"""
Quadratic residue digraph codes
===============================

For an odd prime ``p`` the quadratic residues mod ``p`` give a circulant
seed.  Bordering that circulant adds one coordinate; when ``p = 1 mod 4``
the digraph is symmetric and the code is self-dual.
"""

from gf4graphs import code as C
from gf4graphs import constructions as X

for p in (3, 5, 7, 11, 13, 17):
    for bordered in (False, True):
        code = X.qr_code(p, bordered=bordered)
        kind = "bordered " if bordered else "circulant"
        print(f"p={p:2d} {kind} n={code.n:2d} d={C.min_distance(code)} self-dual={C.is_self_dual(code)}")
