"""Projective spaces as quotient complexes, and their cohomological index.

Each RP^n fixture is the antipodal quotient of a symmetric sphere
triangulation.  The covering cocycle w marks the edges whose endpoints sit
on different sheets; its cup powers w^p stay nonzero up to p = n, which is
what makes the index of the whole space equal to n + 1.
"""

from krspec.spaces import gen_rp
from krspec.spectrum import index_of
from krspec.symcx import validate
from krspec.z2algebra import betti_numbers, covering_class, cup_power_nonzero

for n in (1, 2, 3):
    c = gen_rp(n)
    f_vector = [c.n_simplices(p) for p in range(n + 1)]
    w = covering_class(c)
    powers = [int(cup_power_nonzero(c, w, p)) for p in range(1, n + 1)]
    print(f"RP^{n}: f-vector {f_vector}, valid={validate(c).ok}")
    print(f"  mod-2 Betti numbers {betti_numbers(c)}")
    print(f"  w^p nonzero for p=1..{n}: {powers}")
    print(f"  cohomological index of the whole space: {index_of(c.full())}")

# A proper subcomplex has smaller index: one edge less than a full loop in RP^1.
c = gen_rp(1)
edges = [s for s in c.simplices if len(s) == 2]
print("RP^1 minus one edge has index", index_of(c.sub(edges[:-1])))
